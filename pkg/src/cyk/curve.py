"""Hyperelliptic curves y^2 = prod_k (z - lambda_k), their periods and Abel-Jacobi map.

Conventions
-----------
Branch points are sorted by (real, imag). The single-valued branch

    Y(z) = prod_k i*sqrt(lambda_k - z)        (principal sqrt)

has its cuts exactly on (l1,l2), (l3,l4), ..., (l_{2g+1}, +inf) when all
branch points are real, so it is the "sheet +1" function. A point of the
curve is ``(x, sheet)`` meaning ``y = sheet * Y(x)`` (upper boundary value on
a cut).

Homology is carried by the elementary loops ``l_k`` (k = 1..2g) around the
real segments [lambda_k, lambda_{k+1}], each integrated as
``2 * int omega / Y_+``. Consecutive loops meet once, ``l_k . l_{k+1} = +1``,
and non-adjacent loops are disjoint; every cycle is an integer vector over
this basis, so intersection numbers are integer linear algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateBranchPoint,
    EvenCount,
    PathThroughBranchPoint,
    QuadratureFailure,
    SingularABlock,
    UnsupportedBranchPoints,
)

MERGE_TOL = 1e-12
_MIN_NODES = 16
_MAX_NODES = 4096


@dataclass(frozen=True)
class HyperellipticCurve:
    branch_points: tuple[complex, ...]

    @property
    def genus(self) -> int:
        return (len(self.branch_points) - 1) // 2

    @property
    def is_real(self) -> bool:
        return all(p.imag == 0 for p in self.branch_points)

    @cached_property
    def _lam(self) -> np.ndarray:
        return np.array(self.branch_points, dtype=complex)

    @property
    def min_gap(self) -> float:
        lam = self._lam
        d = np.abs(lam[:, None] - lam[None, :])
        return float(d[~np.eye(len(lam), dtype=bool)].min())

    def F(self, z):
        z = np.asarray(z, dtype=complex)
        return np.prod(z[..., None] - self._lam, axis=-1)

    def Y(self, z):
        """Sheet +1 value of y at ``z``; real ``z`` on a cut takes the value from above."""
        z = np.asarray(z, dtype=complex)
        # +0j imaginary part on the real axis: nudge to the upper side
        w = self._lam - z[..., None]
        on_axis = (w.imag == 0) & (w.real < 0)
        roots = np.where(on_axis, -1j * np.sqrt(np.abs(w)), np.sqrt(w))
        return np.prod(1j * roots, axis=-1)


def new_curve(branch_points: Iterable[complex], merge_tol: float = MERGE_TOL) -> HyperellipticCurve:
    pts = [complex(p) for p in branch_points]
    n = len(pts)
    if n < 3 or n % 2 == 0:
        raise EvenCount(f"need an odd number >= 3 of finite branch points, got {n}")
    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(pts[i]), abs(pts[j]))
            if abs(pts[i] - pts[j]) <= merge_tol * scale:
                raise DuplicateBranchPoint(f"branch points {pts[i]} and {pts[j]} coincide")
    pts.sort(key=lambda p: (p.real, p.imag))
    curve = HyperellipticCurve(tuple(pts))
    if curve.genus >= 2 and not curve.is_real:
        raise UnsupportedBranchPoints("complex branch points are only supported for genus 1")
    return curve


@dataclass(frozen=True)
class Differential:
    """The holomorphic differential z**power dz / y."""

    power: int
    curve: HyperellipticCurve


def holomorphic_basis(curve: HyperellipticCurve) -> list[Differential]:
    return [Differential(k, curve) for k in range(curve.genus)]


# --- homology -------------------------------------------------------------


@dataclass(frozen=True)
class CycleBasis:
    """A- and B-cycles as integer vectors over the elementary loops l_1..l_2g."""

    genus: int
    a_cycles: tuple[tuple[int, ...], ...]
    b_cycles: tuple[tuple[int, ...], ...]

    def elementary_form(self) -> np.ndarray:
        """Intersection matrix of the elementary loops (adjacent loops meet once)."""
        n = 2 * self.genus
        E = np.zeros((n, n), dtype=np.int64)
        for k in range(n - 1):
            E[k, k + 1] = 1
            E[k + 1, k] = -1
        return E

    def coefficient_matrix(self) -> np.ndarray:
        return np.array(self.a_cycles + self.b_cycles, dtype=np.int64)

    def pairing_matrix(self) -> np.ndarray:
        C = self.coefficient_matrix()
        return C @ self.elementary_form() @ C.T

    def crossings(self) -> dict[str, list[list[tuple[int, int, int]]]]:
        """Each cycle as a list of (branch index, branch index, multiplicity) segments."""

        def segs(vec):
            return [(k + 1, k + 2, int(c)) for k, c in enumerate(vec) if c]

        return {"a": [segs(v) for v in self.a_cycles], "b": [segs(v) for v in self.b_cycles]}


def standard_symplectic(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


def build_cycles(curve: HyperellipticCurve) -> CycleBasis:
    """A_i encircles the i-th finite cut; B_i runs from cut i to the cut through infinity."""
    g = curve.genus
    n = 2 * g
    a_cycles, b_cycles = [], []
    for i in range(1, g + 1):
        a = [0] * n
        a[2 * i - 2] = 1
        # B_i = l_{2i} + l_{2i+2} + ... + l_{2g}: the gap loops from cut i out to the last cut
        b = [0] * n
        for k in range(2 * i, n + 1, 2):
            b[k - 1] = 1
        a_cycles.append(tuple(a))
        b_cycles.append(tuple(b))
    return CycleBasis(g, tuple(a_cycles), tuple(b_cycles))


# --- quadrature -------------------------------------------------------------


def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _adaptive(fn, lo: float, hi: float, tol: float, what: str):
    """Integrate a smooth vector-valued fn on [lo, hi], doubling Gauss-Legendre nodes.

    Returns (value, error_estimate) where the estimate is |I_2n - I_n|.
    """
    def rule(n):
        x, w = _gauss(n)
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        return 0.5 * (hi - lo) * (fn(t) * w[:, None]).sum(axis=0)

    n = _MIN_NODES
    prev = rule(n)
    while n < _MAX_NODES:
        n *= 2
        cur = rule(n)
        err = float(np.max(np.abs(cur - prev)))
        if err <= tol:
            return cur, err
        prev = cur
    raise QuadratureFailure(f"{what}: error estimate {err:.3e} exceeds tol {tol:.1e}")


def _real_segment(curve: HyperellipticCurve, k: int, tol: float):
    """int_{l_k}^{l_{k+1}} z^j dz / Y_+ for j < g, real branch points (0-based k)."""
    lam = np.array([p.real for p in curve.branch_points])
    a, b = lam[k], lam[k + 1]
    below, above = lam[:k], lam[k + 2:]
    powers = np.arange(curve.genus)

    def fn(theta):
        x = a + 0.5 * (b - a) * (1.0 - np.cos(theta))
        r = np.prod(np.sqrt(x[:, None] - below), axis=1) * np.prod(
            1j * np.sqrt(above - x[:, None]), axis=1)
        # Y_+ = sqrt(x-a) * i sqrt(b-x) * r and dx = sqrt((x-a)(b-x)) dtheta
        return x[:, None] ** powers / (1j * r)[:, None]

    return _adaptive(fn, 0.0, math.pi, tol, f"segment {k + 1}")


def _complex_segment(curve: HyperellipticCurve, k: int, tol: float):
    """Same integral along a straight complex segment, y continued along the path."""
    lam = curve._lam
    a, b = lam[k], lam[k + 1]
    others = np.delete(lam, [k, k + 1])
    alphas = [np.angle((a - m) / abs(a - m) + (b - m) / abs(b - m)) for m in others]
    powers = np.arange(curve.genus)

    def fn(theta):
        z = a + 0.5 * (b - a) * (1.0 - np.cos(theta))
        sg = np.ones_like(z)
        for m, al in zip(others, alphas):
            sg = sg * np.sqrt((z - m) * np.exp(-1j * al)) * np.exp(0.5j * al)
        # sqrt((z-a)(z-b)) = i (b-a)/2 sin(theta) cancels the Jacobian
        return z[:, None] ** powers / (1j * sg)[:, None]

    return _adaptive(fn, 0.0, math.pi, tol, f"segment {k + 1}")


def elementary_loops(curve: HyperellipticCurve, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Integrals of each omega_j over l_1..l_2g; returns (g x 2g values, error estimates)."""
    g = curve.genus
    seg = _real_segment if curve.is_real else _complex_segment
    vals = np.zeros((g, 2 * g), dtype=complex)
    errs = np.zeros((g, 2 * g))
    for k in range(2 * g):
        v, e = seg(curve, k, tol / 2)
        vals[:, k] = 2 * v
        errs[:, k] = 2 * e
    return vals, errs


# --- periods ----------------------------------------------------------------


@dataclass(frozen=True)
class PeriodMatrix:
    raw: np.ndarray
    Z: np.ndarray
    residuals: dict
    a_inverse: np.ndarray = field(repr=False)
    loops: np.ndarray = field(repr=False)
    error_estimate: float = 0.0

    @property
    def genus(self) -> int:
        return self.Z.shape[0]


def normalize_periods(raw: np.ndarray, order: str = "AB") -> tuple[np.ndarray, dict, np.ndarray]:
    """Z = A^{-1} B from raw (g x 2g) periods; returns (Z, residuals, A^{-1})."""
    raw = np.asarray(raw, dtype=complex)
    g = raw.shape[0]
    if raw.shape != (g, 2 * g):
        raise ValueError(f"raw periods must be g x 2g, got {raw.shape}")
    if order == "AB":
        A, B = raw[:, :g], raw[:, g:]
    elif order == "BA":
        B, A = raw[:, :g], raw[:, g:]
    else:
        raise ValueError("order must be 'AB' or 'BA'")
    if np.linalg.cond(A) > 1e12:
        raise SingularABlock("A-period block is singular")
    a_inv = np.linalg.inv(A)
    Z = a_inv @ B
    return Z, period_residuals(Z), a_inv


def period_residuals(Z: np.ndarray) -> dict:
    sym = float(np.max(np.abs(Z - Z.T))) if Z.size else 0.0
    im = 0.5 * (Z.imag + Z.imag.T)
    return {"symmetry": sym, "min_eig_im": float(np.linalg.eigvalsh(im).min())}


def period_matrix(curve: HyperellipticCurve, cycles: CycleBasis | None = None,
                  tol: float = 1e-10) -> PeriodMatrix:
    if tol < 100 * np.finfo(float).eps:
        raise ValueError("tol below 100 * machine epsilon")
    if cycles is None:
        cycles = build_cycles(curve)
    loops, errs = elementary_loops(curve, tol)
    C = cycles.coefficient_matrix().astype(float)
    raw = loops @ C.T
    if not curve.is_real:
        # genus 1 only: orient B so that l_A . l_B = +1, i.e. Im(B/A) > 0
        if (raw[0, 1] / raw[0, 0]).imag < 0:
            cycles = CycleBasis(1, cycles.a_cycles, tuple(tuple(-c for c in b) for b in cycles.b_cycles))
            raw = loops @ cycles.coefficient_matrix().astype(float).T
    Z, res, a_inv = normalize_periods(raw)
    err = float(np.max(np.abs(errs) @ np.abs(C.T)))
    return PeriodMatrix(raw=raw, Z=Z, residuals=res, a_inverse=a_inv, loops=loops, error_estimate=err)


# --- Jacobian ---------------------------------------------------------------


def lattice_coords(v: np.ndarray, Z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real (a, b) with v = a + Z b."""
    v = np.asarray(v, dtype=complex)
    b = np.linalg.solve(Z.imag, v.imag)
    a = v.real - Z.real @ b
    return a, b


def lattice_distance(v: np.ndarray, Z: np.ndarray) -> float:
    """Euclidean distance from v to the nearest point of Z^g + Z Z^g (centered rounding)."""
    a, b = lattice_coords(v, Z)
    a = a - np.round(a)
    b = b - np.round(b)
    return float(np.linalg.norm(a + Z @ b))


@dataclass(frozen=True)
class JacobianPoint:
    vector: np.ndarray
    Z: np.ndarray = field(repr=False)

    def reduced(self) -> "JacobianPoint":
        a, b = lattice_coords(self.vector, self.Z)
        a, b = np.mod(a, 1.0), np.mod(b, 1.0)
        # values within 1e-12 of 1 wrap to 0
        a[np.isclose(a, 1.0, atol=1e-12)] = 0.0
        b[np.isclose(b, 1.0, atol=1e-12)] = 0.0
        return JacobianPoint(a + self.Z @ b, self.Z)

    def lattice_coords(self) -> tuple[np.ndarray, np.ndarray]:
        return lattice_coords(self.vector, self.Z)

    def distance_to_zero(self) -> float:
        return lattice_distance(self.vector, self.Z)

    def __add__(self, other: "JacobianPoint") -> "JacobianPoint":
        return JacobianPoint(self.vector + other.vector, self.Z)

    def __sub__(self, other: "JacobianPoint") -> "JacobianPoint":
        return JacobianPoint(self.vector - other.vector, self.Z)

    def __rmul__(self, k: int) -> "JacobianPoint":
        return JacobianPoint(k * self.vector, self.Z)


INFINITY = complex("inf")


def _infinite_tail(curve: HyperellipticCurve, tol: float) -> np.ndarray:
    """int_{l_{2g+1}}^{inf} z^j dz / Y_+ along the last cut (all factors real there)."""
    lam = np.array([p.real for p in curve.branch_points])
    top, rest = lam[-1], lam[:-1]
    powers = np.arange(curve.genus)

    def fn(phi):
        t = np.tan(phi)
        x = top + t * t
        # dx / sqrt(x - top) = 2 sec^2(phi) dphi
        sec2 = 1.0 + t * t
        return 2 * sec2[:, None] * x[:, None] ** powers / np.prod(
            np.sqrt(x[:, None] - rest), axis=1)[:, None]

    val, _ = _adaptive(fn, 0.0, 0.5 * math.pi, tol, "tail to infinity")
    return val.astype(complex)


def _branch_raw(curve: HyperellipticCurve, loops: np.ndarray, tail: np.ndarray, k: int) -> np.ndarray:
    """Raw integral from infinity to branch point k (0-based)."""
    g = curve.genus
    if k == 2 * g:
        return -tail
    # int_{l_k}^{l_{2g+1}} omega / Y_+ = half the sum of the loops in between
    return -tail - 0.5 * loops[:, k:].sum(axis=1)


def _segment_from_branch(curve: HyperellipticCurve, k: int, x: complex, tol: float):
    """Integral from branch point k to x on the lift that starts continuously there.

    Returns (raw integral, y value reached at x).
    """
    lam = curve._lam
    base = lam[k]
    others = np.delete(lam, k)
    alphas = [np.angle((base - m) / abs(base - m) + (x - m) / abs(x - m)) for m in others]
    root = np.sqrt(x - base)
    powers = np.arange(curve.genus)

    def sqrt_g(z):
        s = np.ones_like(z)
        for m, al in zip(others, alphas):
            s = s * np.sqrt((z - m) * np.exp(-1j * al)) * np.exp(0.5j * al)
        return s

    def fn(u):
        z = base + (x - base) * u * u
        return 2 * root * z[:, None] ** powers / sqrt_g(z)[:, None]

    val, _ = _adaptive(fn, 0.0, 1.0, tol, "Abel-Jacobi path")
    # y = sqrt(z - base) * sqrt(G(z)) on this lift; the i**2g factor of Y is absorbed by sign matching
    y_end = root * sqrt_g(np.array([x], dtype=complex))[0]
    return val, y_end


def _point_raw(curve: HyperellipticCurve, periods: PeriodMatrix, tail: np.ndarray,
               x: complex, sheet: int, tol: float) -> np.ndarray:
    lam = curve._lam
    if np.isinf(x):
        return np.zeros(curve.genus, dtype=complex)
    d = np.abs(lam - x)
    scale = max(1.0, float(np.abs(lam).max()))
    hit = np.flatnonzero(d <= MERGE_TOL * scale)
    if hit.size:
        return _branch_raw(curve, periods.loops, tail, int(hit[0]))
    clearance = 1e-3 * curve.min_gap
    for k in np.argsort(d, kind="stable"):
        k = int(k)
        base = lam[k]
        seg = x - base
        ok = True
        for m, p in enumerate(lam):
            if m == k:
                continue
            t = np.clip(((p - base) * np.conj(seg)).real / abs(seg) ** 2, 0.0, 1.0)
            if abs(base + t * seg - p) < clearance:
                ok = False
                break
        if not ok:
            continue
        val, y_end = _segment_from_branch(curve, k, x, tol)
        target = sheet * complex(curve.Y(np.array([x]))[0])
        sign = 1.0 if abs(y_end - target) <= abs(y_end + target) else -1.0
        return _branch_raw(curve, periods.loops, tail, k) + sign * val
    raise PathThroughBranchPoint(f"no straight path to {x} clears the branch points")


def point_from_y(curve: HyperellipticCurve, x: complex, y: complex, tol: float = 1e-8) -> tuple[complex, int]:
    """Validate y^2 = F(x) and return the (x, sheet) encoding."""
    f = complex(curve.F(np.array([x]))[0])
    if abs(y * y - f) > tol * max(1.0, abs(f)):
        raise ValueError(f"({x}, {y}) is not on the curve: |y^2 - F| = {abs(y * y - f):.3e}")
    Y = complex(curve.Y(np.array([x]))[0])
    return x, (1 if abs(y - Y) <= abs(y + Y) else -1)


def abel_jacobi(curve: HyperellipticCurve, periods: PeriodMatrix,
                points: Sequence[tuple[complex, int]], base: tuple[complex, int] | None = None,
                tol: float = 1e-10) -> JacobianPoint:
    """Sum of integrals from ``base`` (default infinity) to each point, normalized coordinates."""
    g = curve.genus
    if not points:
        return JacobianPoint(np.zeros(g, dtype=complex), periods.Z)
    if not curve.is_real:
        raise UnsupportedBranchPoints("Abel-Jacobi paths need real branch points")
    tail = _infinite_tail(curve, tol)
    total = np.zeros(g, dtype=complex)
    base_raw = np.zeros(g, dtype=complex)
    if base is not None:
        base_raw = _point_raw(curve, periods, tail, complex(base[0]), int(base[1]), tol)
    for x, sheet in points:
        total += _point_raw(curve, periods, tail, complex(x), int(sheet), tol) - base_raw
    return JacobianPoint(periods.a_inverse @ total, periods.Z)
