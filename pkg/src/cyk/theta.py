"""Riemann theta functions with half-integer characteristics.

    theta[d, e](z, Z) = sum_m exp(pi i (m + d/2)^T Z (m + d/2) + 2 pi i (m + d/2)^T (z + e/2))

The lattice sum is truncated to an ellipsoid around the dominant term whose
radius comes from the Gaussian tail bound of Deconinck, Heil, Bobenko,
van Hoeij and Schmies (Math. Comp. 2004). Truncation error is relative to
the size of the dominant term, exp(pi y^T Y^{-1} y) with y = Im z, Y = Im Z.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaincc

from .curve import HyperellipticCurve, PeriodMatrix, abel_jacobi
from .errors import NotPositiveDefinite


@dataclass(frozen=True)
class ThetaCharacteristic:
    delta: tuple[int, ...]
    epsilon: tuple[int, ...]

    def __post_init__(self):
        if len(self.delta) != len(self.epsilon):
            raise ValueError("delta and epsilon must have equal length")
        if any(x not in (0, 1) for x in self.delta + self.epsilon):
            raise ValueError("characteristic entries must be 0 or 1")

    @classmethod
    def zero(cls, g: int) -> "ThetaCharacteristic":
        return cls((0,) * g, (0,) * g)

    @classmethod
    def parse(cls, text: str) -> "ThetaCharacteristic":
        """``'01,10'`` -> delta=(0,1), epsilon=(1,0)."""
        d, e = text.split(",")
        return cls(tuple(int(c) for c in d.strip()), tuple(int(c) for c in e.strip()))

    @property
    def parity(self) -> int:
        return sum(a * b for a, b in zip(self.delta, self.epsilon)) % 2

    def __str__(self) -> str:
        return "".join(map(str, self.delta)) + "," + "".join(map(str, self.epsilon))


def all_characteristics(g: int) -> list[ThetaCharacteristic]:
    bits = list(itertools.product((0, 1), repeat=g))
    return [ThetaCharacteristic(d, e) for d in bits for e in bits]


@dataclass(frozen=True)
class ThetaResult:
    value: complex
    radius: float
    terms: int


def _check_siegel(Z: np.ndarray) -> np.ndarray:
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if Z.shape[0] != Z.shape[1]:
        raise NotPositiveDefinite("Z must be square")
    Y = 0.5 * (Z.imag + Z.imag.T)
    if np.linalg.eigvalsh(Y).min() <= 0:
        raise NotPositiveDefinite("Im Z is not positive definite")
    return Y


def _shortest_length(T: np.ndarray, G_inv: np.ndarray) -> float:
    """Length of the shortest nonzero vector of the lattice T Z^g."""
    g = T.shape[0]
    best = float(np.min(np.linalg.norm(T, axis=0)))
    half = np.floor(best * np.sqrt(np.diag(G_inv))).astype(int)
    for v in itertools.product(*(range(-h, h + 1) for h in half)):
        if any(v):
            best = min(best, float(np.linalg.norm(T @ np.array(v))))
    return best


def truncation_radius(Y: np.ndarray, tol: float) -> float:
    g = Y.shape[0]
    G = math.pi * Y
    T = np.linalg.cholesky(G).T
    rho = _shortest_length(T, np.linalg.inv(G))
    R = max(0.5 * (math.sqrt(g) + rho), 0.5 * rho + 0.5)
    while True:
        bound = 0.5 * g * (2.0 / rho) ** g * math.gamma(0.5 * g) * gammaincc(0.5 * g, (R - 0.5 * rho) ** 2)
        if bound <= tol:
            return R
        R += 0.05


def theta_with_info(char: ThetaCharacteristic | None, z: Sequence[complex], Z: np.ndarray,
                    tol: float = 1e-12) -> ThetaResult:
    Y = _check_siegel(Z)
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    g = Z.shape[0]
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if char is None:
        char = ThetaCharacteristic.zero(g)
    d = np.array(char.delta, dtype=float) / 2
    e = np.array(char.epsilon, dtype=float) / 2
    R = truncation_radius(Y, tol)
    G_inv = np.linalg.inv(math.pi * Y)
    center = -np.linalg.solve(Y, z.imag) - d
    half = R * np.sqrt(np.diag(G_inv))
    ranges = [range(int(math.ceil(c - h)), int(math.floor(c + h)) + 1) for c, h in zip(center, half)]
    m = np.array(list(itertools.product(*ranges)), dtype=float).reshape(-1, g)
    off = m - center
    inside = np.einsum("ni,ij,nj->n", off, math.pi * Y, off) <= R * R
    n = m[inside] + d
    expo = 1j * math.pi * np.einsum("ni,ij,nj->n", n, Z, n) + 2j * math.pi * n @ (z + e)
    return ThetaResult(complex(np.exp(expo).sum()), float(R), int(n.shape[0]))


def theta(char: ThetaCharacteristic | None, z: Sequence[complex], Z: np.ndarray, tol: float = 1e-12) -> complex:
    return theta_with_info(char, z, Z, tol).value


# --- theta divisors of a hyperelliptic Jacobian --------------------------------


def divisor_translates(curve: HyperellipticCurve, periods: PeriodMatrix, tol: float = 1e-10) -> list[np.ndarray]:
    """t_i = AJ(lambda_i) for i = 1..2g+1, then t_{2g+2} = 0 for the point at infinity."""
    out = [abel_jacobi(curve, periods, [(lam, 1)], tol=tol).vector for lam in curve.branch_points]
    out.append(np.zeros(curve.genus, dtype=complex))
    return out


def half_periods(Z: np.ndarray) -> list[tuple[tuple[int, ...], tuple[int, ...], np.ndarray]]:
    g = Z.shape[0]
    out = []
    for a in itertools.product((0, 1), repeat=g):
        for b in itertools.product((0, 1), repeat=g):
            out.append((a, b, 0.5 * (np.array(a) + Z @ np.array(b))))
    return out


def _local_scale(z: np.ndarray, Z: np.ndarray, radius: float = 0.1, tol: float = 1e-12) -> float:
    g = len(z)
    vals = []
    for k in range(g):
        for step in (radius, -radius, 1j * radius, -1j * radius):
            dz = np.zeros(g, dtype=complex)
            dz[k] = step
            vals.append(abs(theta(None, z + dz, Z, tol)))
    return max(vals)


def riemann_constant(curve: HyperellipticCurve, periods: PeriodMatrix, samples: int = 3,
                     tol: float = 1e-10) -> np.ndarray:
    """The half-period K with theta(AJ(D) + K) = 0 for every effective D of degree g-1.

    Found by testing all 2^{2g} half-periods against a few sample divisors.
    """
    g = curve.genus
    Z = periods.Z
    rng = np.random.default_rng(20080626)
    lam = np.array([p.real for p in curve.branch_points])
    span = lam.max() - lam.min()
    divisors = []
    for _ in range(samples):
        xs = lam.min() + span * rng.uniform(0, 1, g - 1) + 1j * span * rng.uniform(0.2, 0.8, g - 1)
        sheets = rng.choice([-1, 1], g - 1)
        divisors.append(abel_jacobi(curve, periods, list(zip(xs, sheets)), tol=tol).vector)
    best, best_score = None, math.inf
    for _, _, eta in half_periods(Z):
        score = 0.0
        for w in divisors:
            p = w + eta
            score = max(score, abs(theta(None, p, Z)) / _local_scale(p, Z))
        if score < best_score:
            best, best_score = eta, score
    return best


def is_on_divisor(z: Sequence[complex], i: int, curve: HyperellipticCurve, periods: PeriodMatrix,
                  tol: float = 1e-8, translates: list[np.ndarray] | None = None) -> tuple[bool, complex]:
    """Whether z lies on theta_i = zero set of theta(. + t_i); i is 1-based in 1..2g+2."""
    if translates is None:
        translates = divisor_translates(curve, periods)
    w = np.asarray(z, dtype=complex) + translates[i - 1]
    value = theta(None, w, periods.Z)
    scale = _local_scale(w, periods.Z)
    return abs(value) <= tol * scale, value
