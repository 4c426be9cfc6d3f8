"""Beltrami differentials on the flat torus model and the Weil-Petersson geometry of D_{g,g}.

Fields are phi = sum a^mu_alpha(z) dzbar^alpha (x) d/dz^mu with holomorphic
polynomial coefficients over Q(i). For a constant field given by a matrix tau,
omega_tau = wedge_i (dz^i + sum_j tau^i_j dzbar^j), and its L2 norm normalised
by ||omega_0||^2 = 1 is det(I - tau tau^*).

Index conventions: all indices are 0-based in code. A multi-index is a strictly
increasing tuple. Complex coordinates tau^i_j are flattened row-major, so
coordinate a = i*g + j.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .domain import contains, domain_margin
from .errors import DimensionMismatch, NonConstantBasis, NotInDomain, StepTooLarge
from .exact import QI, det as exact_det

# --- exact polynomials over Q(i) -----------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Polynomial in z^1..z^g; ``terms`` maps exponent tuples to nonzero QI coefficients."""

    g: int
    terms: tuple[tuple[tuple[int, ...], QI], ...] = ()

    @classmethod
    def from_dict(cls, g: int, d: Mapping[tuple[int, ...], object]) -> "Poly":
        items = []
        for e, c in d.items():
            if len(e) != g:
                raise DimensionMismatch(f"exponent {e} has wrong length for g={g}")
            c = QI.of(c)
            if c:
                items.append((tuple(e), c))
        return cls(g, tuple(sorted(items)))

    @classmethod
    def constant(cls, g: int, c) -> "Poly":
        return cls.from_dict(g, {(0,) * g: c})

    @classmethod
    def variable(cls, g: int, k: int) -> "Poly":
        e = [0] * g
        e[k] = 1
        return cls.from_dict(g, {tuple(e): 1})

    def as_dict(self) -> dict[tuple[int, ...], QI]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly") -> "Poly":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, QI()) + c
        return Poly.from_dict(self.g, d)

    def __neg__(self) -> "Poly":
        return Poly(self.g, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = QI.of(other)
            return Poly.from_dict(self.g, {e: a * c for e, a in self.terms})
        d: dict[tuple[int, ...], QI] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, QI()) + c1 * c2
        return Poly.from_dict(self.g, d)

    __rmul__ = __mul__

    def diff(self, k: int) -> "Poly":
        d = {}
        for e, c in self.terms:
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                d[tuple(e2)] = c * e[k]
        return Poly.from_dict(self.g, d)

    def __call__(self, z: Sequence[complex]) -> complex:
        return sum(complex(c) * math.prod(zk**p for zk, p in zip(z, e)) for e, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"z{k + 1}" + (f"^{p}" if p > 1 else "") for k, p in enumerate(e) if p)
            parts.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class BeltramiField:
    """phi = sum over (mu, alpha) of coeffs[(mu, alpha)] dzbar^alpha (x) d/dz^mu."""

    g: int
    coeffs: tuple[tuple[tuple[int, int], Poly], ...] = ()

    @classmethod
    def from_dict(cls, g: int, d: Mapping[tuple[int, int], object]) -> "BeltramiField":
        items = []
        for (mu, alpha), c in d.items():
            if not (0 <= mu < g and 0 <= alpha < g):
                raise DimensionMismatch(f"index ({mu}, {alpha}) out of range for g={g}")
            p = c if isinstance(c, Poly) else Poly.constant(g, c)
            if p.g != g:
                raise DimensionMismatch("coefficient polynomial has the wrong number of variables")
            if not p.is_zero():
                items.append(((mu, alpha), p))
        return cls(g, tuple(sorted(items, key=lambda t: t[0])))

    @classmethod
    def from_matrix(cls, tau) -> "BeltramiField":
        """Constant field sum tau^i_j dzbar^i (x) d/dz^j, the parametrisation used for D_{g,g}."""
        rows = [list(r) for r in tau]
        g = len(rows)
        return cls.from_dict(g, {(j, i): QI.of(rows[i][j]) for i in range(g) for j in range(g)})

    @classmethod
    def elementary(cls, g: int, i: int, j: int) -> "BeltramiField":
        """dzbar^i (x) d/dz^j."""
        return cls.from_dict(g, {(j, i): 1})

    def coefficient(self, mu: int, alpha: int) -> Poly:
        return dict(self.coeffs).get((mu, alpha), Poly(self.g))

    @property
    def degree(self) -> int:
        return max((p.degree for _, p in self.coeffs), default=-1)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __add__(self, other: "BeltramiField") -> "BeltramiField":
        _match(self.g, other.g)
        d = dict(self.coeffs)
        for k, p in other.coeffs:
            d[k] = d.get(k, Poly(self.g)) + p
        return BeltramiField.from_dict(self.g, d)

    def scale(self, c) -> "BeltramiField":
        return BeltramiField.from_dict(self.g, {k: p * c for k, p in self.coeffs})


@dataclass(frozen=True)
class VectorValuedForm:
    """A (0,q) form with values in T^{1,0}; keys are (increasing barred multi-index, nu)."""

    g: int
    q: int
    components: tuple[tuple[tuple[tuple[int, ...], int], Poly], ...] = ()

    def component(self, alphas: tuple[int, ...], nu: int) -> Poly:
        return dict(self.components).get((tuple(alphas), nu), Poly(self.g))

    def is_zero(self) -> bool:
        return not self.components

    def max_abs(self) -> Fraction:
        """Largest |coefficient|^2 over all components, exact."""
        return max((c.norm2() for _, p in self.components for _, c in p.terms), default=Fraction(0))


def _match(g1: int, g2: int) -> None:
    if g1 != g2:
        raise DimensionMismatch(f"fields live in different dimensions ({g1} vs {g2})")


def bracket(phi1: BeltramiField, phi2: BeltramiField) -> VectorValuedForm:
    """[phi1, phi2]^nu_{alpha beta} = T(alpha, beta) - T(beta, alpha), alpha < beta, with

    T(alpha, beta) = sum_mu (phi1^mu_alpha d_mu phi2^nu_beta - phi2^mu_beta d_mu phi1^nu_alpha).

    This is symmetric in (phi1, phi2), as a bracket of two odd elements should be.
    """
    _match(phi1.g, phi2.g)
    g = phi1.g
    c1 = {k: p for k, p in phi1.coeffs}
    c2 = {k: p for k, p in phi2.coeffs}
    zero = Poly(g)
    d1 = {(k, mu): p.diff(mu) for k, p in c1.items() for mu in range(g)}
    d2 = {(k, mu): p.diff(mu) for k, p in c2.items() for mu in range(g)}

    def T(alpha: int, beta: int, nu: int) -> Poly:
        acc = zero
        for mu in range(g):
            a = c1.get((mu, alpha))
            b = d2.get(((nu, beta), mu))
            if a is not None and b is not None:
                acc = acc + a * b
            a = c2.get((mu, beta))
            b = d1.get(((nu, alpha), mu))
            if a is not None and b is not None:
                acc = acc - a * b
        return acc

    comps = []
    for alpha, beta in itertools.combinations(range(g), 2):
        for nu in range(g):
            p = T(alpha, beta, nu) - T(beta, alpha, nu)
            if not p.is_zero():
                comps.append((((alpha, beta), nu), p))
    return VectorValuedForm(g, 2, tuple(comps))


@dataclass(frozen=True)
class KuranishiCertificate:
    order: int
    residual: Fraction
    exact: bool = True


def kuranishi_series(basis: Sequence[BeltramiField], tau: Sequence[object],
                     order: int = 1) -> tuple[BeltramiField, KuranishiCertificate]:
    """phi(tau) = sum tau_k basis_k and the exact residual of dbar phi - 1/2 [phi, phi].

    Coefficients are holomorphic, so dbar phi = 0 and the residual is the
    largest |coefficient|^2 of 1/2 [phi, phi]. Higher-order terms vanish because
    every bracket of constant fields does.
    """
    if len(basis) != len(tau):
        raise DimensionMismatch("basis and tau have different lengths")
    if not basis:
        raise DimensionMismatch("empty basis")
    g = basis[0].g
    for b in basis:
        _match(g, b.g)
        if not b.is_constant():
            raise NonConstantBasis("only constant Beltrami bases are supported")
    phi = BeltramiField(g)
    for b, t in zip(basis, tau):
        phi = phi + b.scale(QI.of(t))
    residual = bracket(phi, phi).max_abs() / 4
    return phi, KuranishiCertificate(order, residual)


def standard_basis(g: int) -> list[BeltramiField]:
    """dzbar^i (x) d/dz^j, ordered by (i, j)."""
    return [BeltramiField.elementary(g, i, j) for i in range(g) for j in range(g)]


# --- omega_tau -----------------------------------------------------------------


@dataclass(frozen=True)
class FormClass:
    """sum coeffs[(I, J)] dz^I ^ dzbar^J with |I| + |J| = g."""

    g: int
    coeffs: dict = field(hash=False)

    def component(self, I: tuple[int, ...], J: tuple[int, ...]):
        return self.coeffs.get((tuple(I), tuple(J)), 0)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(I), len(J)) for I, J in self.coeffs}


def _is_exact(entries: Iterable[object]) -> bool:
    return all(isinstance(x, (int, Fraction, QI)) for x in entries)


def _cross_sign(I: tuple[int, ...], rest: tuple[int, ...]) -> int:
    """Sign of moving dz^i (i in I) left past the dzbar factors standing at rows r < i."""
    return -1 if sum(1 for i in I for r in rest if r < i) % 2 else 1


def omega_tau(tau) -> FormClass:
    """Expand wedge_i (dz^i + sum_j tau^i_j dzbar^j).

    The dz^I ^ dzbar^J coefficient is sign * det tau[I^c, J]. Entries given as
    int, Fraction or QI are expanded exactly, anything else in complex floats.
    """
    rows = [list(r) for r in tau]
    g = len(rows)
    if any(len(r) != g for r in rows):
        raise DimensionMismatch("tau must be square")
    exact = _is_exact(x for r in rows for x in r)
    T = None if exact else np.array(rows, dtype=complex)
    coeffs = {}
    for k in range(g + 1):
        for I in itertools.combinations(range(g), g - k):
            rest = tuple(i for i in range(g) if i not in I)
            s = _cross_sign(I, rest)
            for J in itertools.combinations(range(g), k):
                if k == 0:
                    minor = QI.of(1) if exact else 1.0 + 0j
                elif exact:
                    minor = exact_det([[rows[r][j] for j in J] for r in rest])
                else:
                    minor = complex(np.linalg.det(T[np.ix_(rest, J)]))
                coeffs[(I, J)] = minor * s
    return FormClass(g, coeffs)


def hodge_components(omega: FormClass) -> list[FormClass]:
    """Pieces of type (g-k, k), k = 0..g."""
    out = []
    for k in range(omega.g + 1):
        out.append(FormClass(omega.g, {key: c for key, c in omega.coeffs.items() if len(key[1]) == k}))
    return out


def reassemble(pieces: Sequence[FormClass]) -> FormClass:
    coeffs = {}
    for p in pieces:
        coeffs.update(p.coeffs)
    return FormClass(pieces[0].g, coeffs)


# --- the WP potential ----------------------------------------------------------


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def _pairing_signs(g: int) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """Sign of dz^I ^ dzbar^J ^ dzbar^{J^c} ^ dz^{I^c} relative to dz^{1..g} ^ dzbar^{1..g}."""
    out = {}
    full = set(range(g))
    for k in range(g + 1):
        for I in itertools.combinations(range(g), g - k):
            Ic = tuple(sorted(full - set(I)))
            for J in itertools.combinations(range(g), k):
                Jc = tuple(sorted(full - set(J)))
                seq = list(I) + [g + j for j in J] + [g + j for j in Jc] + list(Ic)
                out[(I, J)] = _perm_sign(seq)
    return out


def wp_potential_pairing(tau) -> complex:
    """||omega_tau||^2 / ||omega_0||^2 as the pairing sum over (g-k, k) components.

    The only surviving products in omega_tau ^ conj(omega_tau) pair dz^I ^ dzbar^J
    with conj(dz^{J^c} ^ dzbar^{I^c}); the normalising constant of the L2 norm
    cancels against ||omega_0||^2.
    """
    om = omega_tau(tau)
    g = om.g
    full = set(range(g))
    total = 0j
    for (I, J), s in _pairing_signs(g).items():
        Jc = tuple(sorted(full - set(J)))
        Ic = tuple(sorted(full - set(I)))
        a = complex(om.component(I, J))
        b = complex(om.component(Jc, Ic))
        total += s * a * b.conjugate()
    return total


def wp_potential_wedge_closed(tau) -> complex:
    """Closed form of the pairing sum: det [[I, tau], [conj tau, I]] = det(I - tau conj(tau)).

    This agrees with det(I - tau tau^*) when tau is symmetric, but not for a
    general tau (a nilpotent tau gives 1).
    """
    T = np.atleast_2d(np.asarray(tau, dtype=complex))
    return complex(np.linalg.det(np.eye(T.shape[0]) - T @ T.conj()))


def wp_potential_det(tau) -> float:
    T = np.atleast_2d(np.asarray(tau, dtype=complex))
    return float(np.linalg.det(np.eye(T.shape[0]) - T @ T.conj().T).real)


def wp_potential(tau) -> float:
    """det(I - tau tau^*), the normalised potential; NotInDomain outside D_{g,g}."""
    T = np.atleast_2d(np.asarray(tau, dtype=complex))
    if not contains(T):
        raise NotInDomain("the potential is only positive inside the domain")
    return wp_potential_det(T)


def log_potential(taus: np.ndarray) -> np.ndarray:
    """log det(I - tau tau^*) for a stack of matrices, via singular values and log1p."""
    s = np.linalg.svd(taus, compute_uv=False)
    if np.any(s >= 1):
        raise StepTooLarge("finite-difference stencil leaves the domain")
    return np.log1p(-s * s).sum(axis=-1)


# --- finite differences ---------------------------------------------------------


def _to_matrix(X: np.ndarray, g: int) -> np.ndarray:
    n = g * g
    return (X[..., :n] + 1j * X[..., n:]).reshape(X.shape[:-1] + (g, g))


def _to_real(tau: np.ndarray) -> np.ndarray:
    t = np.asarray(tau, dtype=complex).reshape(-1)
    return np.concatenate([t.real, t.imag])


def _richardson(levels: list[np.ndarray]) -> np.ndarray:
    """Combine estimates at steps h, h/2, h/4, ... whose error is even in h."""
    vals = list(levels)
    for j in range(1, len(vals)):
        f = 4.0**j
        vals = [(f * vals[i + 1] - vals[i]) / (f - 1) for i in range(len(vals) - 1)]
    return vals[0]


def real_derivatives(f: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, order: int,
                     h: float, levels: int = 2) -> np.ndarray:
    """Full symmetric tensor of order-th partial derivatives of f at x0.

    Each mixed partial uses the product of central differences, one per index,
    which is second-order accurate, then Richardson extrapolation over
    ``levels`` halvings of h.
    """
    m = x0.shape[-1]
    multis = np.array(list(itertools.combinations_with_replacement(range(m), order)), dtype=int)
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=order)))
    weight = signs.prod(axis=1)
    disp = np.zeros((len(multis), len(signs), m))
    rows = np.arange(len(multis))[:, None]
    cols = np.arange(len(signs))[None, :]
    for slot in range(order):
        disp[rows, cols, multis[:, slot][:, None]] += signs[None, :, slot]
    ests = []
    for lev in range(levels):
        step = h / 2**lev
        vals = f(x0 + step * disp)
        ests.append((vals * weight).sum(axis=-1) / (2 * step) ** order)
    vals = _richardson(ests)
    T = np.zeros((m,) * order)
    for perm in set(itertools.permutations(range(order))):
        T[tuple(multis[:, list(perm)].T)] = vals
    return T


def _wirtinger(g: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows of V give d/dtau_a = (d/dx_a - i d/dy_a)/2; W = conj(V) gives d/dtaubar_a."""
    n = g * g
    V = np.hstack([0.5 * np.eye(n), -0.5j * np.eye(n)])
    return V, V.conj()


def _check_point(tau: np.ndarray) -> np.ndarray:
    T = np.atleast_2d(np.asarray(tau, dtype=complex))
    if T.shape[0] != T.shape[1]:
        raise DimensionMismatch("tau must be square")
    if not contains(T):
        raise NotInDomain("I - tau tau^* is not positive definite")
    return T


def wp_metric(tau, h: float = 1e-4, levels: int = 2) -> np.ndarray:
    """g_{a bbar} = -d_a dbar_b log det(I - tau tau^*), a g^2 x g^2 Hermitian matrix."""
    T = _check_point(tau)
    g = T.shape[0]
    if 2 * h >= domain_margin(T):
        raise StepTooLarge("tau is too close to the boundary for the metric stencil")
    f = lambda X: log_potential(_to_matrix(X, g))
    H = real_derivatives(f, _to_real(T), 2, h, levels)
    V, W = _wirtinger(g)
    G = -np.einsum("ai,bj,ij->ab", V, W, H)
    return 0.5 * (G + G.conj().T)


@dataclass(frozen=True)
class CurvatureSample:
    """Metric data at one point; R[a, b, c, d] = R_{a bbar c dbar}."""

    tau: np.ndarray
    metric: np.ndarray
    dmetric: np.ndarray        # dmetric[c, a, b] = d_c g_{a bbar}
    R: np.ndarray

    @property
    def christoffel(self) -> np.ndarray:
        """Gamma[p, e, a] = g^{p qbar} d_e g_{a qbar}."""
        Ginv = np.linalg.inv(self.metric)
        return np.einsum("qp,eaq->pea", Ginv, self.dmetric)

    def holomorphic_sectional(self, v) -> float:
        v = np.asarray(v, dtype=complex).reshape(-1)
        num = np.einsum("abcd,a,b,c,d->", self.R, v, v.conj(), v, v.conj())
        den = np.einsum("ab,a,b->", self.metric, v, v.conj()) ** 2
        return float((num / den).real)


CURVATURE_MAX_NORM = 0.5


def wp_curvature(tau, h: float = 0.04, levels: int = 3) -> CurvatureSample:
    """Curvature of the Kaehler metric,

        R_{a bbar c dbar} = -d_c dbar_d g_{a bbar} + g^{p qbar} d_c g_{a qbar} dbar_d g_{p bbar},

    from fourth-order finite differences of the potential. For g = 1 the
    holomorphic sectional curvature is -2 everywhere.
    """
    T = _check_point(tau)
    if np.linalg.norm(T, 2) > CURVATURE_MAX_NORM:
        raise StepTooLarge(f"curvature is only estimated for ||tau|| <= {CURVATURE_MAX_NORM}")
    g = T.shape[0]
    x0 = _to_real(T)
    f = lambda X: log_potential(_to_matrix(X, g))
    D2 = real_derivatives(f, x0, 2, h / 10, levels)
    D3 = real_derivatives(f, x0, 3, h, levels)
    D4 = real_derivatives(f, x0, 4, h, levels)
    V, W = _wirtinger(g)
    G = -np.einsum("ai,bj,ij->ab", V, W, D2)
    G = 0.5 * (G + G.conj().T)
    dG = -np.einsum("ci,aj,bk,ijk->cab", V, V, W, D3)
    ddG = -np.einsum("ai,bj,ck,dl,ijkl->abcd", V, W, V, W, D4)
    Ginv = np.linalg.inv(G)
    # dbar_d g_{p bbar} = conj(d_d g_{b pbar})
    dbG = np.conj(dG).transpose(0, 2, 1)
    R = -ddG + np.einsum("caq,qp,dpb->abcd", dG, Ginv, dbG)
    return CurvatureSample(T, G, dG, R)


@dataclass(frozen=True)
class NablaReport:
    holomorphic: float
    antiholomorphic: float

    @property
    def max(self) -> float:
        return max(self.holomorphic, self.antiholomorphic)


def nabla_R_check(tau, direction, s: float = 1e-2, **kw) -> NablaReport:
    """Largest component of nabla_v R and nabla_vbar R for the unit direction v.

    The partial derivatives of R come from differencing curvature samples at
    tau +- s v and tau +- i s v (Richardson over s, s/2); the Christoffel terms
    of the Chern connection are then subtracted from the unbarred, respectively
    barred, slots.
    """
    T = _check_point(tau)
    v = np.asarray(direction, dtype=complex).reshape(T.shape)
    nv = np.linalg.norm(v)
    if nv == 0:
        raise ValueError("direction must be nonzero")
    v = v / nv
    if np.linalg.norm(T, 2) + s > CURVATURE_MAX_NORM + 1e-12:
        raise StepTooLarge(f"differencing would leave ||tau|| <= {CURVATURE_MAX_NORM}")
    base = wp_curvature(T, **kw)

    def dR(shift: np.ndarray) -> np.ndarray:
        ests = []
        for step in (s, s / 2):
            ests.append((wp_curvature(T + step * shift, **kw).R - wp_curvature(T - step * shift, **kw).R) / (2 * step))
        return _richardson(ests)

    Dx, Dy = dR(v), dR(1j * v)
    d_hol = 0.5 * (Dx - 1j * Dy)
    d_anti = 0.5 * (Dx + 1j * Dy)
    vv = v.reshape(-1)
    Gam = np.einsum("pea,e->pa", base.christoffel, vv)
    R = base.R
    nab = d_hol - np.einsum("pa,pbcd->abcd", Gam, R) - np.einsum("pc,abpd->abcd", Gam, R)
    GamB = np.conj(np.einsum("pea,e->pa", base.christoffel, vv))
    nab_bar = d_anti - np.einsum("qb,aqcd->abcd", GamB, R) - np.einsum("qd,abcq->abcd", GamB, R)
    return NablaReport(float(np.abs(nab).max()), float(np.abs(nab_bar).max()))


# --- Taylor expansion of the metric at the origin --------------------------------


@dataclass(frozen=True)
class TaylorReport:
    g: int
    radius: float
    constant_error: float      # max |g(0) - I| from the fitted constant term
    odd_max: float             # largest fitted coefficient of degree 1 or 3
    quadratic_error: float     # fitted quadratic part vs -R(0)_{a bbar c dbar} tau^c taubar^d
    curvature_scale: float


def _monomials(m: int, degrees: Iterable[int]) -> list[tuple[int, ...]]:
    return [c for d in degrees for c in itertools.combinations_with_replacement(range(m), d)]


def _design(X: np.ndarray, monos: list[tuple[int, ...]]) -> np.ndarray:
    return np.stack([np.prod(X[:, list(mono)], axis=1) if mono else np.ones(len(X)) for mono in monos], axis=1)


def metric_taylor_check(g: int, order: int = 3, radius: float = 0.05, seed: int = 0,
                        h: float = 1e-3, levels: int = 3) -> TaylorReport:
    """Least-squares fit of the metric entries around 0 in the real coordinates of tau.

    Samples come in pairs +-x, which splits each entry into its odd part (fitted
    with monomials of degree 1..order, odd) and its even part (degrees 0, 2, 4).
    """
    if order < 3:
        raise ValueError("order must be at least 3")
    m = 2 * g * g
    odd_deg = [d for d in range(1, order + 1) if d % 2]
    even_deg = [d for d in range(0, order + 2) if d % 2 == 0]
    odd_m = _monomials(m, odd_deg)
    even_m = _monomials(m, even_deg)
    rng = np.random.default_rng(seed)
    N = 2 * max(len(odd_m), len(even_m)) + 10
    X = rng.normal(size=(N, m))
    X *= (radius * rng.uniform(0.3, 1.0, N) / np.linalg.norm(X, axis=1))[:, None]
    plus = np.array([wp_metric(_to_matrix(x, g), h, levels) for x in X])
    minus = np.array([wp_metric(_to_matrix(-x, g), h, levels) for x in X])
    n = g * g
    odd = ((plus - minus) / 2).reshape(N, -1)
    even = ((plus + minus) / 2).reshape(N, -1)
    c_odd = np.linalg.lstsq(_design(X, odd_m), odd, rcond=None)[0]
    A_even = _design(X, even_m)
    c_even = np.linalg.lstsq(A_even, even, rcond=None)[0]
    const = c_even[0].reshape(n, n)
    quad_idx = [i for i, mono in enumerate(even_m) if len(mono) == 2]
    fitted_quad = (A_even[:, quad_idx] @ c_even[quad_idx]).reshape(N, n, n)
    R0 = wp_curvature(np.zeros((g, g))).R
    taus = _to_matrix(X, g).reshape(N, -1)
    predicted = -np.einsum("abcd,nc,nd->nab", R0, taus, taus.conj())
    scale = float(np.abs(predicted).max())
    return TaylorReport(
        g=g,
        radius=radius,
        constant_error=float(np.abs(const - np.eye(n)).max()),
        odd_max=float(np.abs(c_odd).max()),
        quadratic_error=float(np.abs(fitted_quad - predicted).max()),
        curvature_scale=scale,
    )
