"""The bounded domain D_{g,g} = {Z : I - Z Z^* > 0}, SU(g,g), and Hodge bookkeeping.

SU(g,g) preserves q(v) = v^* H v with H = diag(I_g, -I_g) and acts by
Z -> (A Z + B)(C Z + D)^{-1}. The point Z corresponds to the q-positive
subspace spanned by the columns of [I; Z^*]; this correspondence is
equivariant, M [I; Z^*] spans the subspace of act(M, Z).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import InconsistentDims, NonSquare, NotInDomain, ParityMismatch, SingularDenominator


def _square(Z) -> np.ndarray:
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {Z.shape}")
    return Z


def hermitian_form(g: int) -> np.ndarray:
    return np.diag(np.r_[np.ones(g), -np.ones(g)]).astype(complex)


def domain_margin(Z) -> float:
    """min-eig(I - Z Z^*); positive exactly on the domain."""
    Z = _square(Z)
    return float(np.linalg.eigvalsh(np.eye(Z.shape[0]) - Z @ Z.conj().T).min())


def contains(Z, tol: float = 0.0) -> bool:
    return domain_margin(Z) > tol


@dataclass(frozen=True)
class DomainPoint:
    Z: np.ndarray

    def __post_init__(self):
        if not contains(self.Z):
            raise NotInDomain("I - Z Z^* is not positive definite")


def blocks(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    g = M.shape[0] // 2
    return M[:g, :g], M[:g, g:], M[g:, :g], M[g:, g:]


def su_check(M, tol: float = 1e-10) -> bool:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        return False
    H = hermitian_form(M.shape[0] // 2)
    return bool(np.max(np.abs(M.conj().T @ H @ M - H)) <= tol and abs(np.linalg.det(M) - 1) <= tol)


def act(M, Z) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    Z = _square(Z)
    A, B, C, D = blocks(M)
    den = C @ Z + D
    if np.linalg.cond(den) > 1e12:
        raise SingularDenominator("C Z + D is singular")
    return (A @ Z + B) @ np.linalg.inv(den)


def _hermitian_power(P: np.ndarray, power: float) -> np.ndarray:
    w, V = np.linalg.eigh(P)
    return (V * w**power) @ V.conj().T


def transitive_witness(Z) -> np.ndarray:
    """An element M of SU(g,g) with act(M, 0) = Z."""
    Z = _square(Z)
    if not contains(Z):
        raise NotInDomain("I - Z Z^* is not positive definite")
    g = Z.shape[0]
    I = np.eye(g)
    P = _hermitian_power(I - Z @ Z.conj().T, -0.5)
    Q = _hermitian_power(I - Z.conj().T @ Z, -0.5)
    M = np.block([[P, Z @ Q], [Z.conj().T @ P, Q]])
    # det M has modulus 1; the central phase e^{-i arg/2g} keeps M in U(g,g) and act unchanged
    phase = np.linalg.det(M)
    return M * phase ** (-1.0 / (2 * g))


def random_su(g: int, rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
    """A random element of SU(g,g): witness of a random point times a random stabilizer element."""
    Z = random_domain_point(g, rng, scale)
    U = _random_unitary(g, rng)
    V = _random_unitary(g, rng)
    K = np.block([[U, np.zeros((g, g))], [np.zeros((g, g)), V]])
    K = K * np.linalg.det(K) ** (-1.0 / (2 * g))
    return transitive_witness(Z) @ K


def _random_unitary(g: int, rng: np.random.Generator) -> np.ndarray:
    X = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_domain_point(g: int, rng: np.random.Generator, norm: float = 0.6) -> np.ndarray:
    """Random Z with operator norm ``norm * u``, u uniform in (0, 1]."""
    X = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
    return X / np.linalg.norm(X, 2) * norm * (1 - rng.uniform())


def realify(M: np.ndarray) -> np.ndarray:
    """Real 2n x 2n matrix of a complex n x n matrix on coordinates (x, y), v = x + iy."""
    M = np.asarray(M, dtype=complex)
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def symplectic_form(g: int) -> np.ndarray:
    """Matrix of Im q on R^{4g}: Im(v^* H w) = x^T H y' - y^T H x'."""
    H = hermitian_form(g).real
    z = np.zeros_like(H)
    return np.block([[z, H], [-H, z]])


def embed_sp(M) -> np.ndarray:
    return realify(M)


def graph_subspace(Z) -> np.ndarray:
    """2g x g basis of the q-positive subspace attached to Z."""
    Z = _square(Z)
    if not contains(Z):
        raise NotInDomain("I - Z Z^* is not positive definite")
    return np.vstack([np.eye(Z.shape[0]), Z.conj().T])


def negative_subspace(Z) -> np.ndarray:
    """2g x g basis of the q-orthogonal, q-negative complement: columns of [Z; I]."""
    Z = _square(Z)
    return np.vstack([Z, np.eye(Z.shape[0])])


# --- Hodge structures ----------------------------------------------------------


@dataclass
class HodgeFiltration:
    """Hodge decomposition of V_C = C^N, pieces keyed by (p, q) as column bases."""

    weight: int
    pieces: dict[tuple[int, int], np.ndarray]
    pairing: np.ndarray | None = field(default=None, repr=False)

    @property
    def dims(self) -> dict[tuple[int, int], int]:
        return {k: v.shape[1] for k, v in self.pieces.items()}

    def filtration(self) -> list[np.ndarray]:
        """F^p = sum of H^{a, n-a} with a >= p, for p = n..0."""
        out = []
        for p in range(self.weight, -1, -1):
            cols = [self.pieces[(a, self.weight - a)] for a in range(p, self.weight + 1)
                    if (a, self.weight - a) in self.pieces]
            out.append(np.hstack(cols) if cols else np.zeros((self._ambient(), 0)))
        return out

    def _ambient(self) -> int:
        return next(iter(self.pieces.values())).shape[0]


def complex_structure(Z) -> np.ndarray:
    """Real operator on R^{4g}: multiplication by i on E(Z), by -i on its q-complement."""
    Z = _square(Z)
    g = Z.shape[0]
    P = graph_subspace(Z)
    N = negative_subspace(Z)
    W = np.hstack([P, N])
    Jc = W @ np.diag(np.r_[1j * np.ones(g), -1j * np.ones(g)]) @ np.linalg.inv(W)
    return realify(Jc)


def weight1_hodge(Z) -> HodgeFiltration:
    """Weight-one Hodge structure on R^{4g} (with Im q) attached to Z; h^{1,0} = 2g."""
    J = complex_structure(Z)
    w, V = np.linalg.eig(J)
    plus = V[:, np.isclose(w, 1j, atol=1e-8)]
    minus = plus.conj()
    return HodgeFiltration(1, {(1, 0): plus, (0, 1): minus}, symplectic_form(_square(Z).shape[0]))


def period_hodge(Z) -> HodgeFiltration:
    """Weight-one structure of a Siegel point: H^{1,0} spanned by columns of [Z; I]."""
    Z = _square(Z)
    g = Z.shape[0]
    Q = np.block([[np.zeros((g, g)), np.eye(g)], [-np.eye(g), np.zeros((g, g))]])
    H10 = np.vstack([Z, np.eye(g)])
    return HodgeFiltration(1, {(1, 0): H10, (0, 1): H10.conj()}, Q)


def wedge_hodge(base: HodgeFiltration) -> HodgeFiltration:
    """Top exterior power of a weight-one structure on C^{2k} with h^{1,0} = k.

    Each wedge monomial omega_I ^ conj(omega)_J is written in Pluecker
    coordinates on the standard basis e_S of the k-th exterior power, so complex
    conjugation acts coordinatewise. The pairing is the one induced by the cup
    product, <e_S, e_T> = (-1)^{k(k-1)/2} det(Q[S, T]).
    """
    h10 = base.pieces[(1, 0)]
    h01 = base.pieces[(0, 1)]
    k = h10.shape[1]
    n = h10.shape[0]
    if n != 2 * k or h01.shape[1] != k:
        raise InconsistentDims("wedge_hodge expects h^{1,0} = h^{0,1} = half the ambient dimension")
    V = np.hstack([h10, h01])
    Q = np.asarray(base.pairing)
    subsets = list(itertools.combinations(range(n), k))
    sign = (-1) ** (k * (k - 1) // 2)
    G = np.array([[sign * np.linalg.det(Q[np.ix_(S, T)]) for T in subsets] for S in subsets])
    pieces: dict[tuple[int, int], list[np.ndarray]] = {}
    for I in itertools.combinations(range(2 * k), k):
        q = sum(1 for a in I if a >= k)
        cols = V[:, list(I)]
        pieces.setdefault((k - q, q), []).append(np.array([np.linalg.det(cols[list(S), :]) for S in subsets]))
    return HodgeFiltration(k, {pq: np.array(v).T for pq, v in sorted(pieces.items())}, G)


def wedge_hodge_dims(g: int) -> list[int]:
    """h^{g-p,p} of the g-th exterior power of C^g + conj(C^g), by enumeration."""
    counts = [0] * (g + 1)
    for I in itertools.combinations(range(2 * g), g):
        counts[sum(1 for a in I if a >= g)] += 1
    return counts


def hodge_positivity_check(filt: HodgeFiltration, pairing: np.ndarray | None = None,
                           tol: float = 1e-9) -> bool:
    """Hodge-Riemann sign condition on every H^{p,q} and the orthogonality relations."""
    Q = filt.pairing if pairing is None else np.asarray(pairing)
    n = filt.weight
    if np.max(np.abs(Q.T - (-1) ** n * Q)) > tol:
        raise ParityMismatch(f"pairing symmetry does not match weight {n}")
    for (p, q), B in filt.pieces.items():
        c = (-1j) ** (p - q) * (-1) ** (n * (n - 1) // 2)
        Hm = c * (B.T @ Q @ B.conj())
        Hm = 0.5 * (Hm + Hm.conj().T)
        if np.linalg.eigvalsh(Hm).min() <= tol:
            return False
        for (p1, q1), B1 in filt.pieces.items():
            if p != q1 and B.size and B1.size and np.max(np.abs(B.T @ Q @ B1)) > tol:
                return False
    return True


def _dim_sp(b: int) -> int:
    return b * (b + 1) // 2


def _dim_so(n: int) -> int:
    return n * (n - 1) // 2


def vhs_moduli_dimension(weight: int, dims: dict[tuple[int, int], int]) -> int:
    """Real dimension of G/K_1 for the classifying space of the given Hodge numbers.

    Odd weight: G = Sp(b, R), K_1 = prod_{p > q} U(h^{p,q}).
    Even weight n = 2m: G = SO(m1, m2) with m1 = sum of h^{p,q} over even p,
    K_1 = prod_{p > m} U(h^{p,q}) x SO(h^{m,m}).
    """
    full = {}
    for (p, q), h in dims.items():
        if p + q != weight or p < 0 or q < 0:
            raise InconsistentDims(f"h^{p},{q} is not of weight {weight}")
        full[(p, q)] = h
    for (p, q), h in list(full.items()):
        if full.setdefault((q, p), h) != h:
            raise InconsistentDims(f"h^{p},{q} != h^{q},{p}")
    b = sum(full.values())
    if weight % 2:
        k1 = sum(h * h for (p, q), h in full.items() if p > q)
        return _dim_sp(b) - k1
    m = weight // 2
    m1 = sum(h for (p, q), h in full.items() if p % 2 == 0)
    k1 = sum(h * h for (p, q), h in full.items() if p > m) + _dim_so(full.get((m, m), 0))
    return _dim_so(m1 + (b - m1)) - k1


def bounded_domain_dimension(g: int) -> int:
    """Complex dimension of D_{g,g}."""
    return g * g


def middle_hodge_formula(g: int) -> list[int]:
    return [comb(g, p) ** 2 for p in range(g + 1)]
