"""Periods and Abel-Jacobi map.

Oracles: the q-series j-invariant (independent of the homology basis) for
g = 1, and an independent scipy.integrate.quad evaluation with algebraic
endpoint weights for g = 2, 3.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import ellipk

from cyk import curve
from cyk.errors import DuplicateBranchPoint, EvenCount, UnsupportedBranchPoints


def j_from_tau(tau: complex, terms: int = 60) -> complex:
    q = np.exp(2j * math.pi * tau)
    s3 = sum(sum(d**3 for d in range(1, n + 1) if n % d == 0) * q**n for n in range(1, terms))
    s5 = sum(sum(d**5 for d in range(1, n + 1) if n % d == 0) * q**n for n in range(1, terms))
    E4, E6 = 1 + 240 * s3, 1 - 504 * s5
    return 1728 * E4**3 / (E4**3 - E6**2)


def j_from_branch(e1, e2, e3) -> complex:
    m = (e2 - e1) / (e3 - e1)
    return 256 * (1 - m + m * m) ** 3 / (m * m * (1 - m) ** 2)


def quad_period_matrix(lam):
    """Independent periods: loops 2 * int x^j / Y_+ with Y_+ = i^{#branch points above x} prod |.|^{1/2}."""
    lam = sorted(lam)
    g = (len(lam) - 1) // 2
    loops = np.zeros((g, 2 * g), dtype=complex)
    for k in range(2 * g):
        a, b = lam[k], lam[k + 1]
        phase = 1j ** (len(lam) - k - 1)
        others = [x for m, x in enumerate(lam) if m not in (k, k + 1)]
        for j in range(g):
            f = lambda x: x**j / math.sqrt(abs(math.prod(l - x for l in others)))
            val, _ = quad(f, a, b, weight="alg", wvar=(-0.5, -0.5), epsabs=1e-14, epsrel=1e-13)
            loops[j, k] = 2 * val / phase
    A = loops[:, 0::2]
    B = np.stack([loops[:, 2 * i + 1::2].sum(axis=1) for i in range(g)], axis=1)
    return np.linalg.solve(A, B)


def test_g1_matches_complete_elliptic_integrals():
    Z = curve.period_matrix(curve.new_curve([0, 1, 4])).Z[0, 0]
    assert Z == pytest.approx(1j * ellipk(0.75) / ellipk(0.25), rel=1e-12)


@pytest.mark.parametrize("lam", [[0, 1, 4], [-2, 0.5, 3], [0, 1j, 2 + 0.5j], [-1 - 1j, 0.3, 2 + 2j]])
def test_g1_j_invariant(lam):
    Z = curve.period_matrix(curve.new_curve(lam)).Z[0, 0]
    assert Z.imag > 0
    e = sorted(lam, key=lambda z: (complex(z).real, complex(z).imag))
    assert j_from_tau(Z) == pytest.approx(j_from_branch(*map(complex, e)), rel=1e-8)


@pytest.mark.parametrize("g", [2, 3])
def test_higher_genus_against_quad(g, rng):
    for _ in range(3):
        lam = np.sort(rng.uniform(-4, 4, 2 * g + 1))
        if np.min(np.diff(lam)) < 0.2:
            continue
        Z = curve.period_matrix(curve.new_curve(lam)).Z
        assert np.abs(Z - quad_period_matrix(list(lam))).max() < 1e-9


def test_cycle_basis_is_symplectic():
    for g in (1, 2, 3, 4):
        c = curve.new_curve(range(2 * g + 1))
        cyc = curve.build_cycles(c)
        assert np.array_equal(cyc.pairing_matrix(), curve.standard_symplectic(g))


def test_riemann_relations(rng):
    for g in (1, 2, 3):
        lam = np.sort(rng.uniform(-5, 5, 2 * g + 1))
        pm = curve.period_matrix(curve.new_curve(lam))
        assert pm.residuals["symmetry"] < 1e-10
        assert pm.residuals["min_eig_im"] > 0


def test_input_errors():
    with pytest.raises(EvenCount):
        curve.new_curve([0, 1])
    with pytest.raises(DuplicateBranchPoint):
        curve.new_curve([0, 1, 1])
    with pytest.raises(UnsupportedBranchPoints):
        curve.new_curve([0, 1, 2, 3, 1j])
    with pytest.raises(ValueError):
        curve.period_matrix(curve.new_curve([0, 1, 4]), tol=1e-18)


def test_abel_jacobi_involution_and_torsion():
    for lam in ([0, 1, 4], [-1.5, -0.2, 0.7, 2.0, 3.1]):
        c = curve.new_curve(lam)
        pm = curve.period_matrix(c)
        for x in (0.37 + 0.21j, -2.5 + 1j):
            p = curve.abel_jacobi(c, pm, [(x, 1)])
            q = curve.abel_jacobi(c, pm, [(x, -1)])
            assert (p + q).distance_to_zero() < 1e-10
        for b in c.branch_points:
            assert (2 * curve.abel_jacobi(c, pm, [(b, 1)])).distance_to_zero() < 1e-10


def test_abel_jacobi_base_point_and_empty():
    c = curve.new_curve([0, 1, 4])
    pm = curve.period_matrix(c)
    assert curve.abel_jacobi(c, pm, []).distance_to_zero() == 0
    x = (0.5 + 0.5j, 1)
    assert curve.abel_jacobi(c, pm, [x], base=x).distance_to_zero() < 1e-12


def test_abel_jacobi_complex_rejected():
    c = curve.new_curve([0, 1j, 2])
    pm = curve.period_matrix(c)
    with pytest.raises(UnsupportedBranchPoints):
        curve.abel_jacobi(c, pm, [(0.5, 1)])


def test_point_from_y_roundtrip():
    c = curve.new_curve([0, 1, 4])
    x = 2.0 + 0.3j
    assert curve.point_from_y(c, x, -c.Y(x)) == (x, -1)
