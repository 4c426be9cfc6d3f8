"""Beltrami algebra, omega_tau and the Weil-Petersson quantities.

Oracles: sympy for the bracket, an independent exterior-algebra expansion for
omega_tau, and closed forms of the disk metric for g = 1.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cyk import deform, domain
from cyk.deform import BeltramiField, Poly
from cyk.errors import DimensionMismatch, NonConstantBasis, NotInDomain, StepTooLarge
from cyk.exact import QI

I_ = sp.I


def to_sympy(p: Poly, zs):
    return sum((sp.Rational(c.re.numerator, c.re.denominator) + I_ * sp.Rational(c.im.numerator, c.im.denominator))
               * sp.prod([z**k for z, k in zip(zs, e)]) for e, c in p.terms)


def sympy_bracket(phi1, phi2, g):
    zs = sp.symbols(f"z1:{g + 1}")
    a = [[to_sympy(phi1.coefficient(mu, al), zs) for al in range(g)] for mu in range(g)]
    b = [[to_sympy(phi2.coefficient(mu, al), zs) for al in range(g)] for mu in range(g)]

    def T(al, be, nu):
        return sum(a[mu][al] * sp.diff(b[nu][be], zs[mu]) - b[mu][be] * sp.diff(a[nu][al], zs[mu])
                   for mu in range(g))

    out = {}
    for al, be in itertools.combinations(range(g), 2):
        for nu in range(g):
            out[((al, be), nu)] = sp.expand(T(al, be, nu) - T(be, al, nu))
    return out, zs


def random_poly_field(g, rng, degree):
    d = {}
    for mu in range(g):
        for al in range(g):
            terms = {}
            for _ in range(2):
                e = tuple(int(x) for x in rng.integers(0, degree + 1, g))
                if sum(e) <= degree:
                    terms[e] = QI(Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))),
                                  Fraction(int(rng.integers(-3, 4))))
            d[(mu, al)] = Poly.from_dict(g, terms)
    return BeltramiField.from_dict(g, d)


def test_bracket_example():
    g = 2
    phi1 = BeltramiField.from_dict(g, {(0, 0): Poly.variable(g, 0)})
    phi2 = BeltramiField.from_dict(g, {(0, 1): 1})
    br = deform.bracket(phi1, phi2)
    assert br.component((0, 1), 0) == Poly.constant(g, -1)
    assert br.component((0, 1), 1).is_zero()
    assert deform.bracket(phi2, phi1) == br


@pytest.mark.parametrize("g", [2, 3])
def test_bracket_matches_sympy(g):
    rng = np.random.default_rng(g)
    for _ in range(3):
        phi1, phi2 = random_poly_field(g, rng, 2), random_poly_field(g, rng, 2)
        expected, zs = sympy_bracket(phi1, phi2, g)
        br = deform.bracket(phi1, phi2)
        for key, expr in expected.items():
            assert sp.expand(to_sympy(br.component(*key), zs) - expr) == 0


def test_constant_brackets_vanish():
    rng = np.random.default_rng(5)
    for g in (1, 2, 3, 4):
        for _ in range(20):
            phi1 = random_poly_field(g, rng, 0)
            phi2 = random_poly_field(g, rng, 0)
            assert deform.bracket(phi1, phi2).is_zero()
            assert deform.bracket(phi1, phi1).is_zero()


def test_bracket_bilinear():
    rng = np.random.default_rng(11)
    g = 2
    a, b, c = (random_poly_field(g, rng, 2) for _ in range(3))
    lhs = deform.bracket(a + b.scale(QI(Fraction(2), Fraction(1))), c)
    r1, r2 = deform.bracket(a, c), deform.bracket(b, c)
    for al, nu in itertools.product([(0, 1)], range(g)):
        assert lhs.component(al, nu) == r1.component(al, nu) + r2.component(al, nu) * QI(Fraction(2), Fraction(1))
    with pytest.raises(DimensionMismatch):
        deform.bracket(BeltramiField(2), BeltramiField(3))


def test_kuranishi_series():
    phi, cert = deform.kuranishi_series(deform.standard_basis(1), [0])
    assert phi.coeffs == () and cert.residual == 0
    phi, cert = deform.kuranishi_series(deform.standard_basis(1), [Fraction(1, 3)])
    assert phi.coefficient(0, 0) == Poly.constant(1, Fraction(1, 3)) and cert.residual == 0
    tau = [Fraction(1, 2), QI(Fraction(1), Fraction(-2)), Fraction(-3, 7), QI(Fraction(0), Fraction(5))]
    phi, cert = deform.kuranishi_series(deform.standard_basis(2), tau)
    assert phi.is_constant() and cert.residual == 0 and cert.exact
    bad = BeltramiField.from_dict(2, {(0, 0): Poly.variable(2, 1)})
    with pytest.raises(NonConstantBasis):
        deform.kuranishi_series([bad], [1])


# --- omega_tau ------------------------------------------------------------------


def wedge_oracle(tau):
    """Expand wedge_i (dz^i + sum_j tau_ij dzbar^j) on generators 0..g-1 (dz), g..2g-1 (dzbar)."""
    g = len(tau)
    forms = {(): 1}
    for i in range(g):
        factor = {i: 1}
        factor.update({g + j: tau[i][j] for j in range(g)})
        new = {}
        for mono, c in forms.items():
            for gen, a in factor.items():
                if gen in mono:
                    continue
                sign = (-1) ** sum(1 for x in mono if x > gen)
                key = tuple(sorted(mono + (gen,)))
                new[key] = new.get(key, 0) + sign * c * a
        forms = new
    out = {}
    for mono, c in forms.items():
        I = tuple(x for x in mono if x < g)
        J = tuple(x - g for x in mono if x >= g)
        if c != 0:
            out[(I, J)] = c
    return out


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_omega_tau_matches_wedge_expansion(g):
    rng = np.random.default_rng(g)
    tau = [[Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(g)] for _ in range(g)]
    om = deform.omega_tau(tau)
    expected = wedge_oracle(tau)
    keys = set(expected) | {k for k, v in om.coeffs.items() if v != 0}
    for key in keys:
        assert om.component(*key) == expected.get(key, 0)


def test_omega_tau_examples():
    om = deform.omega_tau([[0, 0], [0, 0]])
    assert {k: v for k, v in om.coeffs.items() if v != 0} == {((0, 1), ()): 1}
    t = Fraction(2, 3)
    om = deform.omega_tau([[t]])
    assert om.component((0,), ()) == 1 and om.component((), (0,)) == t
    a, b, c, d = (Fraction(x) for x in (1, 2, 3, 4))
    om = deform.omega_tau([[a, b], [c, d]])
    assert om.component((), (0, 1)) == a * d - b * c


def test_hodge_components():
    om = deform.omega_tau([[Fraction(1, 2), 3], [Fraction(-1), Fraction(2, 5)]])
    pieces = deform.hodge_components(om)
    assert [len(p.coeffs) for p in pieces] == [1, 4, 1]
    assert deform.reassemble(pieces).coeffs == om.coeffs
    only = deform.hodge_components(deform.omega_tau([[0, 0], [0, 0]]))
    assert [sum(1 for v in p.coeffs.values() if v != 0) for p in only] == [1, 0, 0]


def test_components_are_homogeneous():
    rng = np.random.default_rng(3)
    g = 3
    tau = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
    lam = 0.37 - 0.2j
    base = deform.omega_tau(tau)
    scaled = deform.omega_tau(lam * tau)
    for (I, J), c in base.coeffs.items():
        assert abs(scaled.component(I, J) - lam ** len(J) * c) < 1e-12 * max(1, abs(c))


# --- potential -------------------------------------------------------------------


def test_potential_g1_and_origin():
    assert deform.wp_potential(np.zeros((3, 3))) == 1
    for t in (0.3, 0.2 + 0.5j, -0.7j):
        assert deform.wp_potential([[t]]) == pytest.approx(1 - abs(t) ** 2, abs=1e-15)
        assert deform.wp_potential_pairing([[t]]) == pytest.approx(1 - abs(t) ** 2, abs=1e-15)
    with pytest.raises(NotInDomain):
        deform.wp_potential([[1.2]])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_pairing_sum_closed_form(seed, g):
    rng = np.random.default_rng(seed)
    tau = domain.random_domain_point(g, rng, 0.9)
    assert abs(deform.wp_potential_pairing(tau) - deform.wp_potential_wedge_closed(tau)) < 1e-12
    sym = 0.5 * (tau + tau.T)
    assert abs(deform.wp_potential_pairing(sym) - deform.wp_potential_det(sym)) < 1e-12


def test_pairing_sum_differs_for_nilpotent_tau():
    tau = np.array([[0, 0.3], [0, 0]])
    assert deform.wp_potential_pairing(tau) == pytest.approx(1.0)
    assert deform.wp_potential_det(tau) == pytest.approx(0.91)


def test_potential_invariance_and_boundary(rng):
    g = 3
    tau = domain.random_domain_point(g, rng, 0.8)
    u, v = domain._random_unitary(g, rng), domain._random_unitary(g, rng)
    assert abs(deform.wp_potential(u.T @ tau @ v) - deform.wp_potential(tau)) < 1e-12
    direction = tau / np.linalg.norm(tau, 2)
    vals = [deform.wp_potential(t * direction) for t in np.linspace(0, 0.999999, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-5


# --- metric and curvature ---------------------------------------------------------


def test_metric_at_origin_and_g1():
    for g in (1, 2, 3):
        assert np.abs(deform.wp_metric(np.zeros((g, g))) - np.eye(g * g)).max() < 1e-8
    for t in (0.3, 0.5 + 0.4j, -0.8j):
        G = deform.wp_metric([[t]])
        assert abs(G[0, 0] - 1 / (1 - abs(t) ** 2) ** 2) < 1e-6


def test_metric_spectrum_invariance(rng):
    g = 2
    tau = domain.random_domain_point(g, rng, 0.7)
    u, v = domain._random_unitary(g, rng), domain._random_unitary(g, rng)
    e1 = np.linalg.eigvalsh(deform.wp_metric(tau))
    e2 = np.linalg.eigvalsh(deform.wp_metric(u.T @ tau @ v))
    assert np.abs(e1 - e2).max() < 1e-6
    assert e1.min() > 0


def test_metric_step_errors():
    with pytest.raises(StepTooLarge):
        deform.wp_metric([[0.99995]])
    with pytest.raises(NotInDomain):
        deform.wp_metric([[1.5]])


@pytest.mark.parametrize("t", [0, 0.2, 0.3 + 0.3j, -0.45j, 0.1 - 0.2j])
def test_g1_curvature_and_parallel(t):
    sample = deform.wp_curvature([[t]])
    assert abs(sample.holomorphic_sectional([1]) + 2) < 1e-4
    assert deform.nabla_R_check([[t * 0.9]], [[1]]).max < 1e-4


@pytest.mark.slow
def test_g2_nabla_R():
    rng = np.random.default_rng(2)
    v = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    for tau in (np.zeros((2, 2)), 0.3 * domain.random_domain_point(2, rng, 1.0)):
        assert deform.nabla_R_check(tau, v).max < 1e-3


def test_curvature_norm_restriction():
    with pytest.raises(StepTooLarge):
        deform.wp_curvature([[0.7]])


@pytest.mark.slow
@pytest.mark.parametrize("g", [1, 2])
def test_metric_taylor(g):
    rep = deform.metric_taylor_check(g)
    assert rep.constant_error < 1e-7
    assert rep.odd_max < 1e-7
    assert rep.quadratic_error < 1e-6 * max(1, rep.curvature_scale)
