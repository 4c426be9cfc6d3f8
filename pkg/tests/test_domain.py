"""Bounded domain, SU(g,g) action, symplectic embedding and Hodge bookkeeping."""

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyk import curve, domain
from cyk.errors import InconsistentDims, NonSquare, NotInDomain, ParityMismatch

seeds = st.integers(0, 2**32 - 1)
genera = st.integers(1, 3)


def unitary_pair(g, rng):
    U = domain._random_unitary(g, rng)
    V = domain._random_unitary(g, rng)
    K = np.block([[U, np.zeros((g, g))], [np.zeros((g, g)), V]])
    return K * np.linalg.det(K) ** (-1.0 / (2 * g))


def test_contains_examples(rng):
    assert domain.contains(0.5)
    assert not domain.contains(np.eye(3))
    for g in (1, 2, 3):
        X = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
        assert domain.contains(0.9 * X / np.linalg.norm(X, 2))
    with pytest.raises(NonSquare):
        domain.contains(np.zeros((2, 3)))


def test_su_check_examples(rng):
    for g in (1, 2, 3):
        assert domain.su_check(np.eye(2 * g))
        assert domain.su_check(unitary_pair(g, rng))
        H = domain.hermitian_form(g)
        assert domain.su_check(H) == (g % 2 == 0)
    assert not domain.su_check(np.eye(3))
    assert not domain.su_check(2 * np.eye(2))


@settings(max_examples=40, deadline=None)
@given(seeds, genera)
def test_group_action(seed, g):
    rng = np.random.default_rng(seed)
    M1, M2 = domain.random_su(g, rng), domain.random_su(g, rng)
    Z = domain.random_domain_point(g, rng, 0.8)
    assert domain.su_check(M1, 1e-9) and domain.su_check(M2, 1e-9)
    assert np.allclose(domain.act(np.eye(2 * g), Z), Z, atol=1e-12)
    W = domain.act(M1, domain.act(M2, Z))
    assert np.abs(domain.act(M1 @ M2, Z) - W).max() < 1e-10
    assert domain.contains(W)


def test_stabilizer_of_origin(rng):
    for g in (1, 2, 3):
        assert np.abs(domain.act(unitary_pair(g, rng), np.zeros((g, g)))).max() < 1e-14


@settings(max_examples=40, deadline=None)
@given(seeds, genera)
def test_transitive_witness(seed, g):
    rng = np.random.default_rng(seed)
    Z = domain.random_domain_point(g, rng, 0.95)
    M = domain.transitive_witness(Z)
    assert domain.su_check(M, 1e-9)
    assert np.abs(domain.act(M, np.zeros((g, g))) - Z).max() < 1e-10


def test_transitive_witness_examples():
    assert np.allclose(domain.transitive_witness(np.zeros((2, 2))), np.eye(4))
    M = domain.transitive_witness(0.5)
    assert abs(domain.act(M, 0)[0, 0] - 0.5) < 1e-12
    with pytest.raises(NotInDomain):
        domain.transitive_witness(1.5)


@settings(max_examples=40, deadline=None)
@given(seeds, genera)
def test_embed_sp(seed, g):
    rng = np.random.default_rng(seed)
    M1, M2 = domain.random_su(g, rng), domain.random_su(g, rng)
    J = domain.symplectic_form(g)
    S = domain.embed_sp(M1)
    assert np.abs(S.T @ J @ S - J).max() < 1e-12 * max(1, np.abs(S).max() ** 2)
    assert np.abs(domain.embed_sp(M1 @ M2) - S @ domain.embed_sp(M2)).max() < 1e-10


def test_embed_sp_compact_part(rng):
    assert np.array_equal(domain.embed_sp(np.eye(4)), np.eye(8))
    S = domain.embed_sp(unitary_pair(2, rng))
    J = domain.symplectic_form(2)
    assert np.abs(S.T @ S - np.eye(8)).max() < 1e-12
    assert np.abs(S @ J @ S.T - J).max() < 1e-12


def test_graph_subspace(rng):
    g = 2
    H = domain.hermitian_form(g)
    E = domain.graph_subspace(np.zeros((g, g)))
    assert np.array_equal(E, np.vstack([np.eye(g), np.zeros((g, g))]))
    Z = domain.random_domain_point(g, rng, 0.7)
    E, N = domain.graph_subspace(Z), domain.negative_subspace(Z)
    assert np.linalg.eigvalsh(E.conj().T @ H @ E).min() > 0
    assert np.linalg.eigvalsh(N.conj().T @ H @ N).max() < 0
    assert np.abs(E.conj().T @ H @ N).max() < 1e-14
    # equivariance: M maps E(Z) onto E(act(M, Z))
    M = domain.random_su(g, rng)
    ME, E2 = M @ E, domain.graph_subspace(domain.act(M, Z))
    assert np.linalg.matrix_rank(np.hstack([ME, E2]), tol=1e-9) == g
    margins = [np.linalg.eigvalsh(domain.graph_subspace(t * np.eye(g)).conj().T @ H
                                  @ domain.graph_subspace(t * np.eye(g))).min() for t in (0.9, 0.99, 0.999)]
    assert margins[0] > margins[1] > margins[2] > 0


@settings(max_examples=30, deadline=None)
@given(seeds, genera)
def test_weight1_positivity(seed, g):
    rng = np.random.default_rng(seed)
    Z = domain.random_domain_point(g, rng, 0.9)
    filt = domain.weight1_hodge(Z)
    assert filt.dims == {(1, 0): 2 * g, (0, 1): 2 * g}
    assert domain.hodge_positivity_check(filt)
    swapped = domain.HodgeFiltration(1, {(1, 0): filt.pieces[(0, 1)], (0, 1): filt.pieces[(1, 0)]},
                                     filt.pairing)
    assert not domain.hodge_positivity_check(swapped)


def test_weight1_filtration_at_origin():
    filt = domain.weight1_hodge(np.zeros((1, 1)))
    F1, F0 = filt.filtration()
    assert F1.shape == (4, 2) and F0.shape == (4, 4)


def test_curve_periods_satisfy_riemann_relations():
    Z = curve.period_matrix(curve.new_curve([0, 1, 4])).Z
    assert domain.hodge_positivity_check(domain.period_hodge(Z))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_wedge_positivity(g, rng):
    A = rng.normal(size=(g, g))
    Z = 0.3 * (A + A.T) + 1j * (np.eye(g) + 0.2 * A @ A.T)
    w = domain.wedge_hodge(domain.period_hodge(Z))
    assert w.dims == {(g - p, p): comb(g, p) ** 2 for p in range(g + 1)}
    assert domain.hodge_positivity_check(w)


def test_parity_mismatch():
    filt = domain.period_hodge(1j * np.eye(1))
    with pytest.raises(ParityMismatch):
        domain.hodge_positivity_check(filt, pairing=np.eye(2))


@pytest.mark.parametrize("g,expected", [(1, [1, 1]), (2, [1, 4, 1]), (3, [1, 9, 9, 1]), (4, [1, 16, 36, 16, 1])])
def test_wedge_dims(g, expected):
    dims = domain.wedge_hodge_dims(g)
    assert dims == expected == domain.middle_hodge_formula(g)
    assert sum(dims) == comb(2 * g, g)


def test_vhs_moduli_dimension():
    for g in (1, 2, 3):
        n = 2 * g
        dim_sp, dim_u = 2 * n * (2 * n + 1) // 2, n * n
        assert domain.vhs_moduli_dimension(1, {(1, 0): n}) == dim_sp - dim_u == n * (n + 1)
    assert domain.vhs_moduli_dimension(1, {(1, 0): 1}) == 2
    # weight 3 with h^{3,0} = 1, h^{2,1} = g^2 = 4: Sp(10)/(U(1) x U(4))
    assert domain.vhs_moduli_dimension(3, {(3, 0): 1, (2, 1): 4}) == 55 - 1 - 16
    # K3 type: SO(3, 19) / (U(1) x SO(20))
    assert domain.vhs_moduli_dimension(2, {(2, 0): 1, (1, 1): 20}) == 231 - 1 - 190
    with pytest.raises(InconsistentDims):
        domain.vhs_moduli_dimension(1, {(2, 0): 1})
    with pytest.raises(InconsistentDims):
        domain.vhs_moduli_dimension(1, {(1, 0): 1, (0, 1): 2})


def test_domain_dimension_matches_deformation_count():
    for g in range(1, 6):
        assert domain.bounded_domain_dimension(g) == g * g
