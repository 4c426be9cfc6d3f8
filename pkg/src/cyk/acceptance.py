"""The eleven acceptance criteria, shared by ``cyk verify-all`` and the test suite.

Each criterion returns a CriterionResult whose ``metrics`` hold the measured
quantities; ``passed`` compares them with the stated thresholds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import cover, curve, deform, domain, theta
from .exact import QI


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0
    budget: float | None = None
    note: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title}"

    def as_json(self) -> dict:
        out = {"number": self.number, "title": self.title, "passed": self.passed, "metrics": self.metrics}
        if self.budget is not None:
            out["time_budget_s"] = self.budget
        if self.note:
            out["note"] = self.note
        return out


def agm(a: float, b: float) -> float:
    while abs(a - b) > 1e-15 * abs(a):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


def agm_period_g1(e1: float, e2: float, e3: float) -> complex:
    """tau = i K(1 - m) / K(m) with m = (e2 - e1)/(e3 - e1), using K(m) = pi / (2 agm(1, sqrt(1 - m)))."""
    m = (e2 - e1) / (e3 - e1)
    return 1j * agm(1.0, math.sqrt(1.0 - m)) / agm(1.0, math.sqrt(m))


def _rng(seed: int, number: int) -> np.random.Generator:
    return np.random.default_rng([seed, number])


def _cap(stated: int, g_max: int | None) -> int:
    return stated if g_max is None else max(1, min(stated, g_max))


def random_branch_points(rng: np.random.Generator, g: int, min_gap: float = 0.05) -> list[float]:
    while True:
        lam = np.sort(rng.uniform(-5.0, 5.0, 2 * g + 1))
        if np.min(np.diff(lam)) >= min_gap:
            return [float(x) for x in lam]


def random_siegel(rng: np.random.Generator, g: int) -> np.ndarray:
    X = rng.uniform(-0.5, 0.5, (g, g))
    A = rng.normal(size=(g, g)) * 0.4
    Y = A @ A.T + 0.6 * np.eye(g)
    return (X + X.T) / 2 + 1j * Y


# --- criteria -------------------------------------------------------------------------


def criterion_1(seed: int, g_max: int | None) -> CriterionResult:
    c = curve.new_curve([0, 1, 4])
    Z = complex(curve.period_matrix(c).Z[0, 0])
    ref = agm_period_g1(0.0, 1.0, 4.0)
    rel = abs(Z - ref) / abs(ref)
    return CriterionResult(1, "g=1 period matches the AGM oracle", rel < 1e-8,
                           {"Z": [Z.real, Z.imag], "agm": [ref.real, ref.imag], "relative_error": rel},
                           budget=5.0)


def criterion_2(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 2)
    worst_sym, worst_eig = 0.0, math.inf
    count = 0
    for g in range(1, _cap(3, g_max) + 1):
        for _ in range(20):
            pm = curve.period_matrix(curve.new_curve(random_branch_points(rng, g)))
            worst_sym = max(worst_sym, float(np.abs(pm.Z - pm.Z.T).max()))
            worst_eig = min(worst_eig, float(np.linalg.eigvalsh(pm.Z.imag).min()))
            count += 1
    ok = worst_sym < 1e-6 and worst_eig > 0
    return CriterionResult(2, "Riemann relations on random branch sets", ok,
                           {"curves": count, "max_asymmetry": worst_sym, "min_eig_imZ": worst_eig}, budget=120.0)


def criterion_3(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 3)
    gtop = _cap(3, g_max)
    quasi, odd = 0.0, 0.0
    for n in range(50):
        g = 1 + n % gtop
        Z = random_siegel(rng, g)
        z = rng.uniform(-0.5, 0.5, g) + 1j * rng.uniform(-0.3, 0.3, g)
        t0 = theta.theta(None, z, Z)
        for k in range(g):
            e = np.zeros(g)
            e[k] = 1
            quasi = max(quasi, abs(theta.theta(None, z + e, Z) - t0) / abs(t0))
            shifted = theta.theta(None, z + Z @ e, Z)
            expect = np.exp(-1j * math.pi * Z[k, k] - 2j * math.pi * z[k]) * t0
            quasi = max(quasi, abs(shifted - expect) / abs(expect))
        for ch in theta.all_characteristics(g):
            if ch.parity:
                odd = max(odd, abs(theta.theta(ch, np.zeros(g), Z)))
    torsion = 0.0
    for g in range(1, _cap(2, g_max) + 1):
        for _ in range(2):
            c = curve.new_curve(random_branch_points(rng, g, min_gap=0.3))
            pm = curve.period_matrix(c)
            for t in theta.divisor_translates(c, pm):
                torsion = max(torsion, curve.lattice_distance(2 * t, pm.Z))
    ok = quasi < 1e-9 and odd < 1e-10 and torsion < 1e-7
    return CriterionResult(3, "theta quasi-periodicity, odd vanishing, 2-torsion translates", ok,
                           {"quasi_periodicity_residual": quasi, "max_odd_theta_at_0": odd,
                            "max_two_torsion_distance": torsion})


def criterion_4(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 4)
    worst = 0.0
    curves = [[0.0, 1.0, 4.0]]
    for g in range(1, _cap(2, g_max) + 1):
        curves += [random_branch_points(rng, g, min_gap=0.3) for _ in range(2)]
    for lam in curves:
        c = curve.new_curve(lam)
        pm = curve.period_matrix(c)
        for x in c.branch_points:
            # 2 lambda_i - 2 infinity, with the base point at infinity
            worst = max(worst, curve.abel_jacobi(c, pm, [(x, 1), (x, 1)]).distance_to_zero())
    return CriterionResult(4, "Abel: AJ(2 lambda_i - 2 infinity) is a lattice point", worst < 1e-7,
                           {"curves": len(curves), "max_lattice_distance": worst})


def _random_qi(rng: np.random.Generator) -> QI:
    return QI(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))),
              Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))))


def criterion_5(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 5)
    gtop = _cap(4, g_max)
    nonzero = 0
    for n in range(1000):
        g = 1 + n % gtop
        a = deform.BeltramiField.from_matrix([[_random_qi(rng) for _ in range(g)] for _ in range(g)])
        b = deform.BeltramiField.from_matrix([[_random_qi(rng) for _ in range(g)] for _ in range(g)])
        if not deform.bracket(a, b).is_zero():
            nonzero += 1
    z1 = deform.Poly.variable(2, 0)
    phi1 = deform.BeltramiField.from_dict(2, {(0, 0): z1})
    phi2 = deform.BeltramiField.from_dict(2, {(0, 1): 1})
    counter = deform.bracket(phi1, phi2)
    ok = nonzero == 0 and not counter.is_zero()
    return CriterionResult(5, "brackets of constant Beltrami fields vanish exactly", ok,
                           {"pairs": 1000, "nonzero_brackets": nonzero,
                            "counterexample_nonzero": not counter.is_zero(),
                            "counterexample": {str(k): str(p) for k, p in counter.components}})


def _random_domain(rng: np.random.Generator, g: int, symmetric: bool = False) -> np.ndarray:
    X = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
    if symmetric:
        X = X + X.T
    return X / np.linalg.norm(X, 2) * 0.95 * rng.uniform(0.05, 1.0)


def criterion_6(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 6)
    worst, worst_sym, worst_identity = 0.0, 0.0, 0.0
    per_g = {}
    for g in range(1, _cap(3, g_max) + 1):
        gw = 0.0
        for _ in range(100):
            tau = _random_domain(rng, g)
            p = deform.wp_potential_pairing(tau)
            gw = max(gw, abs(p - deform.wp_potential_det(tau)))
            worst_identity = max(worst_identity, abs(p - deform.wp_potential_wedge_closed(tau)))
            s = _random_domain(rng, g, symmetric=True)
            worst_sym = max(worst_sym, abs(deform.wp_potential_pairing(s) - deform.wp_potential_det(s)))
        per_g[str(g)] = gw
        worst = max(worst, gw)
    note = None
    if worst >= 1e-12:
        note = ("the wedge pairing sum equals det(I - tau conj(tau)); it agrees with det(I - tau tau^*) "
                "only on symmetric tau")
    return CriterionResult(6, "pairing-sum potential equals det(I - tau tau^*)", worst < 1e-12,
                           {"max_error_by_g": per_g, "max_error_symmetric_tau": worst_sym,
                            "max_error_vs_det_I_minus_tau_taubar": worst_identity}, note=note)


def criterion_7(seed: int, g_max: int | None) -> CriterionResult:
    gtop = _cap(2, g_max)
    at0 = max(float(np.abs(deform.wp_metric(np.zeros((g, g))) - np.eye(g * g)).max()) for g in range(1, gtop + 1))
    reports = [deform.metric_taylor_check(g, seed=seed) for g in range(1, gtop + 1)]
    odd = max(r.odd_max for r in reports)
    quad = max(r.quadratic_error for r in reports)
    ok = at0 < 1e-8 and odd < 1e-7
    return CriterionResult(7, "metric expansion: identity at 0, no third-order terms", ok,
                           {"metric_at_0_error": at0, "max_third_order_coefficient": odd,
                            "quadratic_vs_minus_R": quad})


def criterion_8(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 8)
    k_err, nab1 = 0.0, 0.0
    for _ in range(5):
        t = complex(*(rng.uniform(-1, 1, 2))) * 0.45 / math.sqrt(2)
        k_err = max(k_err, abs(deform.wp_curvature([[t]]).holomorphic_sectional([1]) + 2))
        nab1 = max(nab1, deform.nabla_R_check([[t]], [[complex(*rng.normal(size=2))]]).max)
    metrics = {"g1_sectional_curvature_error": k_err, "g1_max_nabla_R": nab1}
    ok = k_err < 1e-4 and nab1 < 1e-4
    if _cap(2, g_max) >= 2:
        nab2 = 0.0
        points = [np.zeros((2, 2))] + [_random_domain(rng, 2) * 0.45 / 0.95 for _ in range(4)]
        for tau in points:
            d = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            nab2 = max(nab2, deform.nabla_R_check(tau, d).max)
        metrics["g2_max_nabla_R"] = nab2
        ok = ok and nab2 < 1e-3
    return CriterionResult(8, "nabla R vanishes", ok, metrics, budget=180.0)


def criterion_9(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 9)
    gtop = _cap(3, g_max)
    compose = witness = sympl = homo = 0.0
    outside = 0
    for n in range(200):
        g = 1 + n % gtop
        M1, M2 = domain.random_su(g, rng), domain.random_su(g, rng)
        Z = domain.random_domain_point(g, rng, 0.9)
        Z1 = domain.act(M1, Z)
        outside += not domain.contains(Z1)
        compose = max(compose, float(np.abs(domain.act(M1 @ M2, Z) - domain.act(M1, domain.act(M2, Z))).max()))
        W = domain.transitive_witness(Z)
        witness = max(witness, float(np.abs(domain.act(W, np.zeros((g, g))) - Z).max()))
        S1, S2 = domain.embed_sp(M1), domain.embed_sp(M2)
        J = domain.symplectic_form(g)
        sympl = max(sympl, float(np.abs(S1.T @ J @ S1 - J).max()))
        homo = max(homo, float(np.abs(domain.embed_sp(M1 @ M2) - S1 @ S2).max()))
    ok = outside == 0 and compose < 1e-10 and witness < 1e-12 and sympl < 1e-10 and homo < 1e-10
    return CriterionResult(9, "SU(g,g) action, transitivity witness, symplectic embedding", ok,
                           {"elements": 200, "left_domain": outside, "composition_error": compose,
                            "witness_error": witness, "symplectic_error": sympl, "homomorphism_error": homo})


def criterion_10(seed: int, g_max: int | None) -> CriterionResult:
    rows, ok = {}, True
    for g in range(2, max(2, _cap(6, g_max)) + 1):
        enum = domain.wedge_hodge_dims(g)
        formula = [math.comb(g, p) ** 2 for p in range(g + 1)]
        hd = cover.hodge_numbers(g)
        dim_ok = hd.h_g_minus_1_1 == g * g == domain.bounded_domain_dimension(g)
        ok &= enum == formula and dim_ok
        rows[str(g)] = {"middle": enum, "b2": hd.b2, "b2_flag": hd.b2_flag, "h_g-1_1_equals_dim_D": dim_ok}
    return CriterionResult(10, "Hodge numbers by wedge enumeration", ok, {"by_g": rows})


def criterion_11(seed: int, g_max: int | None) -> CriterionResult:
    rng = _rng(seed, 11)
    ok = True
    rows = {}
    for g in range(1, _cap(6, g_max) + 1):
        lam = sorted(set(Fraction(int(x), int(rng.integers(1, 5))) for x in rng.integers(-30, 30, 6 * g)))
        lam = [Fraction(k) for k in range(2 * g + 1)] if len(lam) < 2 * g + 1 else lam[: 2 * g + 1]
        arr = cover.branch_arrangement(lam)
        gp = cover.general_position(arr).ok
        flats = len(cover.pairwise_intersections(arr))
        N = cover.group_N(g)
        row = {"general_position": gp, "flats": flats, "order_N": N.order, "index": N.index}
        good = gp and flats == math.comb(2 * g + 2, 2) and N.order == 2 ** (g - 1) * math.factorial(g) and N.index == 2
        if g <= 4:
            row["invariance"] = cover.invariance_check(g)
            good &= row["invariance"]
        if 2 <= g <= 3:
            row["ramification_ok"] = cover.ramification_analysis(g).ok
            good &= row["ramification_ok"]
        rows[str(g)] = row
        ok &= good
    return CriterionResult(11, "arrangements, covering group, invariance", ok, {"by_g": rows}, budget=60.0)


CRITERIA: list[Callable[[int, int | None], CriterionResult]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_criterion(number: int, seed: int = 0, g_max: int | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number - 1](seed, g_max)
    res.seconds = time.perf_counter() - t0
    if res.budget is not None and res.seconds > res.budget:
        res.passed = False
        res.note = (res.note + "; " if res.note else "") + f"exceeded time budget of {res.budget:g} s"
    return res


def run_all(seed: int = 0, g_max: int | None = None) -> list[CriterionResult]:
    return [run_criterion(n, seed, g_max) for n in range(1, len(CRITERIA) + 1)]
