"""Combinatorics of the double cover of P^g branched along 2g+2 hyperplanes.

A point of P^g = Sym^g(P^1) is a binary form of degree <= g, so the branch
point lambda becomes the evaluation covector (1, lambda, ..., lambda^g) and
infinity becomes (0, ..., 0, 1). The group G = (Z/2)^g x| S_g acts on C^g,
the product of g copies of the hyperelliptic curve, and N is its index-two
subgroup of elements with an even number of sign flips.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .domain import wedge_hodge_dims
from .errors import DuplicateBranchPoint, EvenCount, GTooLarge, NotGeneralPosition
from .exact import QI, rank

Covector = tuple[QI, ...]


@dataclass(frozen=True)
class Arrangement:
    g: int
    hyperplanes: tuple[Covector, ...]

    def __post_init__(self):
        for h in self.hyperplanes:
            if len(h) != self.g + 1:
                raise ValueError(f"covector {h} must have {self.g + 1} entries")
            if not any(h):
                raise ValueError("zero covector does not define a hyperplane")


def branch_arrangement(branch_points: Sequence[object]) -> Arrangement:
    """2g+1 finite branch points (exact values) plus infinity -> 2g+2 covectors."""
    lams = [QI.of(x) for x in branch_points]
    if len(lams) % 2 == 0 or len(lams) < 3:
        raise EvenCount("need an odd number (at least 3) of finite branch points")
    if len(set(lams)) != len(lams):
        raise DuplicateBranchPoint("branch points must be distinct")
    g = (len(lams) - 1) // 2
    rows = []
    for lam in lams:
        row, p = [], QI.of(1)
        for _ in range(g + 1):
            row.append(p)
            p = p * lam
        rows.append(tuple(row))
    rows.append(tuple(QI.of(0) for _ in range(g)) + (QI.of(1),))
    return Arrangement(g, tuple(rows))


@dataclass(frozen=True)
class GeneralPosition:
    ok: bool
    violation: tuple[int, ...] | None = None


def general_position(arr: Arrangement) -> GeneralPosition:
    """Every g covectors have rank g and every g+1 have rank g+1 (lexicographic scan)."""
    H = arr.hyperplanes
    for size in (arr.g, arr.g + 1):
        for sub in itertools.combinations(range(len(H)), size):
            if rank([H[i] for i in sub]) != size:
                return GeneralPosition(False, sub)
    return GeneralPosition(True)


@dataclass(frozen=True)
class Flat:
    """H_i intersect H_j, of projective dimension g-2 (vacuous when g = 1)."""

    i: int
    j: int
    dimension: int
    covectors: tuple[Covector, Covector]

    @property
    def vacuous(self) -> bool:
        return self.dimension < 0


def pairwise_intersections(arr: Arrangement) -> list[Flat]:
    if not general_position(arr).ok:
        raise NotGeneralPosition("pairwise flats need an arrangement in general position")
    H = arr.hyperplanes
    out = []
    for i, j in itertools.combinations(range(len(H)), 2):
        r = rank([H[i], H[j]])
        out.append(Flat(i, j, arr.g - r, (H[i], H[j])))
    return out


# --- the groups G and N -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class CoverGroupElement:
    """(s, pi): flip the slots with s_k = 1 after moving slot k to slot pi(k)."""

    signs: tuple[int, ...]
    perm: tuple[int, ...]

    @property
    def in_N(self) -> bool:
        return sum(self.signs) % 2 == 0

    def __mul__(self, other: "CoverGroupElement") -> "CoverGroupElement":
        g = len(self.perm)
        inv = [0] * g
        for k, p in enumerate(self.perm):
            inv[p] = k
        moved = tuple(other.signs[inv[k]] for k in range(g))
        signs = tuple((a + b) % 2 for a, b in zip(self.signs, moved))
        perm = tuple(self.perm[other.perm[k]] for k in range(g))
        return CoverGroupElement(signs, perm)

    @classmethod
    def identity(cls, g: int) -> "CoverGroupElement":
        return cls((0,) * g, tuple(range(g)))


MAX_GROUP_G = 6
MAX_TABLE_G = 5


@dataclass(frozen=True)
class CoverGroup:
    g: int
    elements: tuple[CoverGroupElement, ...]
    full_order: int

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...] | None:
        """table[a][b] = index of elements[a] * elements[b]; None above g = 5."""
        if self.g > MAX_TABLE_G:
            return None
        pos = {x: i for i, x in enumerate(self.elements)}
        return tuple(tuple(pos[a * b] for b in self.elements) for a in self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.full_order // self.order

    def is_closed(self) -> bool:
        members = set(self.elements)
        return all(a * b in members for a in self.elements for b in self.elements)


def full_group(g: int) -> list[CoverGroupElement]:
    if g > MAX_GROUP_G:
        raise GTooLarge(f"group enumeration is limited to g <= {MAX_GROUP_G}")
    return [CoverGroupElement(s, p) for s in itertools.product((0, 1), repeat=g)
            for p in itertools.permutations(range(g))]


def group_N(g: int) -> CoverGroup:
    """N = kernel of the sign-sum map; the multiplication table is built on first use."""
    G = full_group(g)
    return CoverGroup(g, tuple(x for x in G if x.in_N), len(G))


# --- ramification on marked tuples -------------------------------------------------

# A mark is ("x", label, sheet) for a generic point or ("w", j) for the Weierstrass point lambda_j.
Mark = tuple


def _iota(mark: Mark) -> Mark:
    if mark[0] == "w":
        return mark
    return ("x", mark[1], -mark[2])


def act_on_tuple(elem: CoverGroupElement, t: Sequence[Mark]) -> tuple[Mark, ...]:
    out: list[Mark] = [None] * len(t)
    for k, mark in enumerate(t):
        out[elem.perm[k]] = mark
    return tuple(_iota(m) if s else m for m, s in zip(out, elem.signs))


def stabilizer(t: Sequence[Mark], group: Iterable[CoverGroupElement]) -> list[CoverGroupElement]:
    t = tuple(t)
    return [x for x in group if act_on_tuple(x, t) == t]


def is_ramified(t: Sequence[Mark], G: Sequence[CoverGroupElement]) -> bool:
    """The image of t in C^g/N is a branch point over P^g iff Stab_G(t) is not inside N."""
    return any(not x.in_N for x in stabilizer(t, G))


@dataclass(frozen=True)
class RamificationReport:
    g: int
    tuples_checked: int
    ramified_iff_weierstrass: bool
    generic_stabilizer_trivial: bool
    weierstrass_slot_fixed_by_deck: bool
    divisor_count: int
    point_images: int
    point_orbits_single: bool
    g_plus_one_infeasible: bool

    @property
    def ok(self) -> bool:
        return (self.ramified_iff_weierstrass and self.generic_stabilizer_trivial
                and self.weierstrass_slot_fixed_by_deck and self.divisor_count == 2 * self.g + 2
                and self.point_orbits_single and self.g_plus_one_infeasible
                and self.point_images == math.comb(2 * self.g + 2, self.g))


def _orbit(t: tuple[Mark, ...], G: Sequence[CoverGroupElement]) -> frozenset:
    return frozenset(act_on_tuple(x, t) for x in G)


def ramification_analysis(g: int, which: str = "N", exhaustive_max_g: int = 3) -> RamificationReport:
    """Check the ramification claims of the cover C^g/N -> P^g on marked tuples.

    Exhaustive over the alphabet {x_1..x_g on both sheets, lambda_1..lambda_{g+1}}
    for g <= exhaustive_max_g; larger g checks only the structured examples.
    """
    if which != "N":
        raise ValueError("only the subgroup N is modelled")
    G = full_group(g)
    generic = [("x", k, 1) for k in range(g)]
    alphabet = [("x", k, s) for k in range(g) for s in (1, -1)] + [("w", j) for j in range(g + 1)]
    checked = 0
    iff = True
    if g <= exhaustive_max_g:
        for t in itertools.product(alphabet, repeat=g):
            checked += 1
            has_w = any(m[0] == "w" for m in t)
            if is_ramified(t, G) != has_w:
                iff = False
    gen_stab = stabilizer(generic, G) == [CoverGroupElement.identity(g)]
    marked = tuple(generic[:-1]) + (("w", 0),)
    flip_last = CoverGroupElement((0,) * (g - 1) + (1,), tuple(range(g)))
    deck_fixed = act_on_tuple(flip_last, marked) == marked and not flip_last.in_N
    divisors = set()
    for j in range(2 * g + 2):
        for slot in range(g):
            t = list(generic[:-1])
            t.insert(slot, ("w", j))
            divisors.add(_orbit(tuple(t), G))
    points = set()
    single = True
    for J in itertools.combinations(range(2 * g + 2), g):
        t = tuple(("w", j) for j in J)
        orb = _orbit(t, G)
        points.add(orb)
        # the image is one point: the orbit is exactly the reorderings of the marks
        single &= orb == frozenset(itertools.permutations(t))
    infeasible = all(len(set(t)) <= g for t in itertools.product(range(g + 1), repeat=g))
    return RamificationReport(g, checked, iff, gen_stab, deck_fixed, len(divisors), len(points),
                              single, infeasible)


# --- invariance of the pulled-back Beltrami classes -------------------------------

# symbol (j, i, k, l) = dzbar^j on slot k (x) d/dz^i on slot l
Symbol = tuple[int, int, int, int]


def act_on_symbols(elem: CoverGroupElement, cls: dict[Symbol, int]) -> dict[Symbol, int]:
    """Holomorphic differentials are odd under the hyperelliptic involution of their slot."""
    out: dict[Symbol, int] = {}
    for (j, i, k, l), c in cls.items():
        sign = (-1) ** (elem.signs[elem.perm[k]] + elem.signs[elem.perm[l]])
        key = (j, i, elem.perm[k], elem.perm[l])
        out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def pulled_back_class(g: int, j: int, i: int) -> dict[Symbol, int]:
    """dzbar^j (x) d/dz^i summed over the diagonal slots."""
    return {(j, i, k, k): 1 for k in range(g)}


@dataclass(frozen=True)
class InvarianceReport:
    g: int
    classes: int
    N_invariant: bool
    full_group_invariant: bool
    mixed_symbol_signs_ok: bool


def invariance_report(g: int) -> InvarianceReport:
    G = full_group(g)
    classes = [pulled_back_class(g, j, i) for j in range(g) for i in range(g)]
    n_ok = all(act_on_symbols(x, c) == c for x in G if x.in_N for c in classes)
    g_ok = all(act_on_symbols(x, c) == c for x in G for c in classes)
    # a single off-diagonal symbol picks up (-1)^{s_k + s_l}: +1 when both slots flip
    mixed = True
    if g >= 2:
        both = CoverGroupElement((1, 1) + (0,) * (g - 2), tuple(range(g)))
        one = CoverGroupElement((1,) + (0,) * (g - 1), tuple(range(g)))
        sym = {(0, 0, 0, 1): 1}
        mixed = act_on_symbols(both, sym) == sym and act_on_symbols(one, sym) == {(0, 0, 0, 1): -1}
    return InvarianceReport(g, len(classes), n_ok, g_ok, mixed)


def invariance_check(g: int) -> bool:
    r = invariance_report(g)
    return r.N_invariant and r.full_group_invariant and r.mixed_symbol_signs_ok


# --- Hodge numbers -------------------------------------------------------------------


@dataclass(frozen=True)
class HodgeDiamond:
    g: int
    middle: tuple[int, ...]        # h^{g-p,p}, p = 0..g
    b2: int
    b2_flag: str | None = None

    @property
    def h_g_minus_1_1(self) -> int:
        return self.middle[1]


def hodge_numbers(g: int) -> HodgeDiamond:
    """Middle row C(g,p)^2 cross-checked against wedge enumeration; b2 = C(2g+2,2) + 1."""
    if g < 2:
        raise ValueError("hodge_numbers needs g >= 2")
    middle = tuple(math.comb(g, p) ** 2 for p in range(g + 1))
    if list(middle) != wedge_hodge_dims(g):
        raise AssertionError("formula and wedge enumeration disagree")
    b2 = math.comb(2 * g + 2, 2) + 1
    flag = None
    if g == 2:
        flag = f"formula gives b2={b2} but a K3 surface has b2=22; the formula is only claimed for g >= 3"
    return HodgeDiamond(g, middle, b2, flag)
