"""Delta lenses: axioms, composition, cells, tabulators and enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .errors import PreconditionError, SizeLimitExceeded
from .fincat import (
    FinCategory,
    FinFunctor,
    SizeGuard,
    Violation,
    dopf_lifts,
    dopf_obstruction,
    identity_functor,
    is_bijective_on_objects,
    make_category,
    validate_functor,
)
from .fincat.search import default_guard

VARIANTS = ("lens", "dopf", "sopf")


@dataclass(frozen=True, eq=False)
class DeltaLens:
    """A functor ``f`` with chosen lifts ``lifts[(a, u)]`` for ``u`` out of ``f a``."""

    f: FinFunctor
    lifts: Mapping[tuple, str]

    @property
    def dom(self) -> FinCategory:
        return self.f.dom

    @property
    def cod(self) -> FinCategory:
        return self.f.cod

    def __call__(self, a: str, u: str) -> str:
        return self.lifts[(a, u)]

    @cached_property
    def table(self) -> frozenset:
        return frozenset(self.lifts.items())

    def __eq__(self, other):
        if not isinstance(other, DeltaLens):
            return NotImplemented
        return self.f == other.f and self.table == other.table

    def __hash__(self):
        return hash((self.f, self.table))

    def __repr__(self):
        chosen = ", ".join(f"({a},{u})->{w}" for (a, u), w in self.lifts.items() if not self.cod.is_identity(u))
        return f"DeltaLens({self.dom.label} -> {self.cod.label}; {chosen})"


def lift_index(f: FinFunctor) -> list:
    """All pairs ``(a, u)`` at which a lens on ``f`` must choose a lift."""
    return [(a, u) for a in f.dom.objects for u in f.cod.out_of(f.ob(a))]


def make_lens(f: FinFunctor, lifts: Mapping) -> DeltaLens:
    """A lens whose lifts over identities default to identities."""
    table = {}
    given = dict(lifts)
    for a, u in lift_index(f):
        if (a, u) in given:
            table[(a, u)] = given[(a, u)]
        elif f.cod.is_identity(u):
            table[(a, u)] = f.dom.identity[a]
    return DeltaLens(f, table)


def identity_lens(C: FinCategory) -> DeltaLens:
    return DeltaLens(identity_functor(C), {(a, u): u for a in C.objects for u in C.out_of(a)})


def check_delta_lens(L: DeltaLens) -> list:
    """Violations of DL1-DL3 and of totality, each with its ``(a, u[, v])``."""
    f, A, B = L.f, L.dom, L.cod
    report = [Violation("functor", (str(v),)) for v in validate_functor(f)]
    if report:
        return report
    index = lift_index(f)
    expected = set(index)
    for key in L.lifts:
        if key not in expected:
            report.append(Violation("index", key, "lift given outside the index set"))
    for key in index:
        if key not in L.lifts:
            report.append(Violation("totality", key, "missing lift"))
    if report:
        return report
    for (a, u), w in L.lifts.items():
        if w not in A.morphisms or A.src(w) != a:
            report.append(Violation("DL1", (a, u), f"{w} does not start at {a}"))
        elif f(w) != u:
            report.append(Violation("DL1", (a, u), f"f({w}) = {f(w)}"))
    if report:
        return report
    for a in A.objects:
        if L(a, B.identity[f.ob(a)]) != A.identity[a]:
            report.append(Violation("DL2", (a,), f"lift of the identity is {L(a, B.identity[f.ob(a)])}"))
    for (a, u), w in L.lifts.items():
        a2 = A.tgt(w)
        for v in B.out_of(f.ob(a2)):
            if L(a, B.compose(v, u)) != A.compose(L(a2, v), w):
                report.append(Violation("DL3", (a, u, v)))
    return report


def compose_lenses(L1: DeltaLens, L2: DeltaLens) -> DeltaLens:
    """``theta(a, u) = L1(a, L2(f1 a, u))``."""
    if L1.cod != L2.dom:
        raise PreconditionError("lenses are not composable")
    f = L2.f @ L1.f
    return DeltaLens(f, {(a, u): L1(a, L2(L1.f.ob(a), u)) for a, u in lift_index(f)})


def lens_from_dopf(F: FinFunctor) -> DeltaLens:
    bad = dopf_obstruction(F)
    if bad is not None:
        a, u, found = bad
        raise PreconditionError(f"{len(found)} lifts of {u} at {a}", bad)
    return DeltaLens(F, {(a, u): dopf_lifts(F, a, u)[0] for a, u in lift_index(F)})


def opcartesian_witness(L: DeltaLens, a: str, u: str):
    """First ``(w', v, candidates)`` showing ``L(a, u)`` is not opcartesian."""
    f, A, B = L.f, L.dom, L.cod
    chosen = L(a, u)
    a1 = A.tgt(chosen)
    for w2 in A.out_of(a):
        a2 = A.tgt(w2)
        for v in B.hom(f.ob(a1), f.ob(a2)):
            if B.compose(v, u) != f(w2):
                continue
            ts = [t for t in A.hom(a1, a2) if f(t) == v and A.compose(t, chosen) == w2]
            if len(ts) != 1:
                return w2, v, ts
    return None


def is_split_opfibration(L: DeltaLens):
    """``(True, None)`` or ``(False, (a, u, w', v, candidates))``."""
    for a, u in lift_index(L.f):
        bad = opcartesian_witness(L, a, u)
        if bad is not None:
            return False, (a, u) + bad
    return True, None


def lens_cell_witness(h: FinFunctor, k: FinFunctor, L1: DeltaLens, L2: DeltaLens):
    """The first ``(a, u)`` where ``h`` fails to carry chosen lifts to chosen lifts."""
    if h.dom != L1.dom or k.dom != L1.cod or h.cod != L2.dom or k.cod != L2.cod:
        raise PreconditionError("cell legs have the wrong shape")
    if (k @ L1.f) != (L2.f @ h):
        raise PreconditionError("square does not commute")
    for (a, u), w in L1.lifts.items():
        if h(w) != L2(h.ob(a), k(u)):
            return a, u
    return None


def is_lens_cell(h: FinFunctor, k: FinFunctor, L1: DeltaLens, L2: DeltaLens) -> bool:
    return lens_cell_witness(h, k, L1, L2) is None


@dataclass(frozen=True, eq=False)
class Tabulator:
    category: FinCategory
    pi_a: FinFunctor
    pi_b: FinFunctor

    def __iter__(self):
        return iter((self.category, self.pi_a, self.pi_b))


def tabulator(L: DeltaLens) -> Tabulator:
    """The wide subcategory of chosen lifts with its two legs."""
    A = L.dom
    chosen = set(L.lifts.values())
    kept = [m for m in A.morphisms if m in chosen and not A.is_identity(m)]
    comp = {(g, f): A.comp[(g, f)] for g in kept for f in kept if A.tgt(f) == A.src(g)}
    for key, h in comp.items():
        assert h in chosen, f"chosen lifts not closed under composition at {key}"
    Lam = make_category(A.objects, [(m, A.src(m), A.tgt(m)) for m in kept], comp, name=f"Lambda({A.label})")
    pi_a = FinFunctor(Lam, A, {x: x for x in A.objects}, {m: m for m in Lam.morphisms})
    return Tabulator(Lam, pi_a, L.f @ pi_a)


def induce_into_tabulator(L: DeltaLens, h: FinFunctor, k: FinFunctor) -> FinFunctor:
    """The functor ``j: X -> Lambda`` with ``pi_a . j = h`` for a cell from ``1_X``."""
    if h.dom != k.dom:
        raise PreconditionError("h and k need a common domain")
    bad = lens_cell_witness(h, k, identity_lens(h.dom), L)
    if bad is not None:
        raise PreconditionError("not a cell into the lens", bad)
    Lam = tabulator(L).category
    X = h.dom
    return FinFunctor(X, Lam, dict(h.obj_map), {u: L(h.ob(X.src(u)), k(u)) for u in X.morphisms})


def lens_from_diagram(psi: FinFunctor, f: FinFunctor) -> DeltaLens:
    """The lens whose tabulator is ``psi`` when ``psi`` is boo and ``f psi`` a dopf."""
    if psi.cod != f.dom:
        raise PreconditionError("psi and f are not composable")
    if not is_bijective_on_objects(psi):
        raise PreconditionError("psi is not bijective on objects")
    g = f @ psi
    bad = dopf_obstruction(g)
    if bad is not None:
        raise PreconditionError("f . psi is not a discrete opfibration", bad)
    back = {a: x for x, a in psi.obj_map.items()}
    return DeltaLens(f, {(a, u): psi(dopf_lifts(g, back[a], u)[0]) for a, u in lift_index(f)})


@dataclass(frozen=True, eq=False)
class LensStructureCount:
    functor: FinFunctor
    count: int
    structures: list | None = field(default=None)

    def tables(self) -> set:
        return {L.table for L in self.structures or ()}


def enumerate_lens_structures(F: FinFunctor, size_guard: SizeGuard | None = None) -> LensStructureCount:
    """Every DL1-DL3 lift table on ``F`` by backtracking, in a fixed order."""
    guard = size_guard or default_guard()
    A, B = F.dom, F.cod
    fixed = {(a, B.identity[F.ob(a)]): A.identity[a] for a in A.objects}
    free = [(a, u) for a, u in lift_index(F) if not B.is_identity(u)]
    options = {key: [w for w in A.out_of(key[0]) if F(w) == key[1]] for key in free}
    table = dict(fixed)
    found = []
    budget = [guard.max_steps]

    def dl3_ok():
        for (a, u), w in table.items():
            a2 = A.tgt(w)
            for v in B.out_of(F.ob(a2)):
                second = table.get((a2, v))
                whole = table.get((a, B.compose(v, u)))
                if second is not None and whole is not None and whole != A.compose(second, w):
                    return False
        return True

    def walk(i):
        if i == len(free):
            found.append(DeltaLens(F, {key: table[key] for key in lift_index(F)}))
            return
        key = free[i]
        for w in options[key]:
            budget[0] -= 1
            if budget[0] < 0:
                raise SizeLimitExceeded(f"lens search on {A.label} -> {B.label} exceeded the guard")
            table[key] = w
            if dl3_ok():
                walk(i + 1)
            del table[key]

    walk(0)
    return LensStructureCount(F, len(found), found)


def enumerate_generated_structures(
    F: FinFunctor, variant: str = "lens", size_guard: SizeGuard | None = None
) -> LensStructureCount:
    """Lifting operations against the generating squares, found by generate-and-test.

    Every DL1 choice ``phi`` is paired with the lifts ``gamma`` against
    ``2 -> 3`` that cell (a) allows, and kept when the remaining cells are
    compatible; ``dopf`` adds cell (d) and ``sopf`` adds the lifts against
    the vertical ``2 -> 3`` picking the outer arrow (cells (e) and (f)).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    guard = size_guard or default_guard()
    A, B = F.dom, F.cod
    index = lift_index(F)
    choices = [[w for w in A.out_of(a) if F(w) == u] for a, u in index]
    size = 1
    for c in choices:
        size *= len(c)
    if size > guard.max_steps:
        raise SizeLimitExceeded(f"{size} candidate lift tables on {A.label} -> {B.label}")

    squares_j = [(w, v) for w in A.morphisms for v in B.out_of(F.ob(A.tgt(w)))]
    paths = [(a, u, v) for a in A.objects for u in B.out_of(F.ob(a)) for v in B.out_of(B.tgt(u))]
    found = []
    for values in itertools.product(*choices):
        phi = dict(zip(index, values))
        # cell (a): the lift of a square over 2 -> 3 is the pair (w, phi(a', v))
        gamma = {(w, v): (w, phi[(A.tgt(w), v)]) for w, v in squares_j}
        # cell (b): lifting against the vertical identity on 1 returns the corner
        if any(phi[(a, B.identity[F.ob(a)])] != A.identity[a] for a in A.objects):
            continue
        # cell (c): the composite vertical 1 -> 3 restricts along d1 to phi
        if not all(_composite(A, gamma[(phi[(a, u)], v)]) == phi[(a, B.compose(v, u))] for a, u, v in paths):
            continue
        if variant == "dopf" and any(phi[(A.src(w), F(w))] != w for w in A.morphisms):
            continue
        if variant == "sopf" and not _outer_lifts_unique(F, phi):
            continue
        found.append(DeltaLens(F, phi))
    return LensStructureCount(F, len(found), found)


def _composite(A: FinCategory, path: tuple) -> str:
    first, second = path
    return A.compose(second, first)


def _outer_lifts_unique(F: FinFunctor, phi: dict) -> bool:
    """Lifts against ``2 -> 3`` (outer arrow) exist, start with phi and are unique."""
    A, B = F.dom, F.cod
    for w in A.morphisms:
        a, a2 = A.morphisms[w]
        for u in B.out_of(F.ob(a)):
            for v in B.hom(B.tgt(u), F.ob(a2)):
                if B.compose(v, u) != F(w):
                    continue
                first = phi[(a, u)]  # cell (e)
                thetas = [t for t in A.hom(A.tgt(first), a2) if F(t) == v and A.compose(t, first) == w]
                if len(thetas) != 1:  # cell (f)
                    return False
    return True
