"""Functor classes and the (initial, discrete opfibration) factorisation."""

from __future__ import annotations

from dataclasses import dataclass, fields

from ..errors import NonUnique, NotFound, PreconditionError
from .category import FinCategory, FinFunctor, identity_name, make_category
from .constructions import comma, connected_components, is_fully_faithful, pair
from .search import ORACLE_GUARD, SizeGuard, enumerate_functors


@dataclass(frozen=True)
class FunctorClass:
    fully_faithful: bool
    bijective_on_objects: bool
    identity_on_objects: bool
    initial: bool
    discrete_opfibration: bool
    isomorphism: bool

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def is_bijective_on_objects(F: FinFunctor) -> bool:
    images = set(F.obj_map.values())
    return len(images) == len(F.dom.objects) == len(F.cod.objects)


def is_identity_on_objects(F: FinFunctor) -> bool:
    return set(F.dom.objects) == set(F.cod.objects) and all(F.ob(x) == x for x in F.dom.objects)


def initial_obstruction(F: FinFunctor):
    """The first codomain object whose comma category is empty or disconnected."""
    for b in F.cod.objects:
        if len(connected_components(comma(F, b).category)) != 1:
            return b
    return None


def is_initial(F: FinFunctor) -> bool:
    return initial_obstruction(F) is None


def dopf_lifts(F: FinFunctor, a: str, u: str) -> list:
    """All morphisms out of ``a`` sent to ``u``."""
    return [w for w in F.dom.out_of(a) if F(w) == u]


def dopf_obstruction(F: FinFunctor):
    """The first ``(a, u)`` without exactly one lift, with the lifts found."""
    for a in F.dom.objects:
        for u in F.cod.out_of(F.ob(a)):
            lifts = dopf_lifts(F, a, u)
            if len(lifts) != 1:
                return a, u, lifts
    return None


def is_discrete_opfibration(F: FinFunctor) -> bool:
    return dopf_obstruction(F) is None


def classify_functor(F: FinFunctor) -> FunctorClass:
    ff = is_fully_faithful(F)
    boo = is_bijective_on_objects(F)
    return FunctorClass(
        fully_faithful=ff,
        bijective_on_objects=boo,
        identity_on_objects=is_identity_on_objects(F),
        initial=is_initial(F),
        discrete_opfibration=is_discrete_opfibration(F),
        isomorphism=ff and boo,
    )


def boo_lift(g: FinFunctor, psi: FinFunctor) -> FinFunctor:
    """The unique ``h`` with ``psi . h = g`` for a discrete domain and boo ``psi``."""
    if not g.dom.is_discrete:
        raise PreconditionError("domain of g is not discrete", g.dom.nonidentity[0])
    if g.cod != psi.cod:
        raise PreconditionError("g and psi must share their codomain")
    if not is_bijective_on_objects(psi):
        raise PreconditionError("psi is not bijective on objects")
    back = {y: x for x, y in psi.obj_map.items()}
    A = psi.dom
    obj = {x: back[g.ob(x)] for x in g.dom.objects}
    return FinFunctor(g.dom, A, obj, {g.dom.identity[x]: A.identity[obj[x]] for x in g.dom.objects})


def find_fillers(F, G, top, bottom, size_guard: SizeGuard | None = None, limit: int | None = None) -> list:
    """Brute-force all diagonals ``l`` with ``l . F = top`` and ``G . l = bottom``."""
    B, C = F.cod, G.dom
    objects = {b: [c for c in C.objects if G.ob(c) == bottom.ob(b)] for b in B.objects}
    for a in F.dom.objects:
        b = F.ob(a)
        objects[b] = [c for c in objects[b] if c == top.ob(a)]
    morphisms = {v: [m for m in C.morphisms if G(m) == bottom(v)] for v in B.morphisms}
    for w in F.dom.morphisms:
        v = F(w)
        morphisms[v] = [m for m in morphisms[v] if m == top(w)]
    found = []
    for ell in enumerate_functors(B, C, size_guard or ORACLE_GUARD, objects=objects, morphisms=morphisms):
        found.append(ell)
        if limit is not None and len(found) >= limit:
            break
    return found


def orthogonal_lift(F: FinFunctor, G: FinFunctor, top: FinFunctor, bottom: FinFunctor) -> FinFunctor:
    """The unique diagonal of a square from an initial functor to a dopf."""
    if top.dom != F.dom or bottom.dom != F.cod or top.cod != G.dom or bottom.cod != G.cod:
        raise PreconditionError("square legs have the wrong shape")
    if (G @ top) != (bottom @ F):
        raise PreconditionError("square does not commute")
    if not (is_initial(F) and is_discrete_opfibration(G)):
        fillers = find_fillers(F, G, top, bottom, limit=2)
        if not fillers:
            raise NotFound("no diagonal filler exists")
        if len(fillers) > 1:
            raise NonUnique("diagonal filler is not unique", tuple(fillers))
        return fillers[0]

    A, B, C = F.dom, F.cod, G.dom

    def lift(c, v):
        (w,) = dopf_lifts(G, c, v)
        return w

    obj = {}
    for b in B.objects:
        a, u = next((a, u) for a in A.objects for u in B.hom(F.ob(a), b))
        obj[b] = C.tgt(lift(top.ob(a), bottom(u)))
    mor = {}
    for v, (b, b2) in B.morphisms.items():
        m = lift(obj[b], bottom(v))
        assert C.tgt(m) == obj[b2], "comma connectivity violated"
        mor[v] = m
    ell = FinFunctor(B, C, obj, mor)
    assert (ell @ F) == top and (G @ ell) == bottom
    return ell


@dataclass(frozen=True, eq=False)
class ComprehensiveFactorization:
    initial_part: FinFunctor
    middle: FinCategory
    dopf_part: FinFunctor

    def __iter__(self):
        return iter((self.initial_part, self.middle, self.dopf_part))


def comprehensive_factorize(f: FinFunctor) -> ComprehensiveFactorization:
    """Factor ``f`` through the category of elements of ``b -> pi0(f/b)``."""
    A, B = f.dom, f.cod
    component = {}  # (a, u) -> label of its component in f/b
    elements = {}  # (b, label) -> a representative (a, u)
    for b in B.objects:
        cc = comma(f, b)
        for group in connected_components(cc.category):
            label = group[0]
            elements[(b, label)] = cc.points[label]
            for x in group:
                component[cc.points[x]] = label

    objects = [pair(b, c) for b, c in elements]
    morphisms = []
    over = {}  # morphism id of the middle -> morphism of B
    action = {}  # (v, c) -> target component
    for (b, c), (a, u) in elements.items():
        for v in B.out_of(b):
            c2 = component[(a, B.compose(v, u))]
            action[(v, c)] = c2
            if not B.is_identity(v):
                morphisms.append((pair(v, c), pair(b, c), pair(B.tgt(v), c2)))
                over[pair(v, c)] = v
    comp = {}
    for (v, c), c2 in action.items():
        if B.is_identity(v):
            continue
        for v2 in B.out_of(B.tgt(v)):
            if B.is_identity(v2):
                continue
            vv = B.compose(v2, v)
            comp[(pair(v2, c2), pair(v, c))] = identity_name(pair(B.src(v), c)) if B.is_identity(vv) else pair(vv, c)
    M = make_category(objects, morphisms, comp, name=f"el({A.label}->{B.label})")

    def element_arrow(v, c):
        return M.identity[pair(B.src(v), c)] if B.is_identity(v) else pair(v, c)

    def home(a):
        return component[(a, B.identity[f.ob(a)])]

    initial_part = FinFunctor(
        A,
        M,
        {a: pair(f.ob(a), home(a)) for a in A.objects},
        {w: element_arrow(f(w), home(A.src(w))) for w in A.morphisms},
    )
    dopf_obj = {pair(b, c): b for b, c in elements}
    dopf_mor = {m: over[m] if m in over else B.identity[dopf_obj[M.src(m)]] for m in M.morphisms}
    dopf_part = FinFunctor(M, B, dopf_obj, dopf_mor)
    return ComprehensiveFactorization(initial_part, M, dopf_part)
