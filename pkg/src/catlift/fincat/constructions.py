"""Limits, colimits and other constructions on finite categories."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConstructionError, PreconditionError
from .category import (
    FinCategory,
    FinFunctor,
    discrete,
    identity_functor,
    identity_name,
    make_category,
)


def pair(a: str, b: str) -> str:
    return f"({a}|{b})"


def triple(u: str, w: str, v: str) -> str:
    return f"[{u};{w};{v}]"


def discrete_of(A: FinCategory):
    """The discrete category on A's objects and its inclusion ``iota``."""
    if A.is_discrete:
        return A, identity_functor(A)
    A0 = discrete(A.objects, name=f"{A.label}_0")
    iota = FinFunctor(A0, A, {x: x for x in A.objects}, {i: i for i in A0.morphisms})
    return A0, iota


def connected_components(C: FinCategory) -> list:
    """Connected components as lists of objects, in order of first object."""
    parent = {x: x for x in C.objects}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in C.nonidentity:
        s, t = C.morphisms[m]
        rs, rt = root(s), root(t)
        if rs != rt:
            parent[rt] = rs
    groups: dict = {}
    for x in C.objects:
        groups.setdefault(root(x), []).append(x)
    return list(groups.values())


@dataclass(frozen=True, eq=False)
class CommaCategory:
    """``F/b`` together with the decoding of its identifiers."""

    category: FinCategory
    points: dict  # object id -> (a, u)
    arrows: dict  # morphism id -> w


def comma(F: FinFunctor, b: str) -> CommaCategory:
    A, B = F.dom, F.cod
    if b not in B.objects:
        raise PreconditionError(f"{b!r} is not an object of the codomain", b)
    points = {}
    for a in A.objects:
        for u in B.hom(F.ob(a), b):
            points[pair(a, u)] = (a, u)
    morphisms = []
    arrows = {}
    comp = {}
    for x, (a, u) in points.items():
        for w in A.out_of(a):
            if A.is_identity(w):
                continue
            a2 = A.tgt(w)
            for u2 in B.hom(F.ob(a2), b):
                if B.compose(u2, F(w)) == u:
                    name = f"({w}|{u}|{u2})"
                    morphisms.append((name, x, pair(a2, u2)))
                    arrows[name] = w
    by_name = {name: (s, t) for name, s, t in morphisms}
    for g, (s2, t2) in by_name.items():
        for f, (s1, t1) in by_name.items():
            if t1 != s2:
                continue
            w = A.compose(arrows[g], arrows[f])
            if s1 == t2 and A.is_identity(w):
                comp[(g, f)] = identity_name(s1)
            else:
                comp[(g, f)] = f"({w}|{points[s1][1]}|{points[t2][1]})"
    C = make_category(points, morphisms, comp, name=f"{A.label}/{b}")
    return CommaCategory(C, points, arrows)


def comma_category(F: FinFunctor, b: str) -> FinCategory:
    """The comma category ``F/b`` with objects ``(a|u)`` for ``u: Fa -> b``."""
    return comma(F, b).category


@dataclass(frozen=True, eq=False)
class Pullback:
    category: FinCategory
    proj_a: FinFunctor
    proj_b: FinFunctor

    def __iter__(self):
        return iter((self.category, self.proj_a, self.proj_b))

    def arrow(self, m: str, n: str) -> str:
        """Identifier of the pair ``(m, n)`` of morphisms."""
        A, B = self.proj_a.cod, self.proj_b.cod
        if A.is_identity(m) and B.is_identity(n):
            return identity_name(pair(A.src(m), B.src(n)))
        return pair(m, n)


def pullback(F: FinFunctor, G: FinFunctor) -> Pullback:
    """The pullback of ``F: A -> C`` and ``G: B -> C`` with objects ``(a|b)``."""
    if F.cod != G.cod:
        raise PreconditionError("pullback needs a common codomain")
    A, B = F.dom, G.dom
    ends = {pair(a, b): (a, b) for a in A.objects for b in B.objects if F.ob(a) == G.ob(b)}
    name_of = {}
    decode = {}
    morphisms = []
    for m, (sa, ta) in A.morphisms.items():
        for n, (sb, tb) in B.morphisms.items():
            if F(m) != G(n) or F.ob(sa) != G.ob(sb):
                continue
            s, t = pair(sa, sb), pair(ta, tb)
            if A.is_identity(m) and B.is_identity(n):
                name = identity_name(s)
            else:
                name = pair(m, n)
                morphisms.append((name, s, t))
            name_of[(m, n)] = name
            decode[name] = (m, n)
    comp = {}
    for g, _, _ in morphisms:
        for f, _, _ in morphisms:
            (gm, gn), (fm, fn) = decode[g], decode[f]
            if A.tgt(fm) == A.src(gm) and B.tgt(fn) == B.src(gn):
                comp[(g, f)] = name_of[(A.compose(gm, fm), B.compose(gn, fn))]
    P = make_category(ends, morphisms, comp, name=f"{A.label}x{B.label}")
    proj_a = FinFunctor(P, A, {x: a for x, (a, _) in ends.items()}, {x: decode[x][0] for x in P.morphisms})
    proj_b = FinFunctor(P, B, {x: b for x, (_, b) in ends.items()}, {x: decode[x][1] for x in P.morphisms})
    return Pullback(P, proj_a, proj_b)


def is_fully_faithful(F: FinFunctor) -> bool:
    A, B = F.dom, F.cod
    for a in A.objects:
        for a2 in A.objects:
            images = [F(m) for m in A.hom(a, a2)]
            if len(set(images)) != len(images) or len(images) != len(B.hom(F.ob(a), F.ob(a2))):
                return False
    return True


@dataclass(frozen=True, eq=False)
class Pushout:
    """The pushout of a fully faithful ``f: A0 -> X`` along ``iota: A0 -> A``.

    ``triples`` decodes every formal morphism ``[u;w;v]`` of the second sort.
    """

    category: FinCategory
    f_prime: FinFunctor
    pi: FinFunctor
    f: FinFunctor
    iota: FinFunctor
    triples: dict

    def __iter__(self):
        return iter((self.category, self.f_prime, self.pi))

    def induced(self, P: FinFunctor, Q: FinFunctor) -> FinFunctor:
        """The mediating functor for a cocone ``P: X -> C``, ``Q: A -> C``."""
        if P.dom != self.pi.dom or Q.dom != self.f_prime.dom or P.cod != Q.cod:
            raise PreconditionError("cocone legs have the wrong shape")
        if (P @ self.f) != (Q @ self.iota):
            raise PreconditionError("cocone does not commute")
        C = P.cod
        mor = {}
        for m in self.category.morphisms:
            if m in self.triples:
                u, w, v = self.triples[m]
                mor[m] = C.compose(P(v), Q(w), P(u))
            else:
                mor[m] = P(m)
        return FinFunctor(self.category, C, dict(P.obj_map), mor)


def pushout_along_discrete(f: FinFunctor, iota: FinFunctor) -> Pushout:
    A0, X, A = f.dom, f.cod, iota.cod
    if iota.dom != A0:
        raise PreconditionError("f and iota must share their domain")
    if not A0.is_discrete:
        raise PreconditionError("the common domain is not discrete", A0.nonidentity[0])
    if set(A0.objects) != set(A.objects) or any(iota.ob(a) != a for a in A0.objects):
        raise PreconditionError("iota is not identity-on-objects")
    if not is_fully_faithful(f):
        raise PreconditionError("f is not fully faithful")

    triples = {}
    morphisms = [(m, s, t) for m, (s, t) in X.morphisms.items() if not X.is_identity(m)]
    for w in A.nonidentity:
        a, a2 = A.morphisms[w]
        for u in X.into(f.ob(a)):
            for v in X.out_of(f.ob(a2)):
                name = triple(u, w, v)
                if name in X.morphisms or name in triples:
                    raise ConstructionError(f"identifier clash on {name!r}")
                triples[name] = (u, w, v)
                morphisms.append((name, X.src(u), X.tgt(v)))
    sorts = {name: triples.get(name) for name, _, _ in morphisms}
    by_value = {value: name for name, value in triples.items()}

    def make(u, w, v):
        return by_value[(u, w, v)]

    def compose(g, h):
        tg, th = sorts.get(g), sorts.get(h)
        if tg is None and th is None:
            return X.compose(g, h)
        if tg is None:
            u, w, v = th
            return make(u, w, X.compose(g, v))
        if th is None:
            u, w, v = tg
            return make(X.compose(u, h), w, v)
        (u2, w2, v2), (u1, w1, v1) = tg, th
        middle = X.compose(u2, v1)
        if not X.is_identity(middle):
            raise ConstructionError(f"middle composite {middle!r} of {g!r} and {h!r} is not an identity")
        w = A.compose(w2, w1)
        if A.is_identity(w):
            return X.compose(v2, u1)
        return make(u1, w, v2)

    comp = {}
    ends = {name: (s, t) for name, s, t in morphisms}
    for g, (sg, _) in ends.items():
        for h, (_, th) in ends.items():
            if th == sg:
                comp[(g, h)] = compose(g, h)
    B = make_category(X.objects, morphisms, comp, name=f"{X.label}+{A.label}")

    f_prime = FinFunctor(
        A,
        B,
        {a: f.ob(a) for a in A.objects},
        {
            w: B.identity[f.ob(A.src(w))]
            if A.is_identity(w)
            else make(X.identity[f.ob(A.src(w))], w, X.identity[f.ob(A.tgt(w))])
            for w in A.morphisms
        },
    )
    pi = FinFunctor(X, B, {x: x for x in X.objects}, {m: m for m in X.morphisms})
    return Pushout(B, f_prime, pi, f, iota, triples)
