"""The factorisation of a functor as a twisted coreflection followed by a delta lens.

Everything here follows one pattern: build the middle category ``Ef`` from
the coslices of ``f``, then use the lifting operation between twisted
coreflections and delta lenses to produce the rest of the structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .coreflections import (
    SplitCoreflection,
    TwistedWitness,
    check_split_coreflection,
    coref_cell_witness,
    ensure_twisted,
    fibre_sum,
    is_twisted,
    make_coreflection,
    split_to_twisted,
)
from .errors import PreconditionError
from .fincat import (
    FinCategory,
    FinFunctor,
    Violation,
    boo_lift,
    discrete_of,
    dopf_obstruction,
    identity_functor,
    inverse_functor,
    is_bijective_on_objects,
    make_category,
    orthogonal_lift,
    validate_category,
    validate_functor,
)
from .fincat.constructions import pair
from .lenses import DeltaLens, check_delta_lens, lens_cell_witness, tabulator

STRATEGIES = ("formula", "universal", "both")


def e1_name(a: str, u: str, v: str) -> str:
    return f"E1({a}|{u}|{v})"


def e2_name(a1: str, u1: str, v: str, w: str, u2: str) -> str:
    return f"E2({a1}|{u1}|{v}|{w}|{u2})"


@dataclass(frozen=True, eq=False)
class CosliceSum:
    """The sum of the coslices ``fa/B`` for a functor out of a discrete category."""

    category: FinCategory
    If: FinFunctor
    Sf0: FinFunctor
    Tf0: FinFunctor
    coref: SplitCoreflection

    def __iter__(self):
        return iter((self.category, self.If, self.Sf0, self.Tf0))


def _coslice_parts(fp: FinFunctor):
    """Objects, first-sort morphisms and their composition for ``fp``."""
    A0, B = fp.dom, fp.cod
    points = {pair(a, u): (a, u) for a in A0.objects for u in B.out_of(fp.ob(a))}
    e1 = {}
    for x, (a, u) in points.items():
        for v in B.out_of(B.tgt(u)):
            if not B.is_identity(v):
                e1[e1_name(a, u, v)] = (a, u, v)
    return points, e1


def _e1(B: FinCategory, a: str, u: str, v: str) -> str:
    return "1_" + pair(a, u) if B.is_identity(v) else e1_name(a, u, v)


def coslice_sum(fp: FinFunctor) -> CosliceSum:
    A0, B = fp.dom, fp.cod
    if not A0.is_discrete:
        raise PreconditionError("domain is not discrete", A0.nonidentity[0])
    points, e1 = _coslice_parts(fp)
    morphisms = [(m, pair(a, u), pair(a, B.compose(v, u))) for m, (a, u, v) in e1.items()]
    comp = {}
    for g, (a, u2, v2) in e1.items():
        for f, (a1, u1, v1) in e1.items():
            if a1 == a and B.compose(v1, u1) == u2:
                comp[(g, f)] = _e1(B, a, u1, B.compose(v2, v1))
    Sigma = make_category(points, morphisms, comp, name=f"Sigma({fp.cod.label})")
    If = FinFunctor(
        A0,
        Sigma,
        {a: pair(a, B.identity[fp.ob(a)]) for a in A0.objects},
        {A0.identity[a]: "1_" + pair(a, B.identity[fp.ob(a)]) for a in A0.objects},
    )
    Sf0 = FinFunctor(
        Sigma,
        A0,
        {x: a for x, (a, _) in points.items()},
        {m: A0.identity[points[Sigma.src(m)][0]] for m in Sigma.morphisms},
    )
    Tf0 = FinFunctor(
        Sigma,
        B,
        {x: B.tgt(u) for x, (_, u) in points.items()},
        {m: e1[m][2] if m in e1 else B.identity[B.tgt(points[Sigma.src(m)][1])] for m in Sigma.morphisms},
    )
    counit = {x: _e1(B, a, B.identity[fp.ob(a)], u) for x, (a, u) in points.items()}
    return CosliceSum(Sigma, If, Sf0, Tf0, make_coreflection(If, Sf0, counit, TwistedWitness({})))


@dataclass(frozen=True, eq=False)
class EfFactorization:
    """``f = Rf . Lf`` through ``Ef`` with its coreflection and lens structures."""

    f: FinFunctor
    Ef: FinCategory
    Lf: FinFunctor
    Rf: FinFunctor
    Sf: FinFunctor
    PhiF: FinFunctor
    coref: SplitCoreflection
    lens: DeltaLens
    sigma: CosliceSum
    points: dict  # object id -> (a, u)
    e1: dict  # first-sort morphism id -> (a, u1, v)
    e2: dict  # second-sort morphism id -> (a1, u1, v, w, u2)

    def obj(self, a: str, u: str) -> str:
        return pair(a, u)

    def first(self, a: str, u: str, v: str) -> str:
        """The first-sort morphism ``v: (a, u) -> (a, v u)``."""
        return _e1(self.f.cod, a, u, v)

    def induced(self, P: FinFunctor, Q: FinFunctor) -> FinFunctor:
        """The functor out of ``Ef`` determined by ``P`` on coslices and ``Q`` on ``A``.

        ``Ef`` is the pushout of ``If`` along ``iota_A``; second-sort
        morphisms split as first-sort, then ``Lf w``, then first-sort.
        """
        if P.dom != self.sigma.category or Q.dom != self.f.dom or P.cod != Q.cod:
            raise PreconditionError("cocone legs have the wrong shape")
        _, iota = discrete_of(self.f.dom)
        if (P @ self.sigma.If) != (Q @ iota):
            raise PreconditionError("cocone does not commute")
        C, B = P.cod, self.f.cod
        mor = {}
        for m in self.Ef.morphisms:
            if m in self.e2:
                a1, u1, v, w, u2 = self.e2[m]
                a2 = self.f.dom.tgt(w)
                before = self.first(a1, u1, v)
                after = self.first(a2, B.identity[self.f.ob(a2)], u2)
                mor[m] = C.compose(P(after), Q(w), P(before))
            else:
                mor[m] = P(m)
        return FinFunctor(self.Ef, C, dict(P.obj_map), mor)

    @cached_property
    def delta(self) -> FinFunctor:
        """The comultiplication ``Ef -> E(Lf)``."""
        FL = factorize(self.Lf)
        return lift(self.coref, FL.lens, FL.Lf, identity_functor(self.Ef), strategy="formula").j

    @cached_property
    def mu(self) -> FinFunctor:
        """The multiplication ``E(Rf) -> Ef``."""
        FR = factorize(self.Rf)
        return lift(FR.coref, self.lens, identity_functor(self.Ef), FR.Rf, strategy="formula").j


def factorize(f: FinFunctor) -> EfFactorization:
    return _factorize(f)


@lru_cache(maxsize=4096)
def _factorize(f: FinFunctor) -> EfFactorization:
    A, B = f.dom, f.cod
    A0, iota = discrete_of(A)
    sigma = coslice_sum(f @ iota)
    points, e1 = _coslice_parts(f @ iota)

    e2 = {}
    for (a1, u1) in points.values():
        for v in B.hom(B.tgt(u1), f.ob(a1)):
            if not B.is_identity(B.compose(v, u1)):
                continue
            for w in A.out_of(a1):
                if A.is_identity(w):
                    continue
                a2 = A.tgt(w)
                for u2 in B.out_of(f.ob(a2)):
                    e2[e2_name(a1, u1, v, w, u2)] = (a1, u1, v, w, u2)
    by_e2 = {value: name for name, value in e2.items()}

    def ends(m):
        if m in e1:
            a, u, v = e1[m]
            return pair(a, u), pair(a, B.compose(v, u))
        a1, u1, _, w, u2 = e2[m]
        return pair(a1, u1), pair(A.tgt(w), u2)

    def compose(g, h):
        if g in e1 and h in e1:
            a, u1, v1 = e1[h]
            return _e1(B, a, u1, B.compose(e1[g][2], v1))
        if g in e1:
            a1, u1, v, w, u2 = e2[h]
            return by_e2[(a1, u1, v, w, B.compose(e1[g][2], u2))]
        if h in e1:
            a1, u0, v0 = e1[h]
            _, _, v, w, u2 = e2[g]
            return by_e2[(a1, u0, B.compose(v, v0), w, u2)]
        a1, u1, v1, w1, u2 = e2[h]
        _, mid, v2, w2, u3 = e2[g]
        assert B.is_identity(B.compose(v2, mid)), "second-sort composite without a retraction"
        w = A.compose(w2, w1)
        if A.is_identity(w):
            return _e1(B, a1, u1, B.compose(u3, v1))
        return by_e2[(a1, u1, v1, w, u3)]

    names = list(e1) + list(e2)
    endpoints = {m: ends(m) for m in names}
    comp = {}
    for g in names:
        for h in names:
            if endpoints[h][1] == endpoints[g][0]:
                comp[(g, h)] = compose(g, h)
    Ef = make_category(points, [(m,) + endpoints[m] for m in names], comp, name=f"E({A.label}->{B.label})")

    def unit(a):
        return pair(a, B.identity[f.ob(a)])

    Lf = FinFunctor(
        A,
        Ef,
        {a: unit(a) for a in A.objects},
        {
            w: "1_" + unit(A.src(w))
            if A.is_identity(w)
            else by_e2[(A.src(w), B.identity[f.ob(A.src(w))], B.identity[f.ob(A.src(w))], w, B.identity[f.ob(A.tgt(w))])]
            for w in A.morphisms
        },
    )

    def r_image(m):
        if m in e1:
            return e1[m][2]
        if m in e2:
            _, _, v, w, u2 = e2[m]
            return B.compose(u2, f(w), v)
        return B.identity[B.tgt(points[Ef.src(m)][1])]

    Rf = FinFunctor(Ef, B, {x: B.tgt(u) for x, (_, u) in points.items()}, {m: r_image(m) for m in Ef.morphisms})
    Sf = FinFunctor(
        Ef,
        A,
        {x: a for x, (a, _) in points.items()},
        {m: e2[m][3] if m in e2 else A.identity[points[Ef.src(m)][0]] for m in Ef.morphisms},
    )
    PhiF = FinFunctor(sigma.category, Ef, {x: x for x in points}, {m: m for m in sigma.category.morphisms})
    counit = {x: _e1(B, a, B.identity[f.ob(a)], u) for x, (a, u) in points.items()}
    qbar = {m: _e1(B, a1, u1, v) for m, (a1, u1, v, _, _) in e2.items()}
    coref = make_coreflection(Lf, Sf, counit, TwistedWitness(qbar))
    lens = DeltaLens(
        Rf,
        {(x, v): _e1(B, a, u, v) for x, (a, u) in points.items() for v in B.out_of(B.tgt(u))},
    )
    return EfFactorization(f, Ef, Lf, Rf, Sf, PhiF, coref, lens, sigma, points, e1, e2)


def check_factorization(Ff: EfFactorization) -> list:
    """Every broken invariant of ``Ff``, each with a witness."""
    f, Ef, B = Ff.f, Ff.Ef, Ff.f.cod
    report = list(validate_category(Ef))
    for label, F in (("Lf", Ff.Lf), ("Rf", Ff.Rf), ("Sf", Ff.Sf), ("PhiF", Ff.PhiF)):
        report += [Violation(f"{label}: {v.law}", v.witness, v.message) for v in validate_functor(F)]
    if report:
        return report
    if Ff.Rf @ Ff.Lf != f:
        bad = next(m for m in f.dom.morphisms if Ff.Rf(Ff.Lf(m)) != f(m))
        report.append(Violation("Rf Lf = f", (bad,)))
    if Ff.coref.f != Ff.Lf or Ff.lens.f != Ff.Rf:
        report.append(Violation("structure legs", (), "coreflection or lens sits on the wrong functor"))
        return report
    report += check_split_coreflection(Ff.coref)
    ok, why = is_twisted(Ff.coref)
    if not ok:
        report.append(Violation("twisted", (why.morphism,)))
    report += check_delta_lens(Ff.lens)
    for x in Ef.objects:
        a, u = Ff.points.get(x, (None, None))
        if a not in f.dom.objects or u not in B.morphisms or B.src(u) != f.ob(a) or x != pair(a, u):
            report.append(Violation("objects are pairs", (x,)))
    if not is_bijective_on_objects(Ff.PhiF):
        report.append(Violation("PhiF bijective on objects", ()))
    witness = dopf_obstruction(Ff.Rf @ Ff.PhiF)
    if witness is not None:
        report.append(Violation("Rf PhiF discrete opfibration", tuple(witness)))
    for m, (a, u, v) in Ff.e1.items():
        if Ff.points[Ef.src(m)][0] != Ff.points[Ef.tgt(m)][0]:
            report.append(Violation("first sort keeps the A component", (m,)))
    for (x, v), m in Ff.lens.lifts.items():
        if m not in Ff.e1 and not Ef.is_identity(m):
            report.append(Violation("lens lifts are first sort", (x, v, m)))
    for x, (a, u) in Ff.points.items():
        if Ff.coref.counit(x) != Ff.first(a, B.identity[f.ob(a)], u):
            report.append(Violation("counit is first sort", (x,)))
    return report


@dataclass(frozen=True, eq=False)
class LiftResult:
    j: FinFunctor
    strategy: str
    intermediates: tuple | None = None


def _check_square(f: FinFunctor, g: FinFunctor, h: FinFunctor, k: FinFunctor) -> None:
    if h.dom != f.dom or k.dom != f.cod or h.cod != g.dom or k.cod != g.cod:
        raise PreconditionError("square legs have the wrong shape")
    if (k @ f) != (g @ h):
        raise PreconditionError("square does not commute")


def _lift_formula(T: SplitCoreflection, L: DeltaLens, h: FinFunctor, k: FinFunctor) -> FinFunctor:
    f, q = T.f, T.q
    A, B, C = f.dom, f.cod, L.dom
    qbar = T.witness.qbar
    obj = {x: C.tgt(L(h.ob(q.ob(x)), k(T.counit(x)))) for x in B.objects}
    mor = {}
    for u, (x, y) in B.morphisms.items():
        if A.is_identity(q(u)):
            mor[u] = L(obj[x], k(u))
        else:
            mor[u] = C.compose(L(h.ob(q.ob(y)), k(T.counit(y))), h(q(u)), L(obj[x], k(qbar[u])))
    return FinFunctor(B, C, obj, mor)


def _lift_universal(T: SplitCoreflection, L: DeltaLens, h: FinFunctor, k: FinFunctor):
    fib = fibre_sum(T)
    X = fib.cod
    included = FinFunctor(X, T.cod, {x: x for x in X.objects}, {m: m for m in X.morphisms})
    _, iota = discrete_of(T.dom)
    tab = tabulator(L)
    h_hat = boo_lift(h @ iota, tab.pi_a)
    ell = orthogonal_lift(fib.f, tab.pi_b, h_hat, k @ included)
    glued = split_to_twisted(T)
    assert glued.is_iso, "twisted coreflection is not a pushout"
    j = glued.pushout.induced(tab.pi_a @ ell, h) @ inverse_functor(glued.comparison)
    return j, (h_hat, ell)


def lift(
    T: SplitCoreflection, L: DeltaLens, h: FinFunctor, k: FinFunctor, strategy: str = "formula"
) -> LiftResult:
    """The chosen diagonal ``j`` of a square from a twisted coreflection to a lens."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    T = ensure_twisted(T)
    _check_square(T.f, L.f, h, k)
    if strategy == "formula":
        result = LiftResult(_lift_formula(T, L, h, k), "formula")
    elif strategy == "universal":
        j, parts = _lift_universal(T, L, h, k)
        result = LiftResult(j, "universal", parts)
    else:
        j1 = _lift_formula(T, L, h, k)
        j2, parts = _lift_universal(T, L, h, k)
        if j1 != j2:
            raise AssertionError("lift strategies disagree")
        result = LiftResult(j1, "both", parts)
    j = result.j
    if (j @ T.f) != h or (L.f @ j) != k:
        raise AssertionError("lift does not fill the square")
    return result


def E_of_square(h: FinFunctor, k: FinFunctor, Ff: EfFactorization, Fg: EfFactorization) -> FinFunctor:
    """The functor ``E(h, k): Ef -> Eg`` induced by a square from ``f`` to ``g``."""
    _check_square(Ff.f, Fg.f, h, k)
    return lift(Ff.coref, Fg.lens, Fg.Lf @ h, k @ Ff.Rf).j


def comultiplication(Ff: EfFactorization) -> FinFunctor:
    return Ff.delta


def multiplication(Ff: EfFactorization) -> FinFunctor:
    return Ff.mu


@dataclass(frozen=True, eq=False)
class UniversalArrow:
    ell: FinFunctor
    j: FinFunctor

    def __iter__(self):
        return iter((self.ell, self.j))


def free_lens_universal(Ff: EfFactorization, L: DeltaLens, h: FinFunctor, k: FinFunctor) -> UniversalArrow:
    """The lens cell ``(j, k)`` from ``Rf`` to ``L`` with ``j Lf = h``."""
    _check_square(Ff.f, L.f, h, k)
    _, iota = discrete_of(Ff.f.dom)
    tab = tabulator(L)
    h_hat = boo_lift(h @ iota, tab.pi_a)
    ell = orthogonal_lift(Ff.sigma.If, tab.pi_b, h_hat, k @ Ff.sigma.Tf0)
    j = Ff.induced(tab.pi_a @ ell, h)
    assert (j @ Ff.Lf) == h and (L.f @ j) == (k @ Ff.Rf)
    assert lens_cell_witness(j, k, Ff.lens, L) is None
    return UniversalArrow(ell, j)


def cofree_coref_universal(T: SplitCoreflection, Fg: EfFactorization, h: FinFunctor, k: FinFunctor) -> UniversalArrow:
    """The coreflection cell ``(h, j)`` from ``T`` to ``Lg`` with ``Rg j = k``."""
    T = ensure_twisted(T)
    _check_square(T.f, Fg.f, h, k)
    fib = fibre_sum(T)
    X = fib.cod
    included = FinFunctor(X, T.cod, {x: x for x in X.objects}, {m: m for m in X.morphisms})
    C = Fg.f.dom
    C0, _ = discrete_of(C)
    A0 = fib.dom
    h0 = FinFunctor(A0, C0, dict(h.obj_map), {A0.identity[a]: C0.identity[h.ob(a)] for a in A0.objects})
    ell = orthogonal_lift(fib.f, Fg.sigma.Tf0, Fg.sigma.If @ h0, k @ included)
    glued = split_to_twisted(T)
    assert glued.is_iso, "twisted coreflection is not a pushout"
    j = glued.pushout.induced(Fg.PhiF @ ell, Fg.Lf @ h) @ inverse_functor(glued.comparison)
    assert (j @ T.f) == (Fg.Lf @ h) and (Fg.Rf @ j) == k
    assert coref_cell_witness(h, j, T, Fg.coref) is None
    return UniversalArrow(ell, j)


@dataclass(frozen=True, eq=False)
class Coalgebra:
    f: FinFunctor
    beta: FinFunctor

    def __iter__(self):
        return iter((self.f, self.beta))


@dataclass(frozen=True, eq=False)
class Algebra:
    f: FinFunctor
    alpha: FinFunctor

    def __iter__(self):
        return iter((self.f, self.alpha))


def coalgebra_violation(f: FinFunctor, beta: FinFunctor):
    """The first coalgebra law that ``beta`` breaks, or ``None``."""
    Ff = factorize(f)
    B = f.cod
    if beta.dom != B or beta.cod != Ff.Ef:
        return ("shape",)
    for x in B.objects:
        if Ff.Rf.ob(beta.ob(x)) != x:
            return ("Rf beta = 1", x)
    for u in B.morphisms:
        if Ff.Rf(beta(u)) != u:
            return ("Rf beta = 1", u)
    if (beta @ f) != Ff.Lf:
        return ("beta f = Lf",)
    lhs = E_of_square(identity_functor(f.dom), beta, Ff, factorize(Ff.Lf)) @ beta
    if lhs != (Ff.delta @ beta):
        return ("E(1, beta) beta = delta beta",)
    return None


def algebra_violation(f: FinFunctor, alpha: FinFunctor):
    """The first algebra law that ``alpha`` breaks, or ``None``."""
    Ff = factorize(f)
    A = f.dom
    if alpha.dom != Ff.Ef or alpha.cod != A:
        return ("shape",)
    if (alpha @ Ff.Lf) != identity_functor(A):
        bad = next((a for a in A.objects if alpha.ob(Ff.Lf.ob(a)) != a), None)
        return ("alpha Lf = 1", bad)
    if (f @ alpha) != Ff.Rf:
        return ("f alpha = Rf",)
    FR = factorize(Ff.Rf)
    if (alpha @ Ff.mu) != (alpha @ E_of_square(alpha, identity_functor(f.cod), FR, Ff)):
        return ("alpha mu = alpha E(alpha, 1)",)
    return None


def twisted_to_coalgebra(T: SplitCoreflection) -> Coalgebra:
    T = ensure_twisted(T)
    f, q = T.f, T.q
    A, B = f.dom, f.cod
    Ff = factorize(f)
    qbar = T.witness.qbar
    obj = {x: pair(q.ob(x), T.counit(x)) for x in B.objects}
    mor = {}
    for u, (x, y) in B.morphisms.items():
        if A.is_identity(q(u)):
            mor[u] = Ff.first(q.ob(x), T.counit(x), u)
        else:
            mor[u] = e2_name(q.ob(x), T.counit(x), qbar[u], q(u), T.counit(y))
    beta = FinFunctor(B, Ff.Ef, obj, mor)
    bad = coalgebra_violation(f, beta)
    assert bad is None, f"coalgebra law fails: {bad}"
    return Coalgebra(f, beta)


def coalgebra_to_twisted(f: FinFunctor, beta: FinFunctor) -> SplitCoreflection:
    bad = coalgebra_violation(f, beta)
    if bad is not None:
        raise PreconditionError(f"not a coalgebra: {bad[0]}", bad)
    Ff = factorize(f)
    A, B = f.dom, f.cod
    q_obj = {x: Ff.points[beta.ob(x)][0] for x in B.objects}
    counit = {x: Ff.points[beta.ob(x)][1] for x in B.objects}
    q_mor, qbar = {}, {}
    for u in B.morphisms:
        m = beta(u)
        if m in Ff.e2:
            _, _, v, w, _ = Ff.e2[m]
            q_mor[u] = w
            qbar[u] = v
        else:
            q_mor[u] = A.identity[q_obj[B.src(u)]]
    S = make_coreflection(f, FinFunctor(B, A, q_obj, q_mor), counit, TwistedWitness(qbar))
    report = check_split_coreflection(S)
    if report:
        raise PreconditionError(f"extracted coreflection is invalid: {report[0]}", report)
    ok, found = is_twisted(S)
    assert ok and found.qbar == qbar, "extracted coreflection is not twisted"
    return S


def lens_to_algebra(L: DeltaLens) -> Algebra:
    f = L.f
    A = f.dom
    Ff = factorize(f)

    def top(a, u):
        return A.tgt(L(a, u))

    obj = {x: top(a, u) for x, (a, u) in Ff.points.items()}
    mor = {}
    for m in Ff.Ef.morphisms:
        if m in Ff.e1:
            a, u1, v = Ff.e1[m]
            mor[m] = L(top(a, u1), v)
        elif m in Ff.e2:
            a1, u1, v, w, u2 = Ff.e2[m]
            mor[m] = A.compose(L(A.tgt(w), u2), w, L(top(a1, u1), v))
        else:
            mor[m] = A.identity[obj[Ff.Ef.src(m)]]
    alpha = FinFunctor(Ff.Ef, A, obj, mor)
    bad = algebra_violation(f, alpha)
    assert bad is None, f"algebra law fails: {bad}"
    return Algebra(f, alpha)


def algebra_to_lens(f: FinFunctor, alpha: FinFunctor) -> DeltaLens:
    bad = algebra_violation(f, alpha)
    if bad is not None:
        raise PreconditionError(f"not an algebra: {bad[0]}", bad)
    Ff = factorize(f)
    B = f.cod
    lifts = {}
    for a in f.dom.objects:
        for u in B.out_of(f.ob(a)):
            lifts[(a, u)] = alpha(Ff.first(a, B.identity[f.ob(a)], u))
    L = DeltaLens(f, lifts)
    report = check_delta_lens(L)
    if report:
        raise PreconditionError(f"extracted lens is invalid: {report[0]}", report)
    return L
