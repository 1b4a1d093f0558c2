"""Split and twisted coreflections."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import PreconditionError
from .fincat import (
    FinCategory,
    FinFunctor,
    NatTrans,
    Pushout,
    SizeGuard,
    Violation,
    comma,
    discrete_of,
    enumerate_functors,
    identity_functor,
    inverse_functor,
    is_fully_faithful,
    pullback,
    pushout_along_discrete,
    rename,
    validate_functor,
    validate_nat_trans,
)
from .fincat.constructions import pair
from .fincat.search import default_guard


@dataclass(frozen=True)
class TwistedWitness:
    """``qbar[u]`` for every ``u`` whose image under ``q`` is not an identity."""

    qbar: Mapping[str, str]


@dataclass(frozen=True)
class TwistedCounterexample:
    """A morphism ``u`` admitting zero or several candidates for ``qbar``."""

    morphism: str
    candidates: tuple


@dataclass(frozen=True, eq=False)
class SplitCoreflection:
    """A left adjoint ``f: A -> B`` with right adjoint ``q`` and counit ``eps: fq => 1``."""

    f: FinFunctor
    q: FinFunctor
    eps: NatTrans
    witness: TwistedWitness | None = field(default=None, compare=False)

    @property
    def dom(self) -> FinCategory:
        return self.f.dom

    @property
    def cod(self) -> FinCategory:
        return self.f.cod

    def counit(self, x: str) -> str:
        return self.eps.components[x]

    def __eq__(self, other):
        if not isinstance(other, SplitCoreflection):
            return NotImplemented
        return (self.f, self.q, self.eps) == (other.f, other.q, other.eps)

    def __hash__(self):
        return hash((self.f, self.q, self.eps))

    def __repr__(self):
        return f"SplitCoreflection({self.dom.label} -> {self.cod.label}; eps={dict(self.eps.components)})"


def make_coreflection(f: FinFunctor, q: FinFunctor, counit: Mapping, witness=None) -> SplitCoreflection:
    eps = NatTrans(f @ q, identity_functor(f.cod), dict(counit))
    return SplitCoreflection(f, q, eps, witness)


def identity_coreflection(A: FinCategory) -> SplitCoreflection:
    one = identity_functor(A)
    return make_coreflection(one, one, {a: A.identity[a] for a in A.objects}, TwistedWitness({}))


def check_split_coreflection(S: SplitCoreflection) -> list:
    f, q = S.f, S.q
    A, B = f.dom, f.cod
    if q.dom != B or q.cod != A:
        return [Violation("typing", (), "q is not a functor B -> A")]
    report = [Violation("functor f", (str(v),)) for v in validate_functor(f)]
    report += [Violation("functor q", (str(v),)) for v in validate_functor(q)]
    if report:
        return report
    for a in A.objects:
        if q.ob(f.ob(a)) != a:
            report.append(Violation("qf = 1", (a,)))
    for w in A.morphisms:
        if q(f(w)) != w:
            report.append(Violation("qf = 1", (w,)))
    counit_issues = validate_nat_trans(S.eps) if S.eps.dom == f @ q else [Violation("counit", (), "wrong domain")]
    if counit_issues or report:
        return report + counit_issues
    for x in B.objects:
        if not A.is_identity(q(S.counit(x))):
            report.append(Violation("q.eps = 1", (x,), f"q({S.counit(x)}) = {q(S.counit(x))}"))
    for a in A.objects:
        if not B.is_identity(S.counit(f.ob(a))):
            report.append(Violation("eps.f = 1", (a,)))
    return report


def compose_coreflections(S1: SplitCoreflection, S2: SplitCoreflection) -> SplitCoreflection:
    """``(g f, q p, theta)`` with ``theta_x = zeta_x . g(eps_{p x})``."""
    if S1.cod != S2.dom:
        raise PreconditionError("coreflections are not composable")
    g, p = S2.f, S2.q
    C = S2.cod
    theta = {x: C.compose(S2.counit(x), g(S1.counit(p.ob(x)))) for x in C.objects}
    return make_coreflection(g @ S1.f, S1.q @ p, theta)


def coref_cell_witness(h: FinFunctor, k: FinFunctor, S1: SplitCoreflection, S2: SplitCoreflection):
    """The first equation of a coreflection cell that fails, or ``None``."""
    if h.dom != S1.dom or k.dom != S1.cod or h.cod != S2.dom or k.cod != S2.cod:
        raise PreconditionError("cell legs have the wrong shape")
    if (k @ S1.f) != (S2.f @ h):
        return ("kf = gh",)
    if (h @ S1.q) != (S2.q @ k):
        return ("hq = pk",)
    for x in S1.cod.objects:
        if k(S1.counit(x)) != S2.counit(k.ob(x)):
            return ("k.eps = zeta.k", x)
    return None


def is_coref_cell(h: FinFunctor, k: FinFunctor, S1: SplitCoreflection, S2: SplitCoreflection) -> bool:
    return coref_cell_witness(h, k, S1, S2) is None


def qbar_candidates(S: SplitCoreflection, u: str) -> list:
    f, q = S.f, S.q
    B = S.cod
    x, y = B.morphisms[u]
    fqx = f.ob(q.ob(x))
    through = B.compose(S.counit(y), f(q(u)))
    return [
        c
        for c in B.hom(x, fqx)
        if B.is_identity(B.compose(c, S.counit(x))) and B.compose(through, c) == u
    ]


def is_twisted(S: SplitCoreflection):
    """``(True, TwistedWitness)`` or ``(False, TwistedCounterexample)``."""
    A, B = S.dom, S.cod
    qbar = {}
    for u in B.morphisms:
        if A.is_identity(S.q(u)):
            continue
        found = qbar_candidates(S, u)
        if len(found) != 1:
            return False, TwistedCounterexample(u, tuple(found))
        qbar[u] = found[0]
    return True, TwistedWitness(qbar)


def ensure_twisted(S: SplitCoreflection) -> SplitCoreflection:
    """``S`` with its witness attached; raises when ``S`` is not twisted."""
    if S.witness is not None:
        return S
    ok, found = is_twisted(S)
    if not ok:
        raise PreconditionError(f"coreflection is not twisted at {found.morphism}", found)
    return SplitCoreflection(S.f, S.q, S.eps, found)


def coreflection_from_initial(f: FinFunctor) -> SplitCoreflection:
    """The coreflection right adjoint to an initial functor out of a discrete category."""
    A0, X = f.dom, f.cod
    if not A0.is_discrete:
        raise PreconditionError("domain is not discrete", A0.nonidentity[0])
    q_obj, counit = {}, {}
    for x in X.objects:
        points = list(comma(f, x).points.values())
        if len(points) == 0:
            raise PreconditionError(f"comma category over {x} is empty", x)
        if len(points) > 1:
            raise PreconditionError(f"comma category over {x} is disconnected", x)
        q_obj[x], counit[x] = points[0]
    q = FinFunctor(X, A0, q_obj, {m: A0.identity[q_obj[X.src(m)]] for m in X.morphisms})
    return make_coreflection(f, q, counit, TwistedWitness({}))


def pullback_coreflection(S: SplitCoreflection, k: FinFunctor) -> SplitCoreflection:
    """The coreflection ``D -> D x_A B`` obtained by pulling back ``q`` along ``k``."""
    return _pulled_back(S, k)[0]


def _pulled_back(S: SplitCoreflection, k: FinFunctor):
    if k.cod != S.dom:
        raise PreconditionError("k must land in the domain of the coreflection")
    f = S.f
    pb = pullback(k, S.q)
    P = pb.category
    D = k.dom
    left = FinFunctor(
        D,
        P,
        {d: pair(d, f.ob(k.ob(d))) for d in D.objects},
        {w: pb.arrow(w, f(k(w))) for w in D.morphisms},
    )
    counit = {x: pb.arrow(D.identity[pb.proj_a.ob(x)], S.counit(pb.proj_b.ob(x))) for x in P.objects}
    return make_coreflection(left, pb.proj_a, counit), pb


@dataclass(frozen=True, eq=False)
class PushoutCoreflection:
    coref: SplitCoreflection
    pushout: Pushout


def twisted_from_pushout(f: FinFunctor, A: FinCategory) -> PushoutCoreflection:
    """The twisted coreflection ``A -> B`` obtained by gluing ``A`` onto ``X`` along ``f``."""
    A0, iota = discrete_of(A)
    if f.dom != A0:
        raise PreconditionError("f must start at the discrete category on the objects of A")
    base = coreflection_from_initial(f)
    po = pushout_along_discrete(f, iota)
    B = po.category
    q_obj = dict(base.q.obj_map)
    q_mor = {}
    qbar = {}
    for m in B.morphisms:
        if m in po.triples:
            u, w, _ = po.triples[m]
            q_mor[m] = w
            qbar[m] = u
        else:
            q_mor[m] = A.identity[q_obj[B.src(m)]]
    q = FinFunctor(B, A, q_obj, q_mor)
    coref = make_coreflection(po.f_prime, q, dict(base.eps.components), TwistedWitness(qbar))
    return PushoutCoreflection(coref, po)


@dataclass(frozen=True, eq=False)
class SplitToTwisted:
    twisted: SplitCoreflection
    comparison: FinFunctor
    is_iso: bool
    pushout: Pushout

    def __iter__(self):
        return iter((self.twisted, self.comparison, self.is_iso))


def fibre_sum(S: SplitCoreflection) -> SplitCoreflection:
    """The pullback of ``S`` along ``iota_A``, relabelled by the identifiers of ``B``.

    This is the coreflection of ``A_0`` into the sum of the fibres of ``q``;
    the fibres sit inside ``B`` as the morphisms ``q`` sends to identities.
    """
    _, iota = discrete_of(S.dom)
    hat, pb = _pulled_back(S, iota)
    P = hat.cod
    _, iso = rename(P, dict(pb.proj_b.obj_map), {m: pb.proj_b(m) for m in P.nonidentity}, name=f"fibres({S.cod.label})")
    back = inverse_functor(iso)
    return make_coreflection(iso @ hat.f, hat.q @ back, {iso.ob(x): iso(c) for x, c in hat.eps.components.items()})


def split_to_twisted(S: SplitCoreflection) -> SplitToTwisted:
    """The cofree twisted coreflection on ``S`` and its comparison back to ``S``."""
    fib = fibre_sum(S)
    built = twisted_from_pushout(fib.f, S.dom)
    X = fib.cod
    inclusion = FinFunctor(X, S.cod, {x: x for x in X.objects}, {m: m for m in X.morphisms})
    comparison = built.pushout.induced(inclusion, S.f)
    return SplitToTwisted(built.coref, comparison, is_fully_faithful(comparison), built.pushout)


def enumerate_split_coreflections(f: FinFunctor, size_guard: SizeGuard | None = None) -> list:
    """Every split coreflection structure ``(q, eps)`` on ``f``."""
    guard = size_guard or default_guard()
    A, B = f.dom, f.cod
    if not is_fully_faithful(f) or len(set(f.obj_map.values())) != len(A.objects):
        return []
    fixed_obj = {f.ob(a): [a] for a in A.objects}
    fixed_mor = {f(w): [w] for w in A.morphisms}
    found = []
    for q in enumerate_functors(B, A, guard, objects=fixed_obj, morphisms=fixed_mor):
        for counit in _counits(f, q):
            found.append(make_coreflection(f, q, counit))
    return found


def _counits(f: FinFunctor, q: FinFunctor):
    A, B = f.dom, f.cod
    image = set(f.obj_map.values())
    order = list(B.objects)
    options = {}
    for x in order:
        fqx = f.ob(q.ob(x))
        if x in image:
            options[x] = [B.identity[x]]
        else:
            options[x] = [c for c in B.hom(fqx, x) if A.is_identity(q(c))]
    position = {x: i for i, x in enumerate(order)}
    checks = {x: [] for x in order}
    for u, (x, y) in B.morphisms.items():
        checks[max(x, y, key=position.__getitem__)].append(u)
    chosen = {}

    def walk(i):
        if i == len(order):
            yield dict(chosen)
            return
        x = order[i]
        for c in options[x]:
            chosen[x] = c
            if all(
                B.compose(chosen[B.tgt(u)], f(q(u))) == B.compose(u, chosen[B.src(u)]) for u in checks[x]
            ):
                yield from walk(i + 1)
            del chosen[x]

    yield from walk(0)
