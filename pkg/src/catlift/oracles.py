"""Brute-force searches used to cross-check the constructions.

Each oracle enumerates every functor of the right shape and keeps those
satisfying the defining equations, so it shares no code path with the
constructions it is compared against.
"""

from __future__ import annotations

from .awfs import algebra_violation, coalgebra_violation, factorize
from .coreflections import coref_cell_witness, enumerate_split_coreflections, is_twisted
from .fincat import ORACLE_GUARD, FinFunctor, SizeGuard, enumerate_functors, identity_functor
from .lenses import enumerate_lens_structures, is_lens_cell


def functors_over(
    dom,
    cod,
    *,
    proj: FinFunctor | None = None,
    below: FinFunctor | None = None,
    pin: FinFunctor | None = None,
    along: FinFunctor | None = None,
    size_guard: SizeGuard | None = None,
):
    """Functors ``j: dom -> cod`` with ``proj j = below`` and ``j along = pin``.

    Both conditions are optional; they only narrow the search space and are
    re-checked on every candidate.
    """
    objects: dict = {}
    morphisms: dict = {}
    if proj is not None:
        for x in dom.objects:
            objects[x] = {y for y in cod.objects if proj.ob(y) == below.ob(x)}
        for m in dom.nonidentity:
            morphisms[m] = {n for n in cod.morphisms if proj(n) == below(m)}
    if pin is not None:
        for a in along.dom.objects:
            x, y = along.ob(a), pin.ob(a)
            objects[x] = objects.get(x, set(cod.objects)) & {y}
        for w in along.dom.morphisms:
            m, n = along(w), pin(w)
            if m in dom.nonidentity:
                morphisms[m] = morphisms.get(m, set(cod.morphisms)) & {n}
            elif not cod.is_identity(n):
                return
    for j in enumerate_functors(dom, cod, size_guard or ORACLE_GUARD, objects=objects, morphisms=morphisms):
        if proj is not None and proj @ j != below:
            continue
        if pin is not None and j @ along != pin:
            continue
        yield j


def fillers(f: FinFunctor, g: FinFunctor, h: FinFunctor, k: FinFunctor, size_guard=None) -> list:
    """Every diagonal ``j`` with ``j f = h`` and ``g j = k``."""
    return list(functors_over(f.cod, g.dom, proj=g, below=k, pin=h, along=f, size_guard=size_guard))


def free_lens_arrows(Ff, L, h, k) -> list:
    """Every ``j: Ef -> C`` with ``j Lf = h``, ``g j = k Rf`` and ``(j, k)`` a lens cell."""
    return [
        j
        for j in functors_over(Ff.Ef, L.dom, proj=L.f, below=k @ Ff.Rf, pin=h, along=Ff.Lf)
        if is_lens_cell(j, k, Ff.lens, L)
    ]


def cofree_coref_arrows(T, Fg, h, k) -> list:
    """Every ``j: B -> Eg`` with ``j f = Lg h``, ``Rg j = k`` and ``(h, j)`` a coreflection cell."""
    return [
        j
        for j in functors_over(T.cod, Fg.Ef, proj=Fg.Rf, below=k, pin=Fg.Lf @ h, along=T.f)
        if coref_cell_witness(h, j, T, Fg.coref) is None
    ]


def coalgebras(f: FinFunctor) -> list:
    """Every ``beta: B -> Ef`` satisfying the coalgebra laws."""
    Ff = factorize(f)
    candidates = functors_over(f.cod, Ff.Ef, proj=Ff.Rf, below=identity_functor(f.cod), pin=Ff.Lf, along=f)
    return [beta for beta in candidates if coalgebra_violation(f, beta) is None]


def algebras(f: FinFunctor) -> list:
    """Every ``alpha: Ef -> A`` satisfying the algebra laws."""
    Ff = factorize(f)
    candidates = functors_over(Ff.Ef, f.dom, proj=f, below=Ff.Rf, pin=identity_functor(f.dom), along=Ff.Lf)
    return [alpha for alpha in candidates if algebra_violation(f, alpha) is None]


def twisted_structures(f: FinFunctor, size_guard=None) -> list:
    out = []
    for S in enumerate_split_coreflections(f, size_guard):
        ok, witness = is_twisted(S)
        if ok:
            out.append(type(S)(S.f, S.q, S.eps, witness))
    return out


def lens_structures(f: FinFunctor, size_guard=None) -> list:
    return enumerate_lens_structures(f, size_guard).structures

