"""Finite categories, functors and natural transformations as explicit tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import ConstructionError, PreconditionError


def identity_name(obj: str) -> str:
    return "1_" + obj


@dataclass(frozen=True)
class Violation:
    """One broken law together with the elements that break it."""

    law: str
    witness: tuple
    message: str = ""

    def __str__(self):
        parts = ", ".join(str(w) for w in self.witness)
        text = f"{self.law}({parts})"
        return f"{text}: {self.message}" if self.message else text


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category given by its full composition table.

    ``morphisms`` maps every morphism name (identities included) to its
    ``(src, tgt)`` pair and ``comp[(g, f)]`` is the composite ``g . f``.
    Nothing is checked on construction; use :func:`validate_category`.
    """

    objects: tuple
    morphisms: Mapping[str, tuple]
    identity: Mapping[str, str]
    comp: Mapping[tuple, str]
    name: str = field(default="", compare=False)

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def compose(self, *ms: str) -> str:
        """Compose right to left: ``compose(h, g, f)`` is ``h . g . f``."""
        result = ms[-1]
        for m in reversed(ms[:-1]):
            try:
                result = self.comp[(m, result)]
            except KeyError:
                raise ConstructionError(
                    f"morphisms {m!r} and {result!r} are not composable in {self.label}"
                ) from None
        return result

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.morphisms[m][0]) == m

    @cached_property
    def label(self) -> str:
        return self.name or f"<{len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    @cached_property
    def nonidentity(self) -> tuple:
        ids = set(self.identity.values())
        return tuple(m for m in self.morphisms if m not in ids)

    @cached_property
    def _homs(self) -> dict:
        homs: dict = {}
        for m, (s, t) in self.morphisms.items():
            homs.setdefault((s, t), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _out(self) -> dict:
        out: dict = {x: [] for x in self.objects}
        for m, (s, _) in self.morphisms.items():
            out.setdefault(s, []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _into(self) -> dict:
        into: dict = {x: [] for x in self.objects}
        for m, (_, t) in self.morphisms.items():
            into.setdefault(t, []).append(m)
        return {k: tuple(v) for k, v in into.items()}

    def hom(self, x: str, y: str) -> tuple:
        return self._homs.get((x, y), ())

    def out_of(self, x: str) -> tuple:
        return self._out.get(x, ())

    def into(self, y: str) -> tuple:
        return self._into.get(y, ())

    @property
    def is_discrete(self) -> bool:
        return not self.nonidentity

    @cached_property
    def _key(self):
        return (
            frozenset(self.objects),
            frozenset(self.morphisms.items()),
            frozenset(self.identity.items()),
            frozenset(self.comp.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FinCategory({self.label})"


def make_category(
    objects: Iterable[str],
    morphisms: Iterable[tuple],
    comp: Mapping[tuple, str] | Iterable[tuple] = (),
    name: str = "",
) -> FinCategory:
    """Build a category from its non-identity morphisms ``(name, src, tgt)``.

    Identities named ``1_<obj>`` and all composites with identities are
    synthesised; ``comp`` lists composites of non-identity pairs only.
    Duplicate names raise :class:`ConstructionError`.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise ConstructionError(f"duplicate object names in {name or 'category'}")
    obs = set(objects)
    mors: dict = {}
    identity = {}
    table: dict = {}
    for x in objects:
        i = identity_name(x)
        mors[i] = (x, x)
        identity[x] = i
    for m, s, t in morphisms:
        if m in mors:
            raise ConstructionError(f"duplicate morphism name {m!r}")
        if s not in obs or t not in obs:
            raise ConstructionError(f"morphism {m!r} has an unknown endpoint")
        mors[m] = (s, t)
    for m, (s, t) in mors.items():
        table[(identity[t], m)] = m
        table[(m, identity[s])] = m
    items = comp.items() if isinstance(comp, Mapping) else ((k, v) for k, v in comp)
    for key, h in items:
        table[tuple(key)] = h
    return FinCategory(objects, mors, identity, table, name)


def discrete(objects: Iterable[str], name: str = "") -> FinCategory:
    return make_category(objects, (), name=name)


def ordinal(n: int, name: str = "") -> FinCategory:
    """The ordinal ``n`` with objects ``"0"`` .. ``"n-1"`` and arrows ``"ij"``."""
    obs = [str(i) for i in range(n)]
    mors = [(f"{i}{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    comp = {
        (f"{j}{k}", f"{i}{j}"): f"{i}{k}"
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(j + 1, n)
    }
    return make_category(obs, mors, comp, name=name or str(n))


def validate_category(c: FinCategory) -> list:
    """Every violated category law, each with a concrete witness."""
    report = []
    obs = set(c.objects)
    if len(obs) != len(c.objects):
        report.append(Violation("objects", tuple(c.objects), "duplicate objects"))
    for m, (s, t) in c.morphisms.items():
        if s not in obs or t not in obs:
            report.append(Violation("endpoints", (m,), f"{s} -> {t} not both objects"))
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c.morphisms:
            report.append(Violation("identity", (x,), "missing identity"))
        elif c.morphisms[i] != (x, x):
            report.append(Violation("identity", (x, i), "identity is not an endomorphism of x"))
    if report:
        return report

    for (g, f), h in c.comp.items():
        if g not in c.morphisms or f not in c.morphisms or h not in c.morphisms:
            report.append(Violation("typing", (g, f), f"unknown morphism in entry = {h}"))
            continue
        if c.tgt(f) != c.src(g):
            report.append(Violation("typing", (g, f), "entry for a non-composable pair"))
        elif c.morphisms[h] != (c.src(f), c.tgt(g)):
            report.append(
                Violation("typing", (g, f), f"composite {h} has type {c.src(h)} -> {c.tgt(h)}")
            )
    if report:
        return report
    for f, (_, t) in c.morphisms.items():
        for g in c.out_of(t):
            if (g, f) not in c.comp:
                report.append(Violation("totality", (g, f), "composite undefined"))
    if report:
        return report

    for m, (s, t) in c.morphisms.items():
        if c.comp[(c.identity[t], m)] != m:
            report.append(Violation("left unit", (m,)))
        if c.comp[(m, c.identity[s])] != m:
            report.append(Violation("right unit", (m,)))
    for f, (_, b) in c.morphisms.items():
        for g in c.out_of(b):
            gf = c.comp[(g, f)]
            for h in c.out_of(c.tgt(g)):
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    report.append(Violation("associativity", (h, g, f)))
    return report


@dataclass(frozen=True, eq=False)
class FinFunctor:
    """A functor; ``mor_map`` covers identities as well."""

    dom: FinCategory
    cod: FinCategory
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]

    def __call__(self, m: str) -> str:
        return self.mor_map[m]

    def ob(self, x: str) -> str:
        return self.obj_map[x]

    def __matmul__(self, other: "FinFunctor") -> "FinFunctor":
        """``g @ f`` is the composite ``g . f``."""
        if other.cod != self.dom:
            raise ConstructionError("functors are not composable")
        return FinFunctor(
            other.dom,
            self.cod,
            {x: self.obj_map[y] for x, y in other.obj_map.items()},
            {m: self.mor_map[n] for m, n in other.mor_map.items()},
        )

    @cached_property
    def _key(self):
        return (self.dom, self.cod, frozenset(self.obj_map.items()), frozenset(self.mor_map.items()))

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        shown = ", ".join(f"{k}->{v}" for k, v in self.obj_map.items())
        return f"FinFunctor({self.dom.label} -> {self.cod.label}; {shown})"


def make_functor(dom: FinCategory, cod: FinCategory, obj_map: Mapping, mor_map: Mapping = ()) -> FinFunctor:
    """A functor whose identity images are filled in from ``obj_map``."""
    obj_map = dict(obj_map)
    full = {}
    given = dict(mor_map)
    for m in dom.morphisms:
        if m in given:
            full[m] = given[m]
        elif dom.is_identity(m):
            full[m] = cod.identity[obj_map[dom.src(m)]]
        else:
            raise ConstructionError(f"no image given for morphism {m!r}")
    return FinFunctor(dom, cod, obj_map, full)


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def constant_functor(dom: FinCategory, cod: FinCategory, obj: str) -> FinFunctor:
    i = cod.identity[obj]
    return FinFunctor(dom, cod, {x: obj for x in dom.objects}, {m: i for m in dom.morphisms})


def validate_functor(F: FinFunctor) -> list:
    report = []
    A, B = F.dom, F.cod
    for x in A.objects:
        if F.obj_map.get(x) not in B.objects:
            report.append(Violation("object map", (x,), "image is not an object"))
    for m in A.morphisms:
        if F.mor_map.get(m) not in B.morphisms:
            report.append(Violation("morphism map", (m,), "image is not a morphism"))
    if report:
        return report
    for m, (s, t) in A.morphisms.items():
        n = F.mor_map[m]
        if B.morphisms[n] != (F.obj_map[s], F.obj_map[t]):
            report.append(Violation("src/tgt", (m,), f"image {n} has the wrong endpoints"))
    for x in A.objects:
        if F.mor_map[A.identity[x]] != B.identity[F.obj_map[x]]:
            report.append(Violation("identity", (x,)))
    if report:
        return report
    for (g, f), h in A.comp.items():
        if B.comp.get((F.mor_map[g], F.mor_map[f])) != F.mor_map[h]:
            report.append(Violation("composition", (g, f)))
    return report


@dataclass(frozen=True, eq=False)
class NatTrans:
    """A natural transformation ``dom => cod`` between parallel functors."""

    dom: FinFunctor
    cod: FinFunctor
    components: Mapping[str, str]

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.dom, self.cod, dict(self.components)) == (other.dom, other.cod, dict(other.components))

    def __hash__(self):
        return hash((self.dom, self.cod, frozenset(self.components.items())))


def validate_nat_trans(t: NatTrans) -> list:
    F, G = t.dom, t.cod
    if F.dom != G.dom or F.cod != G.cod:
        return [Violation("parallel", (), "functors are not parallel")]
    B = F.cod
    report = []
    for x in F.dom.objects:
        c = t.components.get(x)
        if c not in B.morphisms or B.morphisms[c] != (F.ob(x), G.ob(x)):
            report.append(Violation("component", (x,), f"{c} is not a morphism F{x} -> G{x}"))
    if report:
        return report
    for m, (x, y) in F.dom.morphisms.items():
        if B.compose(t[y], F(m)) != B.compose(G(m), t[x]):
            report.append(Violation("naturality", (m,)))
    return report


def rename(c: FinCategory, objects: Mapping[str, str], morphisms: Mapping[str, str], name: str = ""):
    """An isomorphic copy of ``c`` with renamed identifiers, plus the isomorphism.

    Identities are always renamed to ``1_<new object>``.
    """
    obj = {x: objects.get(x, x) for x in c.objects}
    mor = {}
    for m in c.morphisms:
        mor[m] = identity_name(obj[c.src(m)]) if c.is_identity(m) else morphisms.get(m, m)
    if len(set(obj.values())) != len(obj) or len(set(mor.values())) != len(mor):
        raise ConstructionError("renaming is not injective")
    new = FinCategory(
        tuple(obj[x] for x in c.objects),
        {mor[m]: (obj[s], obj[t]) for m, (s, t) in c.morphisms.items()},
        {obj[x]: mor[i] for x, i in c.identity.items()},
        {(mor[g], mor[f]): mor[h] for (g, f), h in c.comp.items()},
        name or c.name,
    )
    return new, FinFunctor(c, new, obj, mor)


def inverse_functor(F: FinFunctor) -> FinFunctor:
    """Inverse of a functor that is bijective on objects and on morphisms."""
    inv_o = {v: k for k, v in F.obj_map.items()}
    inv_m = {v: k for k, v in F.mor_map.items()}
    if len(inv_o) != len(F.cod.objects) or len(inv_m) != len(F.cod.morphisms):
        raise PreconditionError("functor is not invertible")
    return FinFunctor(F.cod, F.dom, inv_o, inv_m)


def composable_pairs(c: FinCategory):
    """All composable pairs ``(g, f)`` of non-identity morphisms."""
    return [(g, f) for f in c.nonidentity for g in c.out_of(c.tgt(f)) if not c.is_identity(g)]
