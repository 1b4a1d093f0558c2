"""Test corpora: catalog fixtures, exhaustively enumerated small categories, random ones.

On top of the categories the corpus derives functors, split coreflections,
lens structures and commuting squares, each layer bounded by a guard.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from ..coreflections import enumerate_split_coreflections, is_twisted
from ..errors import SizeLimitExceeded
from ..fincat import (
    FinCategory,
    FinFunctor,
    SizeGuard,
    enumerate_functors,
    enumerate_squares,
    is_isomorphic,
    make_category,
)
from ..fincat import catalog
from ..lenses import enumerate_lens_structures

MODES = ("catalog", "exhaustive", "random")


@dataclass(frozen=True)
class CorpusSpec:
    max_objects: int = 3
    max_nonidentity_morphisms: int = 2
    seed: int = 0
    mode: str = "catalog"
    count: int = 10  # random mode only

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown corpus mode {self.mode!r}")
        if self.max_objects <= 0 or self.max_nonidentity_morphisms < 0 or self.count <= 0:
            raise ValueError("corpus bounds must be positive")


def _shapes(n: int, budget: int):
    """Hom-count matrices for ``n`` objects, one per orbit under relabelling."""
    cells = [(i, j) for i in range(n) for j in range(n)]
    perms = list(itertools.permutations(range(n)))
    for counts in itertools.product(range(budget + 1), repeat=len(cells)):
        if sum(counts) > budget:
            continue
        H = dict(zip(cells, counts))
        key = tuple(H[c] for c in cells)
        if all(tuple(H[(p[i], p[j])] for i, j in cells) >= key for p in perms):
            yield H


def _tables(n: int, H: dict, guard: SizeGuard):
    """All valid composition tables with hom counts ``H``."""
    objects = [f"x{i}" for i in range(n)]
    morphisms = []
    for (i, j), k in sorted(H.items()):
        for _ in range(k):
            morphisms.append((f"m{len(morphisms)}", objects[i], objects[j]))
    ends = {m: (s, t) for m, s, t in morphisms}
    pairs = [(g, f) for f in ends for g in ends if ends[f][1] == ends[g][0]]
    options = {}
    for g, f in pairs:
        s, t = ends[f][0], ends[g][1]
        pool = [m for m in ends if ends[m] == (s, t)]
        options[(g, f)] = ([None] if s == t else []) + pool  # None stands for the identity
    table: dict = {}
    budget = [guard.max_steps]

    def comp(g, f):
        if g is None:
            return f
        if f is None:
            return g
        return table.get((g, f), "?")

    triples = [(h, g, f) for g, f in pairs for h in ends if ends[g][1] == ends[h][0]]

    def associative():
        for h, g, f in triples:
            gf, hg = comp(g, f), comp(h, g)
            if gf == "?" or hg == "?":
                continue
            left, right = comp(h, gf), comp(hg, f)
            if left != "?" and right != "?" and left != right:
                return False
        return True

    def walk(i):
        if i == len(pairs):
            yield dict(table)
            return
        key = pairs[i]
        for c in options[key]:
            budget[0] -= 1
            if budget[0] < 0:
                raise SizeLimitExceeded("composition table search exceeded the guard")
            table[key] = c
            if associative():
                yield from walk(i + 1)
            del table[key]

    for found in walk(0):
        comp_table = {}
        for (g, f), h in found.items():
            comp_table[(g, f)] = h if h is not None else f"1_{ends[f][0]}"
        yield make_category(objects, morphisms, comp_table)


def _invariant(c: FinCategory):
    homs = sorted(
        (len(c.hom(x, y)), x == y, sum(1 for m in c.hom(x, y) for n in c.hom(y, x) if c.is_identity(c.compose(n, m))))
        for x in c.objects
        for y in c.objects
    )
    idempotents = sum(1 for m in c.nonidentity if c.src(m) == c.tgt(m) and c.compose(m, m) == m)
    return len(c.objects), tuple(homs), idempotents


def enumerate_categories(max_objects: int, max_nonidentity: int, guard: SizeGuard | None = None) -> list:
    """All categories within the bounds, one per isomorphism class, in a fixed order."""
    guard = guard or SizeGuard(max_objects=max_objects, max_morphisms=max_objects + max_nonidentity)
    found = []
    buckets: dict = {}
    for n in range(1, max_objects + 1):
        for H in _shapes(n, max_nonidentity):
            for c in _tables(n, H, guard):
                key = _invariant(c)
                if any(is_isomorphic(c, d) for d in buckets.get(key, ())):
                    continue
                buckets.setdefault(key, []).append(c)
                found.append(c)
    named = []
    for i, c in enumerate(found):
        named.append(FinCategory(c.objects, c.morphisms, c.identity, c.comp, f"C{i}"))
    return named


def random_categories(spec: CorpusSpec) -> list:
    """A seed-reproducible sample: random quotients of free categories on random graphs."""
    rng = random.Random(spec.seed)
    result = []
    attempts = 0
    while len(result) < spec.count and attempts < 200 * spec.count:
        attempts += 1
        n = rng.randint(1, spec.max_objects)
        H = {}
        budget = rng.randint(0, spec.max_nonidentity_morphisms)
        for _ in range(budget):
            cell = (rng.randrange(n), rng.randrange(n))
            H[cell] = H.get(cell, 0) + 1
        full = {(i, j): H.get((i, j), 0) for i in range(n) for j in range(n)}
        guard = SizeGuard(max_objects=n, max_morphisms=n + budget, max_steps=50_000)
        try:
            tables = list(itertools.islice(_tables(n, full, guard), 64))
        except SizeLimitExceeded:
            continue
        if not tables:
            continue
        c = tables[rng.randrange(len(tables))]
        result.append(FinCategory(c.objects, c.morphisms, c.identity, c.comp, f"R{spec.seed}_{len(result)}"))
    return result


def generate_categories(spec: CorpusSpec) -> list:
    if spec.mode == "catalog":
        return catalog.fixtures()
    if spec.mode == "exhaustive":
        return enumerate_categories(spec.max_objects, spec.max_nonidentity_morphisms)
    return random_categories(spec)


@dataclass(frozen=True)
class Guards:
    """Bounds for the derived layers of a corpus.

    Sizes count all morphisms, identities included.  Pairs of pinned
    categories (the catalog fixtures) are admitted regardless of size.
    """

    functor_morphisms: int = 7  # |Mor A| + |Mor B| for a functor A -> B
    square_morphisms: int = 10  # total over the four corners of a square
    pinned_square_morphisms: int = 14
    search: SizeGuard = field(default_factory=lambda: SizeGuard(max_objects=3, max_morphisms=8))


def _size(F: FinFunctor) -> int:
    return len(F.dom.morphisms) + len(F.cod.morphisms)


@dataclass(frozen=True, eq=False)
class Square:
    """A commuting square from a twisted coreflection to a delta lens."""

    T: object
    L: object
    h: FinFunctor
    k: FinFunctor

    def __iter__(self):
        return iter((self.T, self.L, self.h, self.k))


@dataclass(eq=False)
class Corpus:
    categories: list
    guards: Guards = field(default_factory=Guards)
    pinned: frozenset = frozenset()

    def _admits(self, A: FinCategory, B: FinCategory) -> bool:
        if A.label in self.pinned and B.label in self.pinned:
            return True
        return len(A.morphisms) + len(B.morphisms) <= self.guards.functor_morphisms

    def _pinned(self, F: FinFunctor) -> bool:
        return F.dom.label in self.pinned and F.cod.label in self.pinned

    @cached_property
    def functors(self) -> list:
        """All functors between pairs of corpus categories within the guard."""
        out = []
        for A in self.categories:
            for B in self.categories:
                if self._admits(A, B):
                    out.extend(enumerate_functors(A, B, self.guards.search))
        return out

    @cached_property
    def coreflections(self) -> list:
        out = []
        for f in self.functors:
            out.extend(enumerate_split_coreflections(f, self.guards.search))
        return out

    @cached_property
    def twisted(self) -> list:
        out = []
        for S in self.coreflections:
            ok, witness = is_twisted(S)
            if ok:
                out.append(type(S)(S.f, S.q, S.eps, witness))
        return out

    @cached_property
    def lenses(self) -> list:
        out = []
        for f in self.functors:
            out.extend(enumerate_lens_structures(f, self.guards.search).structures)
        return out

    @cached_property
    def squares(self) -> list:
        """Every commuting square from a corpus twisted coreflection to a corpus lens."""
        out = []
        for T in self.twisted:
            for L in self.lenses:
                size = _size(T.f) + _size(L.f)
                bound = self.guards.square_morphisms
                if self._pinned(T.f) and self._pinned(L.f):
                    bound = max(bound, self.guards.pinned_square_morphisms)
                if size > bound:
                    continue
                for h, k in enumerate_squares(T.f, L.f, self.guards.search):
                    out.append(Square(T, L, h, k))
        return out


def generate_corpus(spec: CorpusSpec, guards: Guards | None = None) -> Corpus:
    cats = generate_categories(spec)
    pinned = frozenset(c.label for c in cats) if spec.mode == "catalog" else frozenset()
    return Corpus(cats, guards or Guards(), pinned)


def acceptance_corpus(guards: Guards | None = None) -> Corpus:
    """Catalog fixtures plus every category with at most 3 objects and 3 non-identity morphisms."""
    fixtures = catalog.fixtures()
    extra = [c for c in enumerate_categories(3, 3) if not any(is_isomorphic(c, d) for d in fixtures)]
    return Corpus(fixtures + extra, guards or Guards(), frozenset(c.label for c in fixtures))
