"""The acceptance suites, each a corpus-wide check with a runtime budget.

``run_suite(name)`` returns a :class:`SuiteResult`; the CLI ``selftest``
command and the test-suite both drive these.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from . import oracles
from .awfs import (
    check_factorization,
    cofree_coref_universal,
    factorize,
    free_lens_universal,
    lens_to_algebra,
    algebra_to_lens,
    lift,
    coalgebra_to_twisted,
    twisted_to_coalgebra,
)
from .cli.corpus import Corpus, acceptance_corpus
from .coreflections import (
    compose_coreflections,
    coref_cell_witness,
    enumerate_split_coreflections,
    is_twisted,
    split_to_twisted,
)
from .fincat import (
    catalog,
    classify_functor,
    comprehensive_factorize,
    enumerate_squares,
    is_discrete_opfibration,
    is_initial,
    orthogonal_lift,
)
from .lenses import (
    compose_lenses,
    enumerate_generated_structures,
    enumerate_lens_structures,
    is_lens_cell,
    is_split_opfibration,
    lens_from_dopf,
)

# Bounds on the corner sizes (all morphisms, identities included) for the
# instance families that combine more than one corpus structure.
CELL_MORPHISMS = 8
VERTICAL_MORPHISMS = 12
ORTHOGONAL_MORPHISMS = 10


@dataclass(frozen=True)
class SuiteResult:
    number: int
    name: str
    ok: bool
    checked: int
    seconds: float
    budget: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:.1f}s/{self.budget:.0f}s"
        extra = f" {self.detail}" if self.detail else ""
        return f"[{status}] {self.number:>2} {self.name}: {self.checked} checks, {timing}{extra}"


class Failure(Exception):
    """A suite found a counterexample."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise Failure(message)


@lru_cache(maxsize=1)
def corpus() -> Corpus:
    return acceptance_corpus()


def _size(F) -> int:
    return len(F.dom.morphisms) + len(F.cod.morphisms)


def suite_factorisation(C: Corpus) -> int:
    for f in C.functors:
        Ff = factorize(f)
        report = check_factorization(Ff)
        _expect(not report, f"{f!r}: {report[:1]}")
        _expect(Ff.Rf @ Ff.Lf == f, f"{f!r}: Rf Lf != f")
    return len(C.functors)


def suite_twistedness(C: Corpus) -> int:
    for S in C.coreflections:
        twisted, _ = is_twisted(S)
        _expect(twisted == split_to_twisted(S).is_iso, f"{S!r}: twisted={twisted} disagrees with the pushout test")
    return len(C.coreflections)


def suite_lifts(C: Corpus) -> int:
    for T, L, h, k in C.squares:
        j = lift(T, L, h, k, strategy="both").j
        _expect(j @ T.f == h and L.f @ j == k, "lift does not fill its square")
    return len(C.squares)


def _lens_cells(C: Corpus) -> dict:
    """Lens cells out of each corpus lens, within ``CELL_MORPHISMS``."""
    cells = defaultdict(list)
    for L1 in C.lenses:
        for L2 in C.lenses:
            if _size(L1.f) + _size(L2.f) > CELL_MORPHISMS:
                continue
            for c, d in enumerate_squares(L1.f, L2.f, C.guards.search):
                if is_lens_cell(c, d, L1, L2):
                    cells[L1].append((L2, c, d))
    return cells


def _coref_cells(C: Corpus) -> dict:
    """Coreflection cells into each corpus twisted coreflection, within ``CELL_MORPHISMS``."""
    cells = defaultdict(list)
    for T1 in C.twisted:
        for T2 in C.twisted:
            if _size(T1.f) + _size(T2.f) > CELL_MORPHISMS:
                continue
            for a, b in enumerate_squares(T1.f, T2.f, C.guards.search):
                if coref_cell_witness(a, b, T1, T2) is None:
                    cells[T2].append((T1, a, b))
    return cells


def suite_axioms(C: Corpus) -> int:
    checked = 0
    lens_cells, coref_cells = _lens_cells(C), _coref_cells(C)
    for T, L, h, k in C.squares:
        j = lift(T, L, h, k).j
        for L2, c, d in lens_cells.get(L, ()):
            _expect(lift(T, L2, c @ h, d @ k).j == c @ j, "lift is not natural in lens cells")
            checked += 1
        for T1, a, b in coref_cells.get(T, ()):
            _expect(lift(T1, L, h @ a, k @ b).j == j @ b, "lift is not natural in coreflection cells")
            checked += 1

    lens_pairs = [(L1, L2) for L1 in C.lenses for L2 in C.lenses if L1.cod == L2.dom]
    for T in C.twisted:
        for L1, L2 in lens_pairs:
            if _size(T.f) + _size(L1.f) + len(L2.cod.morphisms) > VERTICAL_MORPHISMS:
                continue
            L = compose_lenses(L1, L2)
            for h, k in enumerate_squares(T.f, L.f, C.guards.search):
                j2 = lift(T, L2, L1.f @ h, k).j
                nested = lift(T, L1, h, j2).j
                _expect(lift(T, L, h, k).j == nested, "lift against a composite lens is not the nested lift")
                checked += 1

    coref_pairs = [(T1, T2) for T1 in C.twisted for T2 in C.twisted if T1.cod == T2.dom]
    for T1, T2 in coref_pairs:
        T = compose_coreflections(T1, T2)
        for L in C.lenses:
            if _size(T1.f) + len(T2.cod.morphisms) + _size(L.f) > VERTICAL_MORPHISMS:
                continue
            for h, k in enumerate_squares(T.f, L.f, C.guards.search):
                j1 = lift(T1, L, h, k @ T2.f).j
                nested = lift(T2, L, j1, k).j
                _expect(lift(T, L, h, k).j == nested, "lift of a composite coreflection is not the nested lift")
                checked += 1
    return checked


def suite_universal(C: Corpus) -> int:
    for T, L, h, k in C.squares:
        Ff = factorize(T.f)
        j = free_lens_universal(Ff, L, h, k).j
        _expect(oracles.free_lens_arrows(Ff, L, h, k) == [j], "free lens arrow is not the unique solution")
        Fg = factorize(L.f)
        j = cofree_coref_universal(T, Fg, h, k).j
        _expect(oracles.cofree_coref_arrows(T, Fg, h, k) == [j], "cofree coreflection arrow is not the unique solution")
    return 2 * len(C.squares)


def suite_generation(C: Corpus) -> int:
    for f in C.functors:
        lenses = enumerate_lens_structures(f, C.guards.search)
        generated = enumerate_generated_structures(f, "lens", C.guards.search)
        _expect(generated.count == lenses.count and generated.tables() == lenses.tables(), f"{f!r}: lens counts differ")
        dopf = enumerate_generated_structures(f, "dopf", C.guards.search)
        _expect(dopf.count in (0, 1), f"{f!r}: {dopf.count} dopf structures")
        _expect((dopf.count == 1) == classify_functor(f).discrete_opfibration, f"{f!r}: dopf flag disagrees")
        sopf = enumerate_generated_structures(f, "sopf", C.guards.search)
        expected = {L.table for L in lenses.structures if is_split_opfibration(L)[0]}
        _expect(sopf.tables() == expected, f"{f!r}: sopf variant selects the wrong lenses")
    return len(C.functors)


def suite_fixtures(C: Corpus | None = None) -> int:
    d2 = oracles.twisted_structures(catalog.delta(3, 2))
    _expect(len(d2) == 1, f"delta2 carries {len(d2)} twisted coreflections")
    d1 = oracles.twisted_structures(catalog.delta(2, 1))
    _expect(len(d1) == 1, f"delta1 carries {len(d1)} twisted coreflections")
    bex = enumerate_split_coreflections(catalog.bex_inclusion())
    _expect(len(bex) >= 1 and all(is_twisted(S)[0] for S in bex), "Bex coreflection is not twisted")
    nt = enumerate_split_coreflections(catalog.non_twisted_inclusion())
    _expect(len(nt) == 1, "NonTwisted should carry exactly one coreflection")
    ok, why = is_twisted(nt[0])
    _expect(not ok and why.morphism == "u", "NonTwisted coreflection should fail at u")
    return 4


def suite_comprehensive(C: Corpus) -> int:
    checked = 0
    initial, dopf = [], []
    for f in C.functors:
        cf = comprehensive_factorize(f)
        _expect(cf.dopf_part @ cf.initial_part == f, f"{f!r}: factors do not compose to f")
        _expect(is_initial(cf.initial_part), f"{f!r}: first factor is not initial")
        _expect(is_discrete_opfibration(cf.dopf_part), f"{f!r}: second factor is not a discrete opfibration")
        checked += 1
        if is_initial(f):
            initial.append(f)
        if is_discrete_opfibration(f):
            dopf.append(f)
    for F in initial:
        for G in dopf:
            if _size(F) + _size(G) > ORTHOGONAL_MORPHISMS:
                continue
            for h, k in enumerate_squares(F, G, C.guards.search):
                j = orthogonal_lift(F, G, h, k)
                _expect(oracles.fillers(F, G, h, k) == [j], "orthogonal lift is not the unique filler")
                checked += 1
    return checked


def suite_algebras(C: Corpus) -> int:
    checked = 0
    twisted, lenses = defaultdict(list), defaultdict(list)
    for T in C.twisted:
        twisted[T.f].append(T)
    for L in C.lenses:
        lenses[L.f].append(L)
    for f in C.functors:
        ts, ls = twisted.get(f, []), lenses.get(f, [])
        for T in ts:
            _expect(coalgebra_to_twisted(f, twisted_to_coalgebra(T).beta) == T, f"{f!r}: coalgebra round trip")
        for L in ls:
            _expect(algebra_to_lens(f, lens_to_algebra(L).alpha) == L, f"{f!r}: algebra round trip")
        betas = oracles.coalgebras(f)
        _expect({coalgebra_to_twisted(f, b) for b in betas} == set(ts) and len(betas) == len(ts), f"{f!r}: betas")
        alphas = oracles.algebras(f)
        _expect({algebra_to_lens(f, a) for a in alphas} == set(ls) and len(alphas) == len(ls), f"{f!r}: alphas")
        checked += 1
    return checked


def suite_coherence(C: Corpus) -> int:
    checked = 0
    for T, L, h, k in C.squares:
        if not is_discrete_opfibration(L.f) or L != lens_from_dopf(L.f):
            continue
        _expect(lift(T, L, h, k).j == orthogonal_lift(T.f, L.f, h, k), "lift differs from the orthogonal lift")
        checked += 1
    return checked


def suite_cli(C: Corpus | None = None) -> int:
    from .cli.selfcheck import cli_contract

    return cli_contract()


SUITES = {
    "factorisation": (1, 60, suite_factorisation),
    "twistedness": (2, 60, suite_twistedness),
    "lifts": (3, 120, suite_lifts),
    "axioms": (4, 120, suite_axioms),
    "universal": (5, 180, suite_universal),
    "generation": (6, 120, suite_generation),
    "fixtures": (7, 5, suite_fixtures),
    "comprehensive": (8, 60, suite_comprehensive),
    "algebras": (9, 180, suite_algebras),
    "coherence": (10, 60, suite_coherence),
    "cli": (11, 30, suite_cli),
}


def run_suite(name: str) -> SuiteResult:
    number, budget, body = SUITES[name]
    start = time.perf_counter()
    try:
        data = None if name in ("fixtures", "cli") else corpus()
        checked = body(data)
        ok, detail = True, ""
    except Failure as exc:
        checked, ok, detail = 0, False, str(exc)
    return SuiteResult(number, name, ok, checked, time.perf_counter() - start, budget, detail)


def run_all(names=None) -> list:
    return [run_suite(name) for name in (names or SUITES)]
