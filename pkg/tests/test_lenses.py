import itertools

import pytest
from hypothesis import given, settings

from catlift.errors import PreconditionError
from catlift.fincat import catalog, classify_functor, enumerate_functors, identity_functor, make_functor
from catlift.lenses import (
    DeltaLens,
    check_delta_lens,
    compose_lenses,
    enumerate_generated_structures,
    enumerate_lens_structures,
    identity_lens,
    induce_into_tabulator,
    is_lens_cell,
    is_split_opfibration,
    lens_cell_witness,
    lens_from_diagram,
    lens_from_dopf,
    lift_index,
    make_lens,
    tabulator,
)

from strategies import GUARD, functors, small_functors

TWO = catalog.two()
BANG2 = catalog.bang(TWO)
TL = catalog.two_lifts_over_two()


def naive_lenses(F) -> set:
    """Lift tables found by trying every DL1-compatible choice everywhere."""
    index = lift_index(F)
    pools = [[w for w in F.dom.out_of(a) if F(w) == u] for a, u in index]
    found = set()
    for chosen in itertools.product(*pools):
        L = DeltaLens(F, dict(zip(index, chosen)))
        if not check_delta_lens(L):
            found.add(L.table)
    return found


def test_identity_lens_is_valid():
    assert check_delta_lens(identity_lens(catalog.three())) == []


def test_bang_has_exactly_one_lens():
    structures = enumerate_lens_structures(BANG2)
    assert structures.count == 1
    assert check_delta_lens(structures.structures[0]) == []


def test_dl2_violation():
    L = make_lens(BANG2, {("0", "1_*"): "01", ("1", "1_*"): "1_1"})
    report = check_delta_lens(L)
    assert [(v.law, v.witness) for v in report] == [("DL2", ("0",))]


def test_dl1_and_totality_violations():
    assert check_delta_lens(DeltaLens(TL, {}))[0].law == "totality"
    L = make_lens(TL, {("a", "01"): "v"})
    assert check_delta_lens(L)[0].law == "DL1"


@pytest.mark.parametrize(
    "F, count",
    [(BANG2, 1), (identity_functor(TWO), 1), (TL, 2), (catalog.sigma1(), 2), (catalog.delta(2, 1), 0)],
    ids=["bang", "identity", "twolifts", "sigma1", "delta1"],
)
def test_lens_counts(F, count):
    assert enumerate_lens_structures(F).count == count


@settings(max_examples=80, deadline=None)
@given(functors)
def test_lens_enumeration_matches_naive_oracle(F):
    assert enumerate_lens_structures(F, GUARD).tables() == naive_lenses(F)


def test_generated_examples():
    assert enumerate_generated_structures(BANG2, "lens").tables() == enumerate_lens_structures(BANG2).tables()
    assert enumerate_generated_structures(catalog.delta(2, 0), "dopf").count == 1
    assert enumerate_generated_structures(BANG2, "dopf").count == 0
    with pytest.raises(ValueError):
        enumerate_generated_structures(BANG2, "cartesian")


def test_sopf_variant_selects_the_opcartesian_lens():
    sopf = enumerate_generated_structures(TL, "sopf")
    assert sopf.count == 1
    assert sopf.structures[0]("a", "01") == "u1"


@settings(max_examples=80, deadline=None)
@given(functors)
def test_generated_structures_agree(F):
    lenses = enumerate_lens_structures(F, GUARD)
    assert enumerate_generated_structures(F, "lens", GUARD).tables() == lenses.tables()
    dopf = enumerate_generated_structures(F, "dopf", GUARD)
    assert dopf.count == int(classify_functor(F).discrete_opfibration)
    sopf = {L.table for L in lenses.structures if is_split_opfibration(L)[0]}
    assert enumerate_generated_structures(F, "sopf", GUARD).tables() == sopf


def test_compose_with_identity():
    for L in enumerate_lens_structures(TL).structures:
        assert compose_lenses(identity_lens(L.dom), L) == L
        assert compose_lenses(L, identity_lens(L.cod)) == L


def test_compose_dopf_lenses():
    d0 = catalog.delta(2, 0)
    d = catalog.delta(3, 0)
    composite = make_functor(catalog.one(), catalog.three(), {"*": "2"})
    first, second = lens_from_dopf(d0), lens_from_dopf(d)
    assert compose_lenses(first, second) == lens_from_dopf(composite)


def test_compose_spot_check():
    """theta(a, u) = L1(a, L2(f1 a, u)) recomputed by hand on sigma1 then the identity."""
    L1 = enumerate_lens_structures(catalog.sigma1()).structures[0]
    L2 = enumerate_lens_structures(BANG2).structures[0]
    theta = compose_lenses(L1, L2)
    for a in L1.dom.objects:
        for u in theta.cod.out_of("*"):
            assert theta(a, u) == L1(a, L2(L1.f.ob(a), u))
    assert check_delta_lens(theta) == []


def test_lens_from_dopf():
    assert lens_from_dopf(identity_functor(TWO)) == identity_lens(TWO)
    L = lens_from_dopf(catalog.delta(2, 0))
    assert all(L.dom.is_identity(w) for w in L.lifts.values())
    with pytest.raises(PreconditionError) as info:
        lens_from_dopf(BANG2)
    assert info.value.witness is not None


def test_split_opfibration_examples():
    assert is_split_opfibration(lens_from_dopf(catalog.delta(2, 0))) == (True, None)
    assert is_split_opfibration(identity_lens(TWO)) == (True, None)
    L = make_lens(TL, {("a", "01"): "u2"})
    ok, witness = is_split_opfibration(L)
    assert not ok
    assert witness[:3] == ("a", "01", "u1")
    assert witness[-1] == []


def test_lens_cells():
    L = enumerate_lens_structures(TL).structures[0]
    assert is_lens_cell(identity_functor(L.dom), identity_functor(L.cod), L, L)
    tab = tabulator(L)
    assert is_lens_cell(tab.pi_a, tab.pi_b, identity_lens(tab.category), L)
    first, second = enumerate_lens_structures(TL).structures
    assert lens_cell_witness(identity_functor(TL.dom), identity_functor(TL.cod), first, second) == ("a", "01")


def test_tabulator_examples():
    C = catalog.three()
    assert tabulator(identity_lens(C)).category == C
    d0 = catalog.delta(2, 0)
    assert tabulator(lens_from_dopf(d0)).category.morphisms == d0.dom.morphisms
    lam = tabulator(enumerate_lens_structures(BANG2).structures[0]).category
    assert lam.is_discrete and lam.objects == ("0", "1")


@pytest.mark.parametrize("index", [0, 1])
def test_tabulator_round_trip(index):
    L = enumerate_lens_structures(TL).structures[index]
    tab = tabulator(L)
    assert lens_from_diagram(tab.pi_a, L.f) == L
    j = induce_into_tabulator(L, tab.pi_a, tab.pi_b)
    assert j == identity_functor(tab.category)


def test_induce_into_tabulator_matches_brute_force():
    L = enumerate_lens_structures(TL).structures[1]
    tab = tabulator(L)
    X = TWO
    for h in enumerate_functors(X, L.dom):
        k = L.f @ h
        if lens_cell_witness(h, k, identity_lens(X), L) is not None:
            with pytest.raises(PreconditionError):
                induce_into_tabulator(L, h, k)
            continue
        j = induce_into_tabulator(L, h, k)
        solutions = [J for J in enumerate_functors(X, tab.category) if tab.pi_a @ J == h]
        assert solutions == [j]


def test_lens_from_diagram_rejects_bad_input():
    d0 = catalog.delta(2, 0)
    assert lens_from_diagram(identity_functor(d0.dom), d0) == lens_from_dopf(d0)
    with pytest.raises(PreconditionError):
        lens_from_diagram(identity_functor(TWO), BANG2)


def test_every_small_lens_satisfies_its_laws():
    for F in small_functors()[:300]:
        for L in enumerate_lens_structures(F, GUARD).structures:
            assert check_delta_lens(L) == []
