import pytest
from hypothesis import given, settings

from catlift.errors import ConstructionError, NonUnique, SizeLimitExceeded
from catlift.fincat import (
    FinCategory,
    FinFunctor,
    SizeGuard,
    catalog,
    classify_functor,
    comma_category,
    comprehensive_factorize,
    discrete_of,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    is_initial,
    make_category,
    make_functor,
    orthogonal_lift,
    ordinal,
    pullback,
    pushout_along_discrete,
    rename,
    validate_category,
    validate_functor,
)
from catlift.fincat.classify import find_fillers

from strategies import GUARD, categories, functors, naive_functors, small_functors

TWO = catalog.two()
DELTA1 = catalog.delta(2, 1)
DELTA0 = catalog.delta(2, 0)
BANG2 = catalog.bang(TWO)


@pytest.mark.parametrize("c", catalog.fixtures(), ids=lambda c: c.label)
def test_fixtures_are_valid(c):
    assert validate_category(c) == []


def test_fixture_sizes():
    sizes = {c.label: (len(c.objects), len(c.morphisms)) for c in catalog.fixtures()}
    assert sizes == {
        "One": (1, 1),
        "Two": (2, 3),
        "Three": (3, 6),
        "DiscTwo": (2, 2),
        "NonTwisted": (3, 6),
        "TwoLifts": (3, 6),
        "Bex": (3, 8),
    }


def test_ordinal_three_table():
    c = ordinal(3)
    assert c.compose("12", "01") == "02"
    assert tuple(c.hom("0", "2")) == ("02",)


def test_corrupted_ordinal_reports_witness():
    c = ordinal(3)
    table = dict(c.comp)
    table[("12", "01")] = "01"
    bad = FinCategory(c.objects, c.morphisms, c.identity, table, "bad")
    report = validate_category(bad)
    assert report
    assert any(v.witness[:2] == ("12", "01") for v in report)


def test_make_category_rejects_duplicates():
    with pytest.raises(ConstructionError):
        make_category(["a", "a"], [])
    with pytest.raises(ConstructionError):
        make_category(["a"], [("f", "a", "a"), ("f", "a", "a")])
    with pytest.raises(ConstructionError):
        make_category(["a"], [("f", "a", "b")])


def test_missing_composite_is_a_totality_violation():
    c = make_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    assert [v.law for v in validate_category(c)][:1] == ["totality"]


def test_functor_validation():
    assert validate_functor(identity_functor(ordinal(3))) == []
    assert validate_functor(DELTA1) == []
    broken = FinFunctor(TWO, TWO, {"0": "0", "1": "1"}, {"1_0": "1_0", "1_1": "1_1", "01": "1_0"})
    assert validate_functor(broken)


@pytest.mark.parametrize(
    "A, B, count",
    [(catalog.one(), TWO, 2), (TWO, TWO, 3), (catalog.disc_two(), TWO, 4), (TWO, catalog.one(), 1), (ordinal(3), TWO, 4)],
    ids=["1-2", "2-2", "disc2-2", "2-1", "3-2"],
)
def test_functor_counts(A, B, count):
    assert len(list(enumerate_functors(A, B))) == count


@settings(max_examples=60, deadline=None)
@given(categories, categories)
def test_enumeration_matches_naive_oracle(A, B):
    fast = list(enumerate_functors(A, B, GUARD))
    slow = naive_functors(A, B)
    assert len(fast) == len(set(fast))
    assert set(fast) == set(slow)


def test_enumeration_is_deterministic():
    A, B = catalog.two_lifts(), catalog.three()
    assert list(enumerate_functors(A, B)) == list(enumerate_functors(A, B))


def test_size_guard():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_functors(catalog.bex(), catalog.bex(), SizeGuard(3, 6)))
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_functors(catalog.three(), catalog.bex(), SizeGuard(3, 8, max_steps=3)))


def test_size_guard_from_env(monkeypatch):
    monkeypatch.setenv("CATLIFT_SIZE_GUARD", "4,20,99")
    g = SizeGuard.from_env()
    assert (g.max_objects, g.max_morphisms, g.max_steps) == (4, 20, 99)
    monkeypatch.setenv("CATLIFT_SIZE_GUARD", "nonsense")
    with pytest.raises(ValueError):
        SizeGuard.from_env()


def test_classification_examples():
    d1 = classify_functor(DELTA1)
    assert (d1.fully_faithful, d1.bijective_on_objects, d1.initial, d1.discrete_opfibration) == (True, False, True, False)
    _, iota = discrete_of(TWO)
    c = classify_functor(iota)
    assert (c.bijective_on_objects, c.identity_on_objects, c.fully_faithful, c.initial) == (True, True, False, False)
    b = classify_functor(BANG2)
    assert (b.fully_faithful, b.discrete_opfibration, b.initial) == (False, False, True)


@settings(max_examples=80, deadline=None)
@given(functors)
def test_classification_implications(F):
    c = classify_functor(F)
    if c.isomorphism:
        assert c.fully_faithful and c.bijective_on_objects
    if c.identity_on_objects:
        assert c.bijective_on_objects


def test_discrete_of():
    A0, iota = discrete_of(ordinal(3))
    assert A0.is_discrete and A0.objects == ("0", "1", "2")
    assert classify_functor(iota).identity_on_objects
    one = catalog.one()
    assert discrete_of(one) == (one, identity_functor(one))


def test_comma_examples():
    c = comma_category(DELTA1, "1")
    assert len(c.objects) == 1 and c.nonidentity == ()
    c = comma_category(identity_functor(TWO), "1")
    assert len(c.objects) == 2 and len(c.nonidentity) == 1
    c = comma_category(BANG2, "*")
    assert len(c.objects) == 2 and len(c.nonidentity) == 1


def test_pullback_examples():
    P = pullback(DELTA1, DELTA0)
    assert P.category.objects == ()
    square = pullback(identity_functor(TWO), identity_functor(TWO))
    assert find_isomorphism(square.category, TWO) is not None


@settings(max_examples=40, deadline=None)
@given(functors, functors)
def test_constructed_categories_are_valid(F, G):
    if F.cod == G.cod:
        P = pullback(F, G)
        assert validate_category(P.category) == []
        assert F @ P.proj_a == G @ P.proj_b
    for b in F.cod.objects:
        assert validate_category(comma_category(F, b)) == []


def _initial_objects_example():
    X = make_category(["a0", "t", "a1"], [("e", "a0", "t")], name="X")
    A0, iota = discrete_of(TWO)
    f = make_functor(A0, X, {"0": "a0", "1": "a1"})
    return f, iota


def test_pushout_along_identity_leg():
    A0, iota = discrete_of(TWO)
    P = pushout_along_discrete(identity_functor(A0), iota)
    assert find_isomorphism(P.category, TWO) is not None


def test_pushout_of_initial_objects():
    f, iota = _initial_objects_example()
    P = pushout_along_discrete(f, iota)
    B = P.category
    assert sorted(B.objects) == ["a0", "a1", "t"]
    assert len(B.nonidentity) == 2
    assert [B.morphisms[m] for m in B.nonidentity if m in f.cod.morphisms] == [("a0", "t")]
    s2 = [m for m in B.nonidentity if m.startswith("[")]
    assert [B.morphisms[m] for m in s2] == [("a0", "a1")]
    assert validate_category(B) == []


def _bex_pushout():
    X = make_category(
        ["L", "M", "R"],
        [("s", "L", "M"), ("r", "M", "L"), ("sr", "M", "M")],
        {("r", "s"): "1_L", ("s", "r"): "sr", ("sr", "sr"): "sr", ("r", "sr"): "r", ("sr", "s"): "s"},
        name="Split",
    )
    A0, iota = discrete_of(TWO)
    f = make_functor(A0, X, {"0": "L", "1": "R"})
    return pushout_along_discrete(f, iota)


def test_pushout_reconstructs_bex():
    P = _bex_pushout()
    assert len(P.category.morphisms) == 8
    assert find_isomorphism(P.category, catalog.bex()) is not None


def test_pushout_universal_property():
    f, iota = _initial_objects_example()
    P = pushout_along_discrete(f, iota)
    C = catalog.three()
    cocones = 0
    for Px in enumerate_functors(f.cod, C, GUARD):
        for Q in enumerate_functors(iota.cod, C, GUARD):
            if Px @ f != Q @ iota:
                continue
            cocones += 1
            mediating = [
                M for M in enumerate_functors(P.category, C, GUARD) if M @ P.pi == Px and M @ P.f_prime == Q
            ]
            assert mediating == [P.induced(Px, Q)]
    assert cocones > 0


def test_pushout_is_a_pullback_when_top_is_boo():
    f, iota = _initial_objects_example()
    P = pushout_along_discrete(f, iota)
    back = pullback(P.f_prime, P.pi)
    assert find_isomorphism(back.category, iota.dom) is not None


def test_rename_round_trip():
    c = catalog.two_lifts()
    new, iso = rename(c, {"a": "p", "b": "q", "c": "r"}, {"u1": "x", "u2": "y", "v": "z"})
    assert validate_category(new) == []
    assert new.identity["p"] == "1_p"
    assert classify_functor(iso).isomorphism


@settings(max_examples=40, deadline=None)
@given(categories)
def test_rename_gives_isomorphic_copy(c):
    objects = {x: f"o{i}" for i, x in enumerate(c.objects)}
    morphisms = {m: f"m{i}" for i, m in enumerate(c.nonidentity)}
    new, iso = rename(c, objects, morphisms)
    assert find_isomorphism(c, new) is not None
    assert validate_functor(iso) == []


def test_comprehensive_examples():
    cf = comprehensive_factorize(identity_functor(TWO))
    assert find_isomorphism(cf.middle, TWO) is not None
    cf = comprehensive_factorize(BANG2)
    assert len(cf.middle.objects) == 1 and cf.dopf_part.dom == cf.middle
    assert classify_functor(cf.dopf_part).isomorphism
    cf = comprehensive_factorize(DELTA0)
    assert classify_functor(cf.initial_part).isomorphism
    assert len(cf.middle.objects) == 1


@settings(max_examples=80, deadline=None)
@given(functors)
def test_comprehensive_factorisation_property(f):
    cf = comprehensive_factorize(f)
    assert cf.dopf_part @ cf.initial_part == f
    c1, c2 = classify_functor(cf.initial_part), classify_functor(cf.dopf_part)
    assert c1.initial and c2.discrete_opfibration
    assert validate_category(cf.middle) == []


def test_orthogonal_lift_examples():
    assert orthogonal_lift(identity_functor(TWO), identity_functor(TWO), identity_functor(TWO), identity_functor(TWO)) == identity_functor(TWO)
    G = catalog.delta(2, 0)  # a discrete opfibration 1 -> 2
    F = identity_functor(catalog.one())
    j = orthogonal_lift(F, G, identity_functor(catalog.one()), G)
    assert j == identity_functor(catalog.one())


def test_orthogonal_lift_against_a_non_dopf_is_not_unique():
    # ! : 2 -> 1 is not a discrete opfibration; filling delta1 against it has two solutions.
    top = make_functor(catalog.one(), TWO, {"*": "0"})
    with pytest.raises(NonUnique):
        orthogonal_lift(DELTA1, BANG2, top, catalog.bang(TWO))


def test_jointly_monic():
    by_domain = {}
    for F in small_functors():
        by_domain.setdefault(F.dom, []).append(F)
    pairs = 0
    for C, out in by_domain.items():
        boo = [F for F in out if classify_functor(F).bijective_on_objects]
        dopf = [G for G in out if classify_functor(G).discrete_opfibration]
        if not boo or not dopf:
            continue
        for X in (catalog.two(), catalog.disc_two()):
            maps = list(enumerate_functors(X, C, GUARD))
            for F in boo:
                for G in dopf:
                    for H in maps:
                        for K in maps:
                            if H != K:
                                assert F @ H != F @ K or G @ H != G @ K
                                pairs += 1
    assert pairs > 0


def test_fillers_oracle_agrees_with_orthogonal_lift():
    F, G = DELTA1, catalog.delta(2, 0)
    for h in enumerate_functors(F.dom, G.dom):
        for k in enumerate_functors(F.cod, G.cod):
            if k @ F != G @ h:
                continue
            found = find_fillers(F, G, h, k)
            if is_initial(F):
                assert found == [orthogonal_lift(F, G, h, k)]
