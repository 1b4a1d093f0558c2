import itertools

import pytest
from hypothesis import given, settings

from catlift.coreflections import (
    check_split_coreflection,
    compose_coreflections,
    coref_cell_witness,
    coreflection_from_initial,
    enumerate_split_coreflections,
    ensure_twisted,
    fibre_sum,
    identity_coreflection,
    is_coref_cell,
    is_twisted,
    make_coreflection,
    pullback_coreflection,
    split_to_twisted,
    twisted_from_pushout,
)
from catlift.errors import PreconditionError
from catlift.fincat import (
    catalog,
    discrete,
    discrete_of,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    make_category,
    make_functor,
    validate_category,
)

from strategies import GUARD, functors, small_functors

TWO, THREE = catalog.two(), catalog.three()
D1, D2 = catalog.delta(2, 1), catalog.delta(3, 2)


def naive_coreflections(f) -> set:
    """(q, counit) pairs found by trying every functor and every family of components."""
    found = set()
    B = f.cod
    for q in enumerate_functors(B, f.dom, GUARD):
        pools = [B.hom(f.ob(q.ob(x)), x) for x in B.objects]
        for chosen in itertools.product(*pools):
            S = make_coreflection(f, q, dict(zip(B.objects, chosen)))
            if not check_split_coreflection(S):
                found.add(S)
    return found


def naive_twisted(S) -> bool:
    """Twistedness straight from the definition, scanning every hom-set."""
    A, B, f, q = S.dom, S.cod, S.f, S.q
    for u in B.morphisms:
        if A.is_identity(q(u)):
            continue
        x, y = B.morphisms[u]
        candidates = 0
        for c in B.morphisms:
            if B.morphisms[c] != (x, f.ob(q.ob(x))):
                continue
            if B.compose(c, S.counit(x)) == B.identity[f.ob(q.ob(x))] and B.compose(S.counit(y), f(q(u)), c) == u:
                candidates += 1
        if candidates != 1:
            return False
    return True


def test_identity_coreflection():
    assert check_split_coreflection(identity_coreflection(THREE)) == []


def test_delta1_coreflection():
    S = make_coreflection(D1, catalog.bang(TWO), {"0": "1_0", "1": "01"})
    assert check_split_coreflection(S) == []
    assert enumerate_split_coreflections(D1) == [S]


def test_delta0_has_no_coreflection():
    assert enumerate_split_coreflections(catalog.delta(2, 0)) == []
    S = make_coreflection(catalog.delta(2, 0), catalog.bang(TWO), {"0": "1_0", "1": "1_1"})
    assert check_split_coreflection(S)


def test_delta2_has_one_twisted_coreflection():
    [S] = enumerate_split_coreflections(D2)
    assert S.q == catalog.sigma1()
    ok, witness = is_twisted(S)
    assert ok and witness.qbar == {"01": "1_0", "02": "1_0"}


@settings(max_examples=80, deadline=None)
@given(functors)
def test_enumeration_matches_naive_oracle(f):
    assert set(enumerate_split_coreflections(f, GUARD)) == naive_coreflections(f)


@settings(max_examples=80, deadline=None)
@given(functors)
def test_twistedness_matches_definition_and_pushout_criterion(f):
    for S in enumerate_split_coreflections(f, GUARD):
        ok, _ = is_twisted(S)
        assert ok == naive_twisted(S)
        assert ok == split_to_twisted(S).is_iso


def test_non_twisted_witness():
    [S] = enumerate_split_coreflections(catalog.non_twisted_inclusion())
    assert S.q.ob("x") == "0" and S.counit("x") == "e"
    ok, why = is_twisted(S)
    assert not ok
    assert why.morphism == "u" and why.candidates == ()
    with pytest.raises(PreconditionError):
        ensure_twisted(S)


def test_bex_is_twisted():
    [S] = enumerate_split_coreflections(catalog.bex_inclusion())
    ok, witness = is_twisted(S)
    assert ok
    assert witness.qbar == {"u": "r", "us": "1_L"}


def test_discrete_domain_is_twisted_vacuously():
    f = make_functor(catalog.one(), TWO, {"*": "0"})
    for S in enumerate_split_coreflections(f):
        assert is_twisted(S)[0]
        assert split_to_twisted(S).is_iso


def test_compose_with_identity():
    [S] = enumerate_split_coreflections(D2)
    assert compose_coreflections(identity_coreflection(TWO), S) == S
    assert compose_coreflections(S, identity_coreflection(THREE)) == S


def test_compose_delta1_then_delta2():
    [S1] = enumerate_split_coreflections(D1)
    [S2] = enumerate_split_coreflections(D2)
    S = compose_coreflections(S1, S2)
    assert S.f.ob("*") == "0"
    assert S.q == catalog.bang(TWO) @ catalog.sigma1()
    assert check_split_coreflection(S) == []
    assert {x: S.counit(x) for x in THREE.objects} == {"0": "1_0", "1": "01", "2": "02"}
    assert is_twisted(S)[0]


def test_coreflection_cells():
    [S] = enumerate_split_coreflections(D2)
    assert is_coref_cell(identity_functor(TWO), identity_functor(THREE), S, S)
    # (D2, 1) commutes as a square into the identity coreflection, but h q != p k
    assert coref_cell_witness(D2, identity_functor(THREE), S, identity_coreflection(THREE)) == ("hq = pk",)


def test_coreflection_from_initial():
    A0 = discrete(["p", "q"])
    assert coreflection_from_initial(identity_functor(A0)) == identity_coreflection(A0)
    [expected] = enumerate_split_coreflections(D1)
    assert coreflection_from_initial(D1) == expected
    both_to_zero = make_functor(catalog.disc_two(), TWO, {"0": "0", "1": "0"})
    with pytest.raises(PreconditionError, match="disconnected"):
        coreflection_from_initial(both_to_zero)


def test_pullback_coreflection_along_identity():
    [S] = enumerate_split_coreflections(D2)
    P = pullback_coreflection(S, identity_functor(TWO))
    assert check_split_coreflection(P) == []
    assert find_isomorphism(P.cod, THREE) is not None


def test_fibre_sum_is_the_sum_of_fibres():
    [S] = enumerate_split_coreflections(catalog.bex_inclusion())
    F = fibre_sum(S)
    assert check_split_coreflection(F) == []
    assert F.dom.is_discrete
    kept = {m for m in S.cod.morphisms if S.dom.is_identity(S.q(m))}
    assert set(F.cod.morphisms) == kept
    assert validate_category(F.cod) == []


def test_twisted_from_pushout_examples():
    X = make_category(["a0", "t", "a1"], [("e", "a0", "t")])
    A0, _ = discrete_of(TWO)
    f = make_functor(A0, X, {"0": "a0", "1": "a1"})
    built = twisted_from_pushout(f, TWO)
    assert check_split_coreflection(built.coref) == []
    assert is_twisted(built.coref)[0]
    assert len(built.coref.cod.nonidentity) == 2

    split = make_category(
        ["L", "M", "R"],
        [("s", "L", "M"), ("r", "M", "L"), ("sr", "M", "M")],
        {("r", "s"): "1_L", ("s", "r"): "sr", ("sr", "sr"): "sr", ("r", "sr"): "r", ("sr", "s"): "s"},
    )
    g = make_functor(A0, split, {"0": "L", "1": "R"})
    bex = twisted_from_pushout(g, TWO)
    assert is_twisted(bex.coref)[0]
    assert find_isomorphism(bex.coref.cod, catalog.bex()) is not None

    disc = identity_functor(A0)
    trivial = twisted_from_pushout(disc, catalog.disc_two())
    assert trivial.coref.cod.is_discrete and is_twisted(trivial.coref)[0]


def test_split_to_twisted_examples():
    [S] = enumerate_split_coreflections(D2)
    assert split_to_twisted(S).is_iso
    [N] = enumerate_split_coreflections(catalog.non_twisted_inclusion())
    result = split_to_twisted(N)
    assert not result.is_iso
    assert is_twisted(result.twisted)[0]
    # the comparison misses u: x -> a1
    assert "u" not in set(result.comparison.mor_map.values())


def test_every_small_coreflection_is_valid():
    for f in small_functors():
        for S in enumerate_split_coreflections(f, GUARD):
            assert check_split_coreflection(S) == []
