import pytest
from hypothesis import given, settings, strategies as st

from catlift.cli.corpus import (
    CorpusSpec,
    Guards,
    acceptance_corpus,
    enumerate_categories,
    generate_categories,
    generate_corpus,
)
from catlift.fincat import catalog, is_isomorphic, validate_category


def test_catalog_mode_is_the_seven_fixtures():
    cats = generate_categories(CorpusSpec(mode="catalog"))
    assert [c.label for c in cats] == ["One", "Two", "Three", "DiscTwo", "NonTwisted", "TwoLifts", "Bex"]


def test_one_object_with_at_most_one_arrow():
    # the trivial monoid, the idempotent e.e = e and the involution e.e = 1
    cats = enumerate_categories(1, 1)
    assert len(cats) == 3
    tables = sorted(c.comp.get(("m0", "m0"), "-") for c in cats)
    assert tables == ["-", "1_x0", "m0"]


@pytest.mark.parametrize("k, count", [(0, 1), (1, 2), (2, 7), (3, 35)])
def test_monoid_counts(k, count):
    """Monoids of order 1..4 up to isomorphism (OEIS A058129)."""
    assert sum(1 for c in enumerate_categories(1, k) if len(c.nonidentity) == k) == count


@pytest.mark.parametrize("bound, count", [(1, 11), (2, 54)])
def test_exhaustive_counts(bound, count):
    assert len(enumerate_categories(3, bound)) == count


def test_exhaustive_categories_are_valid_and_pairwise_distinct():
    cats = enumerate_categories(3, 2)
    for c in cats:
        assert validate_category(c) == []
    for i, c in enumerate(cats):
        for d in cats[i + 1 :]:
            assert not is_isomorphic(c, d)


def test_exhaustive_mode_contains_the_small_fixtures():
    cats = enumerate_categories(3, 3)
    for fixture in (catalog.one(), catalog.two(), catalog.three(), catalog.disc_two(), catalog.two_lifts(), catalog.non_twisted()):
        assert any(is_isomorphic(fixture, c) for c in cats)


def test_exhaustive_mode_is_deterministic():
    first = generate_categories(CorpusSpec(mode="exhaustive", max_objects=2, max_nonidentity_morphisms=2))
    second = generate_categories(CorpusSpec(mode="exhaustive", max_objects=2, max_nonidentity_morphisms=2))
    assert [c.label for c in first] == [c.label for c in second]
    assert first == second


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_mode_is_seed_reproducible(seed):
    spec = CorpusSpec(mode="random", seed=seed, count=5)
    first, second = generate_categories(spec), generate_categories(spec)
    assert first == second and [c.label for c in first] == [c.label for c in second]
    for c in first:
        assert validate_category(c) == []
        assert len(c.objects) <= spec.max_objects


def test_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(mode="everything")
    with pytest.raises(ValueError):
        CorpusSpec(max_objects=0)


def test_catalog_corpus_layers():
    C = generate_corpus(CorpusSpec(mode="catalog"))
    assert len(C.functors) == 303
    assert len(C.coreflections) == 26
    assert len(C.twisted) == 23
    for T, L, h, k in C.squares[:200]:
        assert k @ T.f == L.f @ h


def test_acceptance_corpus_shape():
    C = acceptance_corpus()
    assert len(C.categories) == 280
    assert len(C.functors) == 8443
    assert len(C.coreflections) == 74
    assert len(C.twisted) == 71
    assert len(C.lenses) == 2745
    assert len(C.squares) == 17676


def test_guards_bound_the_functor_layer():
    small = generate_corpus(CorpusSpec(mode="exhaustive", max_objects=2, max_nonidentity_morphisms=1), Guards(functor_morphisms=4))
    for f in small.functors:
        assert len(f.dom.morphisms) + len(f.cod.morphisms) <= 4
