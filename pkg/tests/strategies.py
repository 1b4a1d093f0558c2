"""Shared hypothesis strategies and brute-force helpers for the tests."""

import itertools
from functools import lru_cache

from hypothesis import strategies as st

from catlift.cli.corpus import enumerate_categories
from catlift.fincat import FinFunctor, SizeGuard, catalog, enumerate_functors, validate_functor

GUARD = SizeGuard(max_objects=3, max_morphisms=8)


@lru_cache(maxsize=None)
def small_categories() -> tuple:
    return tuple(catalog.fixtures()[:6]) + tuple(enumerate_categories(2, 2))


@lru_cache(maxsize=None)
def small_functors() -> tuple:
    out = []
    for A in small_categories():
        for B in small_categories():
            if len(A.morphisms) + len(B.morphisms) <= 8:
                out.extend(enumerate_functors(A, B, GUARD))
    return tuple(out)


categories = st.sampled_from(small_categories())
functors = st.sampled_from(small_functors())


def naive_functors(A, B) -> list:
    """Every functor A -> B by trying every assignment of objects and morphisms."""
    found = []
    for images in itertools.product(B.objects, repeat=len(A.objects)):
        obj = dict(zip(A.objects, images))
        pools = [B.hom(obj[A.src(m)], obj[A.tgt(m)]) for m in A.morphisms]
        for chosen in itertools.product(*pools):
            F = FinFunctor(A, B, obj, dict(zip(A.morphisms, chosen)))
            if not validate_functor(F):
                found.append(F)
    return found
