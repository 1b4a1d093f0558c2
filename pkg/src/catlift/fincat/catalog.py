"""Fixture categories and the standard functors between them."""

from __future__ import annotations

from .category import FinCategory, FinFunctor, discrete, make_category, make_functor, ordinal


def one() -> FinCategory:
    return discrete(["*"], name="One")


def two() -> FinCategory:
    return ordinal(2, name="Two")


def three() -> FinCategory:
    return ordinal(3, name="Three")


def disc_two() -> FinCategory:
    return discrete(["0", "1"], name="DiscTwo")


def non_twisted() -> FinCategory:
    """A split coreflection of ``Two`` which is not twisted."""
    return make_category(
        ["a0", "a1", "x"],
        [("w", "a0", "a1"), ("e", "a0", "x"), ("u", "x", "a1")],
        {("u", "e"): "w"},
        name="NonTwisted",
    )


def two_lifts() -> FinCategory:
    """Two candidate lifts of the arrow of ``Two`` at ``a``."""
    return make_category(
        ["a", "b", "c"],
        [("u1", "a", "b"), ("u2", "a", "c"), ("v", "b", "c")],
        {("v", "u1"): "u2"},
        name="TwoLifts",
    )


def bex() -> FinCategory:
    """Generated by ``s: L -> M``, ``r: M -> L``, ``u: M -> R`` with ``rs = 1`` and ``usr = u``.

    The remaining morphisms are the idempotent ``sr`` on ``M`` and ``us: L -> R``.
    """
    return make_category(
        ["L", "M", "R"],
        [("s", "L", "M"), ("r", "M", "L"), ("sr", "M", "M"), ("u", "M", "R"), ("us", "L", "R")],
        {
            ("r", "s"): "1_L",
            ("s", "r"): "sr",
            ("sr", "sr"): "sr",
            ("r", "sr"): "r",
            ("sr", "s"): "s",
            ("u", "s"): "us",
            ("u", "sr"): "u",
            ("us", "r"): "u",
        },
        name="Bex",
    )


def fixtures() -> list:
    """The seven catalog categories in their fixed order."""
    return [one(), two(), three(), disc_two(), non_twisted(), two_lifts(), bex()]


# Standard functors.  ``delta(i)`` skips ``i`` and ``sigma`` collapses.


def delta(n: int, i: int) -> FinFunctor:
    """The coface ``[n-1] -> [n]`` missing ``i``; ``n`` counts objects of the target."""
    src = one() if n == 2 else ordinal(n - 1, name=_ordinal_name(n - 1))
    tgt = ordinal(n, name=_ordinal_name(n))
    if n == 2:
        return make_functor(src, tgt, {"*": str(1 - i)})
    index = [k for k in range(n) if k != i]
    obj = {str(k): str(index[k]) for k in range(n - 1)}
    mor = {f"{j}{k}": f"{index[j]}{index[k]}" for j in range(n - 1) for k in range(j + 1, n - 1)}
    return make_functor(src, tgt, obj, mor)


def _ordinal_name(n: int) -> str:
    return {2: "Two", 3: "Three"}.get(n, str(n))


def bang(c: FinCategory) -> FinFunctor:
    """The unique functor to ``One``."""
    return make_functor(c, one(), {x: "*" for x in c.objects}, {m: "1_*" for m in c.morphisms})


def sigma1() -> FinFunctor:
    """``Three -> Two`` collapsing 1 and 2."""
    return make_functor(three(), two(), {"0": "0", "1": "1", "2": "1"}, {"01": "01", "02": "01", "12": "1_1"})


def two_lifts_over_two() -> FinFunctor:
    return make_functor(
        two_lifts(), two(), {"a": "0", "b": "1", "c": "1"}, {"u1": "01", "u2": "01", "v": "1_1"}
    )


def non_twisted_inclusion() -> FinFunctor:
    return make_functor(two(), non_twisted(), {"0": "a0", "1": "a1"}, {"01": "w"})


def bex_inclusion() -> FinFunctor:
    return make_functor(two(), bex(), {"0": "L", "1": "R"}, {"01": "us"})
