"""Brute-force functor search: the oracle behind every uniqueness check."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Mapping

from ..errors import SizeLimitExceeded
from .category import FinCategory, FinFunctor

ENV_VAR = "CATLIFT_SIZE_GUARD"


@dataclass(frozen=True)
class SizeGuard:
    """Bounds for exhaustive searches.

    ``max_objects`` and ``max_morphisms`` cap each category entering a search
    (identities count as morphisms); ``max_steps`` caps the number of
    candidate assignments tried before the search gives up.
    """

    max_objects: int = 3
    max_morphisms: int = 8
    max_steps: int = 2_000_000

    @classmethod
    def from_env(cls, default: "SizeGuard | None" = None) -> "SizeGuard":
        """Read ``CATLIFT_SIZE_GUARD`` as ``objects,morphisms[,steps]``."""
        base = default or cls()
        raw = os.environ.get(ENV_VAR, "").strip()
        if not raw:
            return base
        try:
            parts = [int(p) for p in raw.split(",")]
        except ValueError:
            raise ValueError(f"{ENV_VAR} must look like '4,12' or '4,12,1000000'") from None
        if len(parts) not in (2, 3) or min(parts) <= 0:
            raise ValueError(f"{ENV_VAR} must hold two or three positive integers")
        return cls(parts[0], parts[1], parts[2] if len(parts) == 3 else base.max_steps)

    def admit(self, *categories: FinCategory) -> None:
        for c in categories:
            if len(c.objects) > self.max_objects or len(c.morphisms) > self.max_morphisms:
                raise SizeLimitExceeded(
                    f"{c.label} exceeds the size guard "
                    f"({self.max_objects} objects / {self.max_morphisms} morphisms)"
                )


# Oracles that search over constructed categories such as Ef use this one.
ORACLE_GUARD = SizeGuard(max_objects=40, max_morphisms=400, max_steps=5_000_000)


def default_guard() -> SizeGuard:
    return SizeGuard.from_env()


def _schedule(A: FinCategory):
    """Interleave object and morphism assignments so checks fire early."""
    position = {x: i for i, x in enumerate(A.objects)}
    by_obj: dict = {x: [] for x in A.objects}
    for m in A.nonidentity:
        s, t = A.morphisms[m]
        last = s if position[s] >= position[t] else t
        by_obj[last].append(m)
    steps = []
    for x in A.objects:
        steps.append(("obj", x))
        steps.extend(("mor", m) for m in by_obj[x])
    order = {m: i for i, (kind, m) in enumerate(steps) if kind == "mor"}

    # Each composition law g.f = h is checked once its last piece is assigned.
    checks: dict = {m: [] for m in order}
    for (g, f), h in A.comp.items():
        if A.is_identity(g) or A.is_identity(f):
            continue
        pieces = [g, f] + ([] if A.is_identity(h) else [h])
        last = max(pieces, key=order.__getitem__)
        checks[last].append((g, f, h))
    return steps, checks


def enumerate_functors(
    A: FinCategory,
    B: FinCategory,
    size_guard: SizeGuard | None = None,
    *,
    objects: Mapping | None = None,
    morphisms: Mapping | None = None,
) -> Iterator[FinFunctor]:
    """Every functor ``A -> B`` in a deterministic order.

    ``objects`` and ``morphisms`` optionally restrict the admissible images
    of individual objects and morphisms of ``A``.
    """
    guard = size_guard or default_guard()
    guard.admit(A, B)
    steps, checks = _schedule(A)
    objects = objects or {}
    morphisms = morphisms or {}
    obj_map: dict = {}
    mor_map: dict = {}
    budget = [guard.max_steps]

    def candidates(kind, item):
        if kind == "obj":
            allowed = objects.get(item)
            return B.objects if allowed is None else [y for y in B.objects if y in set(allowed)]
        s, t = A.morphisms[item]
        pool = B.hom(obj_map[s], obj_map[t])
        allowed = morphisms.get(item)
        return pool if allowed is None else [n for n in pool if n in set(allowed)]

    def consistent(m):
        for g, f, h in checks[m]:
            image = mor_map[h] if h in mor_map else B.identity[obj_map[A.src(h)]]
            if B.comp[(mor_map[g], mor_map[f])] != image:
                return False
        return True

    def walk(i):
        if i == len(steps):
            full = dict(mor_map)
            for x in A.objects:
                full[A.identity[x]] = B.identity[obj_map[x]]
            ordered = {m: full[m] for m in A.morphisms}
            yield FinFunctor(A, B, dict(obj_map), ordered)
            return
        kind, item = steps[i]
        for c in candidates(kind, item):
            budget[0] -= 1
            if budget[0] < 0:
                raise SizeLimitExceeded(f"functor search {A.label} -> {B.label} exceeded {guard.max_steps} steps")
            if kind == "obj":
                obj_map[item] = c
                yield from walk(i + 1)
                del obj_map[item]
            else:
                mor_map[item] = c
                if consistent(item):
                    yield from walk(i + 1)
                del mor_map[item]

    yield from walk(0)


def find_isomorphism(C: FinCategory, D: FinCategory, size_guard: SizeGuard | None = None):
    """Some isomorphism ``C -> D``, or ``None``."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    guard = size_guard or ORACLE_GUARD
    for F in enumerate_functors(C, D, guard):
        if len(set(F.obj_map.values())) == len(D.objects) and len(set(F.mor_map.values())) == len(D.morphisms):
            return F
    return None


def is_isomorphic(C: FinCategory, D: FinCategory, size_guard: SizeGuard | None = None) -> bool:
    return find_isomorphism(C, D, size_guard) is not None


def enumerate_squares(f: FinFunctor, g: FinFunctor, size_guard: SizeGuard | None = None) -> Iterator[tuple]:
    """Every pair ``(h, k)`` with ``k f = g h``, for ``f: A -> B`` and ``g: C -> D``."""
    guard = size_guard or default_guard()
    for h in enumerate_functors(f.dom, g.dom, guard):
        objects: dict = {}
        morphisms: dict = {}
        clash = False
        for source, target, table in ((f.obj_map, h.obj_map, objects), (f.mor_map, h.mor_map, morphisms)):
            for a, b in source.items():
                image = g.obj_map[target[a]] if table is objects else g.mor_map[target[a]]
                if table.setdefault(b, image) != image:
                    clash = True
        if clash:
            continue
        allowed_obj = {b: [y] for b, y in objects.items()}
        allowed_mor = {b: [n] for b, n in morphisms.items()}
        for k in enumerate_functors(f.cod, g.cod, guard, objects=allowed_obj, morphisms=allowed_mor):
            yield h, k
