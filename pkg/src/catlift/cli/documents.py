"""JSON documents for categories, functors, lenses, coreflections and squares.

Identities are implicit: they are omitted on save and synthesized on load.
Saving is canonical, so save-load-save is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..coreflections import SplitCoreflection, make_coreflection
from ..errors import CatliftError
from ..fincat import FinCategory, FinFunctor, identity_name, make_category
from ..lenses import DeltaLens

SCHEMA_VERSION = 1
KINDS = ("category", "functor", "lens", "coreflection", "square")


class DocumentError(CatliftError):
    """A document that cannot be read, with the position of the problem."""

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


@dataclass(frozen=True, eq=False)
class Square:
    """A commuting square ``k f = g h`` from ``f`` to ``g``."""

    f: FinFunctor
    g: FinFunctor
    h: FinFunctor
    k: FinFunctor

    def __eq__(self, other):
        return isinstance(other, Square) and (self.f, self.g, self.h, self.k) == (other.f, other.g, other.h, other.k)

    def __hash__(self):
        return hash((self.f, self.g, self.h, self.k))


@dataclass(frozen=True)
class Document:
    kind: str
    value: object
    schema_version: int = SCHEMA_VERSION


# Encoding.


def _category(c: FinCategory) -> dict:
    order = {m: i for i, m in enumerate(c.morphisms)}
    comp = sorted(
        ((g, f, h) for (g, f), h in c.comp.items() if not c.is_identity(g) and not c.is_identity(f)),
        key=lambda e: (order[e[0]], order[e[1]]),
    )
    return {
        "name": c.label,
        "objects": list(c.objects),
        "morphisms": [{"name": m, "src": c.src(m), "tgt": c.tgt(m)} for m in c.nonidentity],
        "comp": [{"g": g, "f": f, "=": h} for g, f, h in comp],
    }


def _maps(F: FinFunctor) -> dict:
    return {
        "objects": {x: F.ob(x) for x in F.dom.objects},
        "morphisms": {m: F(m) for m in F.dom.nonidentity},
    }


def _functor(F: FinFunctor) -> dict:
    return {"dom": _category(F.dom), "cod": _category(F.cod), **_maps(F)}


def encode(value) -> dict:
    if isinstance(value, FinCategory):
        kind, body = "category", _category(value)
    elif isinstance(value, DeltaLens):
        lifts = [
            {"obj": a, "over": u, "lift": w}
            for (a, u), w in value.lifts.items()
            if not value.cod.is_identity(u)
        ]
        kind, body = "lens", {**_functor(value.f), "lifts": lifts}
    elif isinstance(value, SplitCoreflection):
        counit = {x: value.counit(x) for x in value.cod.objects}
        kind, body = "coreflection", {**_functor(value.f), "right": _maps(value.q), "counit": counit}
    elif isinstance(value, FinFunctor):
        kind, body = "functor", _functor(value)
    elif isinstance(value, Square):
        parts = {"f": value.f, "g": value.g, "h": value.h, "k": value.k}
        kind, body = "square", {name: _functor(F) for name, F in parts.items()}
    else:
        raise TypeError(f"cannot encode {type(value).__name__}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **body}


def dumps(value) -> str:
    return json.dumps(encode(value), indent=2, ensure_ascii=False) + "\n"


def save_document(value, path) -> None:
    if isinstance(value, Document):
        value = value.value
    Path(path).write_text(dumps(value), encoding="utf-8")


# Decoding.


def _field(data: dict, key: str, kind: type, at: str):
    if not isinstance(data, dict):
        raise DocumentError("expected an object", at)
    if key not in data:
        raise DocumentError(f"missing field {key!r}", at)
    value = data[key]
    if not isinstance(value, kind):
        raise DocumentError(f"expected {kind.__name__}", f"{at}.{key}")
    return value


def _string(value, at: str) -> str:
    if not isinstance(value, str):
        raise DocumentError("expected a string", at)
    return value


def _decode_category(data: dict, at: str) -> FinCategory:
    objects = [_string(x, f"{at}.objects[{i}]") for i, x in enumerate(_field(data, "objects", list, at))]
    if not objects:
        raise DocumentError("a category needs at least one object", f"{at}.objects")
    if len(set(objects)) != len(objects):
        raise DocumentError("duplicate object", f"{at}.objects")
    known = set(objects)
    morphisms = []
    names = set()
    for i, entry in enumerate(_field(data, "morphisms", list, at)):
        here = f"{at}.morphisms[{i}]"
        name = _string(_field(entry, "name", str, here), f"{here}.name")
        src, tgt = _field(entry, "src", str, here), _field(entry, "tgt", str, here)
        for key, x in (("src", src), ("tgt", tgt)):
            if x not in known:
                raise DocumentError(f"unknown object {x!r}", f"{here}.{key}")
        if name in names or name in {identity_name(x) for x in objects}:
            raise DocumentError(f"duplicate morphism {name!r}", f"{here}.name")
        names.add(name)
        morphisms.append((name, src, tgt))
    every = names | {identity_name(x) for x in objects}
    comp = {}
    for i, entry in enumerate(_field(data, "comp", list, at)):
        here = f"{at}.comp[{i}]"
        g, f, h = (_field(entry, key, str, here) for key in ("g", "f", "="))
        for key, m in (("g", g), ("f", f), ("=", h)):
            if m not in every:
                raise DocumentError(f"unknown morphism {m!r}", f"{here}.{key}")
        if (g, f) in comp:
            raise DocumentError(f"duplicate composite {g} . {f}", here)
        comp[(g, f)] = h
    name = data.get("name") or "C"
    try:
        return make_category(objects, morphisms, comp, name=_string(name, f"{at}.name"))
    except CatliftError as exc:
        raise DocumentError(str(exc), at) from exc


def _decode_maps(data: dict, dom: FinCategory, cod: FinCategory, at: str) -> FinFunctor:
    obj = _field(data, "objects", dict, at)
    mor = _field(data, "morphisms", dict, at)
    for x in dom.objects:
        if x not in obj:
            raise DocumentError(f"object {x!r} has no image", f"{at}.objects")
    for x, y in obj.items():
        if x not in dom.objects:
            raise DocumentError(f"unknown object {x!r}", f"{at}.objects.{x}")
        if y not in cod.objects:
            raise DocumentError(f"unknown object {y!r}", f"{at}.objects.{x}")
    full = {}
    for m in dom.morphisms:
        if dom.is_identity(m):
            full[m] = cod.identity[obj[dom.src(m)]]
        elif m not in mor:
            raise DocumentError(f"morphism {m!r} has no image", f"{at}.morphisms")
    for m, n in mor.items():
        if m not in dom.morphisms or dom.is_identity(m):
            raise DocumentError(f"unknown morphism {m!r}", f"{at}.morphisms.{m}")
        if n not in cod.morphisms:
            raise DocumentError(f"unknown morphism {n!r}", f"{at}.morphisms.{m}")
        full[m] = n
    return FinFunctor(dom, cod, dict(obj), {m: full[m] for m in dom.morphisms})


def _decode_functor(data: dict, at: str) -> FinFunctor:
    dom = _decode_category(_field(data, "dom", dict, at), f"{at}.dom")
    cod = _decode_category(_field(data, "cod", dict, at), f"{at}.cod")
    return _decode_maps(data, dom, cod, at)


def _decode_lens(data: dict, at: str) -> DeltaLens:
    f = _decode_functor(data, at)
    A, B = f.dom, f.cod
    lifts = {(a, B.identity[f.ob(a)]): A.identity[a] for a in A.objects}
    for i, entry in enumerate(_field(data, "lifts", list, at)):
        here = f"{at}.lifts[{i}]"
        a, u, w = (_field(entry, key, str, here) for key in ("obj", "over", "lift"))
        if a not in A.objects:
            raise DocumentError(f"unknown object {a!r}", f"{here}.obj")
        if u not in B.morphisms or B.src(u) != f.ob(a):
            raise DocumentError(f"{u!r} is not a morphism out of f({a})", f"{here}.over")
        if w not in A.morphisms:
            raise DocumentError(f"unknown morphism {w!r}", f"{here}.lift")
        if (a, u) in lifts and not B.is_identity(u):
            raise DocumentError(f"second lift of {u} at {a}", here)
        lifts[(a, u)] = w
    return DeltaLens(f, lifts)


def _decode_coreflection(data: dict, at: str) -> SplitCoreflection:
    f = _decode_functor(data, at)
    q = _decode_maps(_field(data, "right", dict, at), f.cod, f.dom, f"{at}.right")
    counit = _field(data, "counit", dict, at)
    for x in f.cod.objects:
        if x not in counit:
            raise DocumentError(f"no counit component at {x!r}", f"{at}.counit")
    for x, m in counit.items():
        if x not in f.cod.objects or m not in f.cod.morphisms:
            raise DocumentError(f"bad counit component {x!r}: {m!r}", f"{at}.counit.{x}")
    return make_coreflection(f, q, counit, None)


def _decode_square(data: dict, at: str) -> Square:
    parts = {name: _decode_functor(_field(data, name, dict, at), f"{at}.{name}") for name in ("f", "g", "h", "k")}
    return Square(**parts)


DECODERS = {
    "category": _decode_category,
    "functor": _decode_functor,
    "lens": _decode_lens,
    "coreflection": _decode_coreflection,
    "square": _decode_square,
}


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    version = _field(data, "schema_version", int, "$")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {version}", "$.schema_version")
    kind = _field(data, "kind", str, "$")
    if kind not in DECODERS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind")
    return Document(kind, DECODERS[kind](data, "$"), version)


def load_document(path) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(exc.strerror or str(exc), str(path)) from exc
    except UnicodeDecodeError as exc:
        raise DocumentError("not UTF-8", str(path)) from exc
    return loads(text)
