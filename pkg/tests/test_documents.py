import json

import pytest
from hypothesis import given, settings

from catlift.cli.documents import DocumentError, Square, dumps, encode, load_document, loads, save_document
from catlift.cli.selfcheck import sample_documents
from catlift.fincat import catalog, identity_functor, ordinal, validate_category

from strategies import categories, functors

SAMPLES = sample_documents()


@pytest.mark.parametrize("stem", sorted(SAMPLES))
def test_round_trip_is_byte_stable(tmp_path, stem):
    value = SAMPLES[stem]
    path = tmp_path / f"{stem}.json"
    save_document(value, path)
    text = path.read_text(encoding="utf-8")
    doc = load_document(path)
    assert doc.value == value
    assert doc.schema_version == 1
    assert dumps(doc.value) == text


def test_every_kind_is_covered():
    kinds = {encode(v)["kind"] for v in SAMPLES.values()}
    assert kinds == {"category", "functor", "lens", "coreflection", "square"}


@settings(max_examples=60, deadline=None)
@given(categories)
def test_categories_round_trip(c):
    assert loads(dumps(c)).value == c


@settings(max_examples=60, deadline=None)
@given(functors)
def test_functors_round_trip(F):
    assert loads(dumps(F)).value == F


def test_identities_are_omitted():
    data = encode(ordinal(3))
    assert [m["name"] for m in data["morphisms"]] == ["01", "02", "12"]
    assert data["comp"] == [{"g": "12", "f": "01", "=": "02"}]
    assert all(not m.startswith("1_") for m in encode(catalog.sigma1())["morphisms"])


def test_load_ordinal_three():
    text = json.dumps(
        {
            "schema_version": 1,
            "kind": "category",
            "objects": ["0", "1", "2"],
            "morphisms": [{"name": "01", "src": "0", "tgt": "1"}, {"name": "12", "src": "1", "tgt": "2"}, {"name": "02", "src": "0", "tgt": "2"}],
            "comp": [{"g": "12", "f": "01", "=": "02"}],
        }
    )
    c = loads(text).value
    assert validate_category(c) == []
    assert c.compose("12", "01") == "02"


@pytest.mark.parametrize(
    "mutate, position",
    [
        (lambda d: d["comp"].append({"g": "zz", "f": "01", "=": "02"}), "$.comp[1].g"),
        (lambda d: d["morphisms"][0].update(src="nowhere"), "$.morphisms[0].src"),
        (lambda d: d.update(kind="sheaf"), "$.kind"),
        (lambda d: d.update(schema_version=7), "$.schema_version"),
        (lambda d: d.pop("objects"), "$"),
        (lambda d: d["morphisms"].append({"name": "01", "src": "0", "tgt": "1"}), "$.morphisms[3].name"),
    ],
    ids=["unknown-morphism", "unknown-object", "kind", "version", "missing-field", "duplicate"],
)
def test_semantic_errors_are_positioned(mutate, position):
    data = encode(ordinal(3))
    mutate(data)
    with pytest.raises(DocumentError) as info:
        loads(json.dumps(data))
    assert info.value.position == position


def test_syntax_errors_report_line_and_column():
    with pytest.raises(DocumentError) as info:
        loads('{\n  "kind": ,\n}')
    assert info.value.position == "line 2, column 11"


def test_functor_with_missing_image():
    data = encode(catalog.sigma1())
    del data["morphisms"]["12"]
    with pytest.raises(DocumentError, match="no image"):
        loads(json.dumps(data))


def test_missing_file(tmp_path):
    with pytest.raises(DocumentError):
        load_document(tmp_path / "absent.json")


def test_square_equality():
    f = catalog.delta(2, 1)
    s = Square(f, f, identity_functor(f.dom), identity_functor(f.cod))
    assert loads(dumps(s)).value == s
