"""The CLI contract: document round trips, ``selftest`` and ``check twisted`` exit codes."""

from __future__ import annotations

import io
import tempfile
from pathlib import Path

from ..coreflections import enumerate_split_coreflections
from ..fincat import catalog, enumerate_squares, identity_functor
from ..lenses import enumerate_lens_structures
from .documents import Square, dumps, load_document, save_document
from .main import run_command


def sample_documents() -> dict:
    """One or more canonical values of every document kind, keyed by file stem."""
    docs = {c.label.lower(): c for c in catalog.fixtures()}
    functors = {
        "delta1": catalog.delta(2, 1),
        "delta2": catalog.delta(3, 2),
        "sigma1": catalog.sigma1(),
        "two_lifts_over_two": catalog.two_lifts_over_two(),
    }
    docs.update(functors)
    for i, L in enumerate(enumerate_lens_structures(catalog.two_lifts_over_two()).structures):
        docs[f"two_lifts_lens{i}"] = L
    corefs = {
        "delta1_coref": catalog.delta(2, 1),
        "delta2_coref": catalog.delta(3, 2),
        "bex_coref": catalog.bex_inclusion(),
        "nontwisted_coref": catalog.non_twisted_inclusion(),
    }
    for stem, f in corefs.items():
        docs[stem] = enumerate_split_coreflections(f)[0]
    f, g = catalog.delta(3, 2), catalog.two_lifts_over_two()
    h, k = next(enumerate_squares(catalog.sigma1(), g))
    docs["square"] = Square(catalog.sigma1(), g, h, k)
    docs["identity_square"] = Square(f, f, identity_functor(f.dom), identity_functor(f.cod))
    return docs


def _run(*argv) -> tuple:
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def cli_contract() -> int:
    from ..acceptance import Failure, run_suite

    checked = 0
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        for stem, value in sample_documents().items():
            path = root / f"{stem}.json"
            save_document(value, path)
            text = path.read_text(encoding="utf-8")
            doc = load_document(path)
            if doc.value != value or dumps(doc.value) != text:
                raise Failure(f"{stem}: document does not round trip")
            checked += 1

        expected = {
            "delta1_coref": 0,
            "delta2_coref": 0,
            "bex_coref": 0,
            "nontwisted_coref": 1,
        }
        fixtures_ok = run_suite("fixtures").ok
        for stem, code in expected.items():
            got, _, err = _run("check", "twisted", root / f"{stem}.json")
            if got != code:
                raise Failure(f"check twisted {stem}: exit {got}, expected {code}")
            if code == 1 and "witness u " not in err:
                raise Failure("check twisted on NonTwisted does not name the witness u")
            checked += 1
        if not fixtures_ok:
            raise Failure("fixture suite fails, so check twisted cannot agree with it")

        code, _, _ = _run("factorize", root / "delta2.json", "-o", root / "ef")
        if code != 0:
            raise Failure("factorize failed")
        for path in sorted((root / "ef").glob("*.json")):
            code, _, err = _run("validate", path)
            if code != 0:
                raise Failure(f"factorize output {path.name} does not validate: {err}")
            checked += 1

        code, out, _ = _run("selftest", "--suite", "fixtures")
        if code != 0:
            raise Failure(f"selftest --suite fixtures exited {code}")
        checked += 1
    return checked
