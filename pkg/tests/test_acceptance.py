"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from catlift.acceptance import run_suite

RESULTS = {}


def check(name):
    result = run_suite(name)
    RESULTS[result.number] = result.line()
    print(result.line())
    assert result.passed, result.detail or "over budget"


def test_01_factorisation():
    check("factorisation")


def test_02_twistedness():
    check("twistedness")


def test_03_lifts():
    check("lifts")


def test_04_axioms():
    check("axioms")


def test_05_universal():
    check("universal")


def test_06_generation():
    check("generation")


def test_07_fixtures():
    check("fixtures")


def test_08_comprehensive():
    check("comprehensive")


def test_09_algebras():
    check("algebras")


def test_10_coherence():
    check("coherence")


def test_11_cli():
    check("cli")


@pytest.mark.slow
def test_full_selftest_exit_code():
    from catlift.cli import run_command
    import io

    out = io.StringIO()
    assert run_command(["selftest"], out, io.StringIO()) == 0
    assert out.getvalue().count("[PASS]") == 11
