"""The ``catlift`` command line.

Exit codes: 0 when the command succeeds or the property holds, 1 when a
property fails (a witness is printed), 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..awfs import STRATEGIES, factorize, lift
from ..coreflections import (
    SplitCoreflection,
    check_split_coreflection,
    compose_coreflections,
    is_twisted,
)
from ..errors import CatliftError, PreconditionError
from ..fincat import FinCategory, classify_functor, validate_category, validate_functor
from ..lenses import (
    VARIANTS,
    DeltaLens,
    check_delta_lens,
    compose_lenses,
    enumerate_generated_structures,
    enumerate_lens_structures,
    tabulator,
)
from .documents import Document, DocumentError, Square, dumps, encode, load_document, save_document

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _categories(value) -> list:
    if isinstance(value, FinCategory):
        return [value]
    if isinstance(value, Square):
        return [c for F in (value.f, value.g, value.h, value.k) for c in (F.dom, F.cod)]
    F = value.f if isinstance(value, (DeltaLens, SplitCoreflection)) else value
    return [F.dom, F.cod]


def _functors(value) -> list:
    if isinstance(value, FinCategory):
        return []
    if isinstance(value, Square):
        return [value.f, value.g, value.h, value.k]
    if isinstance(value, DeltaLens):
        return [value.f]
    if isinstance(value, SplitCoreflection):
        return [value.f, value.q]
    return [value]


def structural_violations(value) -> list:
    """Broken category and functor laws; everything else presupposes none."""
    report = []
    for c in _categories(value):
        report += [(c.label, v) for v in validate_category(c)]
    if report:
        return report
    for F in _functors(value):
        report += [(f"{F.dom.label} -> {F.cod.label}", v) for v in validate_functor(F)]
    return report


def document_violations(value) -> list:
    report = structural_violations(value)
    if report:
        return report
    if isinstance(value, DeltaLens):
        report += [("lens", v) for v in check_delta_lens(value)]
    elif isinstance(value, SplitCoreflection):
        report += [("coreflection", v) for v in check_split_coreflection(value)]
    elif isinstance(value, Square) and value.k @ value.f != value.g @ value.h:
        report.append(("square", "k f != g h"))
    return report


def _describe(violation) -> str:
    where, v = violation
    if hasattr(v, "law"):
        text = f"{v.law}: {', '.join(map(str, v.witness))}"
        return f"{where}: {text}" + (f" ({v.message})" if v.message else "")
    return f"{where}: {v}"


class _Session:
    def __init__(self, out, err):
        self.out, self.err = out, err

    def say(self, text: str = "") -> None:
        print(text, file=self.out)

    def warn(self, text: str) -> None:
        print(text, file=self.err)

    def load(self, path, *kinds) -> object:
        doc: Document = load_document(path)
        if kinds and doc.kind not in kinds:
            raise UsageError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
        broken = structural_violations(doc.value)
        if broken:
            raise _Failed([_describe(v) for v in broken])
        return doc.value

    def emit(self, value, output) -> None:
        if output:
            save_document(value, output)
        else:
            self.out.write(dumps(value))


class _Failed(Exception):
    def __init__(self, lines):
        super().__init__("; ".join(lines))
        self.lines = lines


def cmd_validate(s: _Session, args) -> int:
    doc = load_document(args.doc)
    report = document_violations(doc.value)
    if report:
        raise _Failed([_describe(v) for v in report])
    s.say(f"valid {doc.kind}")
    return OK


def cmd_analyze(s: _Session, args) -> int:
    F = s.load(args.functor, "functor")
    s.say(json.dumps(classify_functor(F).as_dict(), indent=2))
    return OK


def cmd_factorize(s: _Session, args) -> int:
    F = s.load(args.functor, "functor")
    Ff = factorize(F)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    parts = {"Ef": Ff.Ef, "Lf": Ff.Lf, "Rf": Ff.Rf, "lens": Ff.lens, "coreflection": Ff.coref}
    for name, value in parts.items():
        save_document(value, out / f"{name}.json")
    s.say(f"Ef has {len(Ff.Ef.objects)} objects and {len(Ff.Ef.morphisms)} morphisms; wrote {len(parts)} documents to {out}")
    return OK


def cmd_lift(s: _Session, args) -> int:
    T = s.load(args.coref, "coreflection")
    L = s.load(args.lens, "lens")
    h = s.load(args.top, "functor")
    k = s.load(args.bottom, "functor")
    ok, why = is_twisted(T)
    if not ok:
        raise _Failed([f"coreflection is not twisted at {why.morphism}"])
    T = SplitCoreflection(T.f, T.q, T.eps, why)
    report = check_delta_lens(L)
    if report:
        raise _Failed([_describe(("lens", v)) for v in report])
    result = lift(T, L, h, k, strategy=args.strategy)
    if args.strategy == "both":
        s.warn("formula and universal strategies agree")
    s.emit(result.j, args.output)
    return OK


def cmd_check(s: _Session, args) -> int:
    if args.property == "lens":
        L = s.load(args.doc, "lens")
        report = check_delta_lens(L)
        if report:
            raise _Failed([_describe(("lens", v)) for v in report])
        s.say("delta lens: laws hold")
        return OK
    S = s.load(args.doc, "coreflection")
    report = check_split_coreflection(S)
    if report:
        raise _Failed([_describe(("coreflection", v)) for v in report])
    if args.property == "coref":
        s.say("split coreflection: laws hold")
        return OK
    ok, why = is_twisted(S)
    if not ok:
        raise _Failed([f"not twisted: witness {why.morphism} has {len(why.candidates)} factorisations through the counit"])
    qbar = ", ".join(f"{u} -> {v}" for u, v in sorted(why.qbar.items()))
    s.say(f"twisted coreflection; qbar: {qbar or '(none)'}")
    return OK


def cmd_tabulate(s: _Session, args) -> int:
    L = s.load(args.lens, "lens")
    report = check_delta_lens(L)
    if report:
        raise _Failed([_describe(("lens", v)) for v in report])
    s.emit(tabulator(L).category, args.output)
    return OK


def cmd_compose(s: _Session, args) -> int:
    kind = "lens" if args.what == "lens" else "coreflection"
    first, second = s.load(args.first, kind), s.load(args.second, kind)
    if args.what == "lens":
        for L in (first, second):
            report = check_delta_lens(L)
            if report:
                raise _Failed([_describe(("lens", v)) for v in report])
        value = compose_lenses(first, second)
    else:
        for S in (first, second):
            report = check_split_coreflection(S)
            if report:
                raise _Failed([_describe(("coreflection", v)) for v in report])
        value = compose_coreflections(first, second)
    s.emit(value, args.output)
    return OK


def cmd_enumerate(s: _Session, args) -> int:
    F = s.load(args.functor, "functor")
    if args.what == "lenses":
        found = enumerate_lens_structures(F)
    elif args.what.startswith("generated:"):
        variant = args.what.split(":", 1)[1]
        if variant not in VARIANTS:
            raise UsageError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
        found = enumerate_generated_structures(F, variant)
    else:
        raise UsageError(f"cannot enumerate {args.what!r}; use 'lenses' or 'generated:<variant>'")
    report = {"count": found.count, "structures": [encode(L)["lifts"] for L in found.structures]}
    s.say(json.dumps(report, indent=2))
    return OK


def cmd_selftest(s: _Session, args) -> int:
    from ..acceptance import SUITES, run_all

    names = [args.suite] if args.suite else list(SUITES)
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    results = run_all(names)
    for r in results:
        s.say(r.line())
    return OK if all(r.passed for r in results) else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="catlift", description="Twisted coreflections, delta lenses and their factorisation system.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("validate", help="check every law of a document")
    c.add_argument("doc")
    c.set_defaults(run=cmd_validate)

    c = sub.add_parser("analyze", help="classify a functor")
    c.add_argument("functor")
    c.set_defaults(run=cmd_analyze)

    c = sub.add_parser("factorize", help="write Ef, Lf, Rf and their structures")
    c.add_argument("functor")
    c.add_argument("-o", "--output", required=True, help="output directory")
    c.set_defaults(run=cmd_factorize)

    c = sub.add_parser("lift", help="diagonal of a square from a twisted coreflection to a lens")
    c.add_argument("--coref", required=True)
    c.add_argument("--lens", required=True)
    c.add_argument("--top", required=True, help="functor h: A -> C")
    c.add_argument("--bottom", required=True, help="functor k: B -> D")
    c.add_argument("--strategy", choices=STRATEGIES, default="both")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_lift)

    c = sub.add_parser("check", help="decide a property of a document")
    c.add_argument("property", choices=("twisted", "lens", "coref"))
    c.add_argument("doc")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("tabulate", help="the tabulator of a lens")
    c.add_argument("lens")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_tabulate)

    c = sub.add_parser("compose", help="compose two lenses or coreflections, first then second")
    c.add_argument("what", choices=("lens", "coref"))
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_compose)

    c = sub.add_parser("enumerate", help="lens structures on a functor")
    c.add_argument("what", help="'lenses' or 'generated:<lens|dopf|sopf>'")
    c.add_argument("functor")
    c.set_defaults(run=cmd_enumerate)

    c = sub.add_parser("selftest", help="run the acceptance suites")
    c.add_argument("--suite")
    c.set_defaults(run=cmd_selftest)
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    session = _Session(out, err)
    try:
        args = build_parser().parse_args(list(argv))
        return args.run(session, args)
    except UsageError as exc:
        session.warn(f"usage error: {exc}")
        return USAGE
    except DocumentError as exc:
        session.warn(f"parse error: {exc}")
        return USAGE
    except _Failed as exc:
        for line in exc.lines:
            session.warn(f"fails: {line}")
        return FAILED
    except PreconditionError as exc:
        session.warn(f"fails: {exc}")
        return FAILED
    except CatliftError as exc:
        session.warn(f"error: {exc}")
        return FAILED


def main(argv=None) -> int:
    code = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
