"""Command-line front end.

Diagram spec files
------------------
UTF-8 text, one ``key = value`` per line; ``#`` starts a comment and
blank lines are ignored.  A family diagram names its family and gives
integer parameters::

    family = fig15
    a = 1
    b = 1
    c = 1
    q = 3
    r = 2
    u = 3
    t = 2

For fig1b an extra ``u`` selects the hidden B-label of the wave.  A custom
diagram lists bands as ``label:weight`` and chords as ``slot slot weight``,
slots written like ``A0+`` (handle, band index, end)::

    family = custom
    handleA.bands = 2:1, 3:1, 1:1
    handleB.bands = 1:1, 2:2
    chords = A0- B1+ 1, A0+ B1- 1

Exit status: 0 on success, 1 on invalid input, 2 when an internal
invariant fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import fields
from typing import Iterable, Sequence

from . import __version__
from .classify import (
    CENSUS_FIELDS,
    census,
    classify_exterior,
    embeds_in_s3,
    exclusion_cases,
    exclude_all_positive,
    rows_to_csv,
    rows_to_jsonl,
)
from .diagrams import (
    FAMILIES,
    Band,
    Chord,
    Fig1a,
    Fig1b,
    Fig9,
    Handle,
    RRDiagram,
    Slot,
    extract_curves,
    family_diagram,
    validate,
)
from .errors import InvalidParams, InvariantViolation, RRError
from .homology import abelianize, determinant
from .waves import meridian_candidates

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1
PARAM_NAMES = ("a", "b", "c", "m", "n", "s", "q", "r", "u", "t")


class SpecError(InvalidParams):
    pass


def parse_int64(text: str) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise InvalidParams(f"not an integer: {text!r}") from None
    if not INT64_MIN <= value <= INT64_MAX:
        raise InvalidParams(f"integer out of 64-bit signed range: {text.strip()}")
    return value


def _cli_int(text: str) -> int:
    try:
        return parse_int64(text)
    except InvalidParams as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# ---------------------------------------------------------------------------
# spec files


class DiagramSpec:
    """Parsed spec file: either family params (plus optional u) or a custom diagram."""

    def __init__(self, family: str, params=None, u=None, diagram=None):
        self.family = family
        self.params = params
        self.u = u
        self.diagram = diagram


def _parse_bands(text: str, lineno: int) -> tuple[Band, ...]:
    bands = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        label, sep, weight = item.partition(":")
        if not sep:
            raise SpecError(f"line {lineno}: band {item!r} is not label:weight")
        try:
            bands.append(Band(parse_int64(label), parse_int64(weight)))
        except InvalidParams as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
    return tuple(bands)


def _parse_chords(text: str, lineno: int) -> tuple[Chord, ...]:
    chords = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        parts = item.split()
        if len(parts) != 3:
            raise SpecError(f"line {lineno}: chord {item!r} is not 'slot slot weight'")
        try:
            chords.append(Chord(Slot.parse(parts[0]), Slot.parse(parts[1]), parse_int64(parts[2])))
        except InvalidParams as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
    return tuple(chords)


def parse_spec(text: str) -> DiagramSpec:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "custom":
            key, value = "family", "custom"
        else:
            key, sep, value = (x.strip() for x in line.partition("="))
            if not sep or not key:
                raise SpecError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in entries:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)
    if "family" not in entries:
        raise SpecError("line 1: missing 'family = ...'")
    family, family_line = entries.pop("family")
    if family == "custom":
        allowed = {"handleA.bands", "handleB.bands", "chords"}
        for key, (_, lineno) in entries.items():
            if key not in allowed:
                raise SpecError(f"line {lineno}: unknown key {key!r} for a custom diagram")
        for key in sorted(allowed):
            if key not in entries:
                raise SpecError(f"line {family_line}: custom diagram needs {key!r}")
        ha = Handle("A", _parse_bands(*entries["handleA.bands"]))
        hb = Handle("B", _parse_bands(*entries["handleB.bands"]))
        d = RRDiagram(ha, hb, _parse_chords(*entries["chords"]))
        problems = validate(d)
        if problems:
            raise SpecError(f"line {entries['chords'][1]}: invalid diagram: {problems[0]}")
        return DiagramSpec("custom", diagram=d)
    if family not in FAMILIES:
        raise SpecError(f"line {family_line}: unknown family {family!r}")
    cls = FAMILIES[family]
    names = [f.name for f in fields(cls)]
    values = {}
    u = None
    for key, (value, lineno) in entries.items():
        if key not in names and not (key == "u" and cls is Fig1b):
            raise SpecError(f"line {lineno}: unknown parameter {key!r} for {family}")
        try:
            number = parse_int64(value)
        except InvalidParams as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
        if key == "u" and cls is Fig1b:
            u = number
        else:
            values[key] = number
    missing = [n for n in names if n not in values]
    if missing:
        raise SpecError(f"line {family_line}: {family} needs parameters {', '.join(missing)}")
    return DiagramSpec(family, params=cls(**values), u=u)


def read_spec(path: str) -> DiagramSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidParams(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InvalidParams(f"{path}: not UTF-8 text") from None
    try:
        return parse_spec(text)
    except SpecError as exc:
        raise InvalidParams(f"{path}: {exc}") from None


def spec_from_args(args) -> DiagramSpec:
    if args.file:
        if args.family:
            raise InvalidParams("give either --file or --family, not both")
        return read_spec(args.file)
    if not args.family:
        raise InvalidParams("give --family or --file")
    cls = FAMILIES[args.family]
    names = [f.name for f in fields(cls)]
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidParams(f"{args.family} needs -{' -'.join(missing)}")
    extra = [n for n in PARAM_NAMES if getattr(args, n) is not None and n not in names]
    if cls is Fig1b or cls is Fig9:
        extra = [n for n in extra if n != "u"]
    if extra:
        raise InvalidParams(f"{args.family} does not take -{' -'.join(extra)}")
    params = cls(**{n: getattr(args, n) for n in names})
    return DiagramSpec(args.family, params=params, u=args.u if cls in (Fig1b, Fig9) else None)


# ---------------------------------------------------------------------------
# output


def emit(records: Sequence[dict], lines: Iterable[str], fmt: str, out) -> None:
    if fmt == "text":
        for line in lines:
            out.write(line + "\n")
    elif fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    else:
        keys: list[str] = []
        for rec in records:
            keys.extend(k for k in rec if k not in keys)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(keys)
        for rec in records:
            writer.writerow(["" if rec.get(k) is None else rec[k] for k in keys])


# ---------------------------------------------------------------------------
# subcommands


def cmd_word(args, out) -> int:
    spec = spec_from_args(args)
    if spec.diagram is not None:
        curves = extract_curves(spec.diagram)
    else:
        curves = [family_diagram(spec.params).r]
    records = [{"word": str(w)} for w in curves]
    emit(records, [str(w) for w in curves], args.format, out)
    return 0


def cmd_meridians(args, out) -> int:
    spec = spec_from_args(args)
    if spec.diagram is not None:
        raise InvalidParams("meridians need a family diagram")
    u = spec.u if isinstance(spec.params, Fig1b) else None
    fd = family_diagram(spec.params, u)
    pair = meridian_candidates(fd)
    r = abelianize(fd.r)
    h1, h2 = abelianize(pair.m1), abelianize(pair.m2)
    rec = {
        "r": str(fd.r),
        "m1": str(pair.m1),
        "m2": str(pair.m2),
        "shorter": pair.shorter,
        "len_r": len(fd.r),
        "len_m1": len(pair.m1),
        "len_m2": len(pair.m2),
        "class_sum_ok": h1 + h2 == r,
        "det_r_m1": determinant(r, h1),
        "det_r_m2": determinant(r, h2),
    }
    lines = [
        f"R  = {fd.r}",
        f"M1 = {pair.m1}",
        f"M2 = {pair.m2}",
        f"shorter: {pair.shorter}",
        f"|M1| + |M2| = {len(pair.m1) + len(pair.m2)} <= |R| = {len(fd.r)}",
        f"[M1] + [M2] = [R]: {'yes' if rec['class_sum_ok'] else 'no'}",
        f"det([R], [M1]) = {rec['det_r_m1']}, det([R], [M2]) = {rec['det_r_m2']}",
    ]
    emit([rec], lines, args.format, out)
    return 0


def cmd_classify(args, out) -> int:
    spec = spec_from_args(args)
    p = spec.params
    if p is None:
        raise InvalidParams("classify needs a family diagram")
    if isinstance(p, Fig9):
        cases = [exclude_all_positive(p, spec.u)] if spec.u is not None else exclusion_cases(p)
        records = [{"knot_class": "NotEmbeddable", "reason": str(c), "u": c.u} for c in cases]
        lines = [
            f"NotEmbeddable({c})" + (f", u={c.u}" if c.u is not None else "") for c in cases
        ]
        emit(records, lines, args.format, out)
        return 0
    if not isinstance(p, (Fig1a, Fig1b)):
        raise InvalidParams("classify supports fig1a, fig1b and fig9")
    k = classify_exterior(p)
    cert = None
    if isinstance(p, Fig1b) and str(k) != "Unknot":
        cert = embeds_in_s3(p)
    rec = {
        "knot_class": str(k),
        "condition": cert.condition if cert else None,
        "u": cert.u if cert else None,
        "delta": cert.delta if cert else None,
    }
    emit([rec], [f"{k}, {cert}" if cert else str(k)], args.format, out)
    return 0


def cmd_census(args, out) -> int:
    if args.bound < 1:
        raise InvalidParams("--bound must be >= 1")
    family = args.family or "fig1b"
    rows = census(args.bound, family)
    if args.format == "csv":
        rows_to_csv(rows, out)
    elif args.format == "jsonl":
        rows_to_jsonl(rows, out)
    else:
        for row in rows:
            rec = row.record()
            out.write(" ".join(f"{k}={rec[k]}" for k in CENSUS_FIELDS if rec[k] is not None) + "\n")
    return 0


def cmd_check(args, out) -> int:
    from .checks import run_checks

    results = run_checks(args.bound, args.depth)
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "") + "\n")
    failed = sum(not ok for _, ok, _ in results)
    out.write(f"{len(results) - failed} passed, {failed} failed\n")
    return 0 if failed == 0 else 2


COMMANDS = {
    "word": cmd_word,
    "meridians": cmd_meridians,
    "classify": cmd_classify,
    "census": cmd_census,
    "check": cmd_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrdiagrams", description="Curves in genus-two R-R diagrams.")
    parser.add_argument("--verbose", action="store_true", help="print the version to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def diagram_options(p):
        p.add_argument("--family", choices=sorted(FAMILIES))
        p.add_argument("--file", help="diagram spec file")
        for name in PARAM_NAMES:
            p.add_argument(f"-{name}", type=_cli_int, default=None)

    def format_option(p):
        p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")

    for name, text in (
        ("word", "print the curves of a diagram"),
        ("meridians", "meridian pair from wave surgery"),
        ("classify", "knot class and embedding certificate"),
    ):
        p = sub.add_parser(name, help=text)
        diagram_options(p)
        format_option(p)
    p = sub.add_parser("census", help="sweep a family's parameter box")
    p.add_argument("--family", choices=("fig1b", "fig9"))
    p.add_argument("--bound", type=_cli_int, default=5)
    format_option(p)
    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--bound", type=_cli_int, default=6)
    p.add_argument("--depth", type=_cli_int, default=6)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.verbose:
        sys.stderr.write(f"rrdiagrams {__version__}\n")
    if getattr(args, "depth", 0) < 0:
        sys.stderr.write("error: --depth must be >= 0\n")
        return 1
    try:
        return COMMANDS[args.command](args, out)
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 2
    except RRError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
