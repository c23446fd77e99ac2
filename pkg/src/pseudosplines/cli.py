"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import analysis, symbols
from .analysis import DegreeReport, SupportOctagon, analyze, predicted_support, support_of
from .engine import WindowExhaustedError, basic_limit, subdivide
from .formats import (
    FormatError,
    MaskDocument,
    fraction_str,
    grid_from_csv,
    grid_to_csv,
    mask_to_csv,
    parse_fraction,
    write_pgm,
)
from .laurent import BivariateLaurent
from .mask import symbol_to_mask
from .reference import SUPPORT_TABLE

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CLI_FAMILIES = ("pseudo", "box", "interp", "tensor", "variant", "amu")


class UsageError(Exception):
    pass


def build_symbol(family: str, n: int | None, l: int | None, mu: tuple[Fraction, ...]):
    """Construct the symbol named on the command line; raises ``ValueError`` on bad parameters."""
    if family == "amu":
        if len(mu) != 1:
            raise ValueError("family amu takes exactly one --mu value")
        return symbols.make_example_amu(mu[0])
    if n is None:
        raise ValueError(f"family {family} needs -n")
    if family == "box":
        return symbols.make_fourdir_box(n)
    if family == "interp":
        return symbols.make_interpolatory(n)
    l = 0 if l is None else l
    if family == "pseudo":
        return symbols.make_pseudospline(n, l)
    if family == "tensor":
        return symbols.make_tensor_pseudospline(n, l)
    if family == "variant":
        return symbols.make_variant(n, l, mu)
    raise ValueError(f"unknown family {family!r}")


def _doc_params(family: str, sym) -> tuple:
    """``(n, l, mu)`` as recorded in a MaskDocument for a CLI family."""
    if family == "amu":
        return None, None, sym.mu
    return sym.n, sym.l, sym.mu


def expected_properties(family: str, n, l, mu) -> dict:
    """Values the family's construction guarantees; ``custom`` only promises the basic conditions."""
    exp: dict = {"symmetric": True, "convergence_necessary": True}
    mu = tuple(mu or ())
    if family == "pseudo" or family == "variant":
        exp.update(
            generation_degree=2 * n - 1,
            reproduction_degree=2 * l + 1,
            interpolatory=(l == n - 1 and not any(mu)),
            support=predicted_support(n, l),
        )
    elif family == "box":
        exp.update(
            generation_degree=2 * n - 1,
            reproduction_degree=1,
            interpolatory=(n == 1),
            support=SupportOctagon(n, n, n // 2),
        )
    elif family == "interp":
        exp.update(
            generation_degree=2 * n - 1,
            reproduction_degree=2 * n - 1,
            interpolatory=True,
            support=SupportOctagon(2 * n - 1, 2 * n - 1, 2 * n - 2),
        )
    elif family == "tensor":
        exp.update(
            generation_degree=2 * n - 1,
            reproduction_degree=2 * l + 1,
            interpolatory=(l == n - 1),
            support=SupportOctagon(n + l, n + l, 0),
        )
    elif family == "amu":
        exp.update(
            generation_degree=3,
            reproduction_degree=3,
            interpolatory=(mu[0] == 0),
            support=SupportOctagon(3, 3, 2),
        )
    return exp


@dataclass(frozen=True)
class VerifyReport:
    family: str
    n: int | None
    l: int | None
    mu: tuple[Fraction, ...]
    degrees: DegreeReport
    support: analysis.SupportInfo
    expected: dict
    passed: dict

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def measured(self) -> dict:
        d = self.degrees
        return {
            "symmetric": d.symmetric,
            "convergence_necessary": d.convergence_necessary,
            "generation_degree": d.generation_degree,
            "reproduction_degree": d.reproduction_degree,
            "interpolatory": d.interpolatory,
            "support": self.support.octagon,
        }

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, SupportOctagon):
                return {"m": v.m, "n": v.n, "l": v.l}
            return v

        d = self.degrees
        return {
            "family": self.family,
            "params": {"n": self.n, "l": self.l, "mu": [fraction_str(m) for m in self.mu]},
            "measured": {k: enc(v) for k, v in self.measured().items()},
            "support_area": fraction_str(self.support.area),
            "support_is_octagon": self.support.is_octagon,
            "expected": {k: enc(v) for k, v in self.expected.items()},
            "passed": dict(self.passed),
            "generation_witness": str(d.generation_witness) if d.generation_witness else None,
            "reproduction_witness": str(d.reproduction_witness) if d.reproduction_witness else None,
            "ok": self.ok,
        }

    def format(self) -> str:
        name = self.family
        if self.n is not None:
            name += f" n={self.n}"
        if self.l is not None:
            name += f" l={self.l}"
        if self.mu:
            name += " mu=" + ",".join(fraction_str(m) for m in self.mu)
        lines = [f"scheme: {name}"]
        measured = self.measured()
        witness = {
            "generation_degree": self.degrees.generation_witness,
            "reproduction_degree": self.degrees.reproduction_witness,
        }
        for key, value in measured.items():
            shown = _show(value)
            if key in self.expected:
                flag = "PASS" if self.passed[key] else "FAIL"
                line = f"  {key:<22} {shown:<32} expected {_show(self.expected[key]):<32} {flag}"
            else:
                line = f"  {key:<22} {shown}"
            if witness.get(key) is not None:
                line += f"  (first nonzero: {witness[key]})"
            lines.append(line)
        lines.append(f"  {'support_area':<22} {fraction_str(self.support.area)}")
        lines.append("note: algebraic conditions only; convergence is not established")
        lines.append("result: " + ("all checks pass" if self.ok else "FAILED: " + ", ".join(
            k for k, v in self.passed.items() if not v)))
        return "\n".join(lines)


def _show(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, SupportOctagon):
        return f"({v.m},{v.n},{v.l}) {v}"
    return str(v)


def verify_symbol(family: str, poly: BivariateLaurent, n=None, l=None, mu=()) -> VerifyReport:
    max_check = 2 * n + 2 if n is not None else (6 if family == "amu" else 16)
    degrees = analyze(poly, max_check)
    sup = support_of(poly)
    rep = VerifyReport(family, n, l, tuple(mu), degrees, sup, {}, {})
    expected = expected_properties(family, n, l, mu)
    measured = rep.measured()
    passed = {k: measured[k] == v for k, v in expected.items()}
    return VerifyReport(family, n, l, tuple(mu), degrees, sup, expected, passed)


# -- commands -----------------------------------------------------------------


def _symbol_from_args(args):
    family = args.family_opt or args.family
    if family is None:
        raise UsageError("a family is required (positional or --family)")
    sym = build_symbol(family, args.n, args.l, args.mu)
    return family, sym


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_mask(args) -> int:
    family, sym = _symbol_from_args(args)
    n, l, mu = _doc_params(family, sym)
    if args.format == "json":
        text = MaskDocument.from_symbol(family, sym.poly, n, l, mu).to_json()
    elif args.format == "csv":
        text = mask_to_csv(sym.poly)
    else:
        label = f"{family}" + (f" n={n}" if n is not None else "") + (f" l={l}" if l is not None else "")
        if mu:
            label += " mu=" + ",".join(fraction_str(m) for m in mu)
        text = f"# {label}\n" + symbol_to_mask(sym.poly).format() + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.mask_file:
        doc = MaskDocument.from_json(Path(args.mask_file).read_text())
        family, n, l, mu = doc.family, doc.n, doc.l, doc.mu
        if family not in CLI_FAMILIES:
            family = "custom"
        report = verify_symbol(family, doc.symbol(), n, l, mu)
    else:
        family, sym = _symbol_from_args(args)
        n, l, mu = _doc_params(family, sym)
        report = verify_symbol(family, sym.poly, n, l, mu)
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(report.format() + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_support(args) -> int:
    if args.n is None or args.l is None:
        raise UsageError("support needs -n and -l")
    pred = predicted_support(args.n, args.l)
    info = support_of(symbols.make_pseudospline(args.n, args.l))
    lines = [
        f"a_{args.n}^{args.l}",
        f"  predicted: {pred} ({pred.m},{pred.n},{pred.l})",
        f"  measured:  {info.octagon} ({info.octagon.m},{info.octagon.n},{info.octagon.l})"
        f", area {fraction_str(info.area)}",
    ]
    ok = pred == info.octagon and info.is_octagon
    lines.append("  match" if ok else "  MISMATCH")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def sweep_table(max_n: int, verify: bool = False) -> tuple[str, bool]:
    """Support table ``width/cut`` for ``1 <= n <= max_n``, one cell per ``(n, l)``."""
    cells = {}
    all_ok = True
    for n in range(1, max_n + 1):
        for l in range(n):
            sym = symbols.make_pseudospline(n, l)
            info = support_of(sym)
            pred = predicted_support(n, l)
            ok = info.is_octagon and info.octagon == pred
            ref = SUPPORT_TABLE.get((n, l))
            if ref is not None:
                ok = ok and ref == (info.octagon.width, info.octagon.l)
            if verify:
                ok = ok and verify_symbol("pseudo", sym.poly, n, l).ok
            all_ok = all_ok and ok
            cells[n, l] = f"{info.octagon.width}/{info.octagon.l}" + (" ok" if ok else " !!")
    colw = max(len(c) for c in cells.values()) + 2
    head = "n\\l |" + "".join(str(l).rjust(colw) for l in range(max_n))
    lines = [head, "-" * len(head)]
    for n in range(1, max_n + 1):
        lines.append(f"{n:>3} |" + "".join(cells[n, l].rjust(colw) for l in range(n)))
    total = len(cells)
    good = sum(c.endswith(" ok") for c in cells.values())
    lines.append(f"{good}/{total} cells match (width/corner cut; checked against the reference table for n <= 5)")
    return "\n".join(lines) + "\n", all_ok


def cmd_sweep(args) -> int:
    max_n = args.max_n if args.max_n is not None else args.n
    if max_n is None or max_n < 1:
        raise UsageError("sweep needs --max-n >= 1")
    text, ok = sweep_table(max_n, verify=args.verify)
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_subdivide(args) -> int:
    doc = MaskDocument.from_json(Path(args.mask_file).read_text())
    grid = grid_from_csv(Path(args.input_file).read_text())
    out = subdivide(doc.mask, grid, args.steps)
    _emit(grid_to_csv(out), args.out)
    return EXIT_OK


def cmd_limit(args) -> int:
    family, sym = _symbol_from_args(args)
    g = basic_limit(sym, args.steps)
    if args.format == "pgm":
        if not args.out:
            raise UsageError("pgm output needs --out")
        write_pgm(g, Path(args.out))
    else:
        _emit(grid_to_csv(g), args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _mu_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_fraction(t) for t in text.split(",") if t.strip())
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _scheme_args(p: argparse.ArgumentParser):
    p.add_argument("family", nargs="?", choices=CLI_FAMILIES)
    p.add_argument("--family", dest="family_opt", choices=CLI_FAMILIES)
    p.add_argument("-n", type=int)
    p.add_argument("-l", type=int)
    p.add_argument("--mu", type=_mu_list, default=(), help="comma-separated fractions, e.g. 1/2,1/2")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudosplines",
        description="Symmetric four-directional pseudo-spline symbols, masks and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mask", help="print a subdivision mask")
    _scheme_args(p)
    p.add_argument("--format", choices=("json", "matrix", "csv"), default="matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("verify", help="check symmetry, degrees, interpolation and support")
    _scheme_args(p)
    p.add_argument("--mask-file", help="verify a MaskDocument JSON instead of a named family")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("support", help="predicted vs measured support of a_n^l")
    p.add_argument("-n", type=int)
    p.add_argument("-l", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("sweep", help="support table for all 0 <= l < n <= max_n")
    p.add_argument("--max-n", type=int)
    p.add_argument("-n", type=int, help="alias for --max-n")
    p.add_argument("--verify", action="store_true", help="also run the full verification per cell")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("subdivide", help="refine a grid CSV with a mask document")
    p.add_argument("mask_file")
    p.add_argument("input_file")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("limit", help="sample the basic limit function")
    _scheme_args(p)
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_limit)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 1) is not None and getattr(args, "steps", 1) < 1:
        print("error: --steps must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError, WindowExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
