"""File formats: MaskDocument JSON, exact grid CSV, 16-bit PGM rasters.

Fractions are always written as ``"p/q"`` strings (integers as ``"p"``).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .analysis import SupportOctagon, support_of
from .engine import GridFunction
from .laurent import BivariateLaurent
from .mask import MaskMatrix, symbol_to_mask

__all__ = [
    "FormatError",
    "MaskDocument",
    "fraction_str",
    "grid_to_csv",
    "grid_from_csv",
    "mask_to_csv",
    "parse_fraction",
    "write_pgm",
]


class FormatError(ValueError):
    """Malformed input file."""


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not an exact fraction: {text!r}") from None


@dataclass(frozen=True)
class MaskDocument:
    family: str
    n: int | None
    l: int | None
    mu: tuple[Fraction, ...]
    mask: MaskMatrix
    support: SupportOctagon

    @classmethod
    def from_symbol(cls, family: str, poly: BivariateLaurent, n=None, l=None, mu=()) -> "MaskDocument":
        return cls(family, n, l, tuple(mu), symbol_to_mask(poly), support_of(poly).octagon)

    def symbol(self) -> BivariateLaurent:
        return self.mask.to_symbol()

    def to_dict(self) -> dict:
        s = self.support
        return {
            "family": self.family,
            "params": {"n": self.n, "l": self.l, "mu": [fraction_str(m) for m in self.mu]},
            "denominator": self.mask.denominator,
            "offset": list(self.mask.offset),
            "rows": [list(r) for r in self.mask.entries],
            "support": {"m": s.m, "n": s.n, "l": s.l},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MaskDocument":
        try:
            d = json.loads(text)
            params = d.get("params", {})
            mask = MaskMatrix(
                tuple(int(v) for v in d["offset"]),
                int(d["denominator"]),
                tuple(tuple(_strict_int(v) for v in row) for row in d["rows"]),
            )
            if len(mask.offset) != 2:
                raise ValueError("offset must be a pair")
            sup = d.get("support")
            doc = cls(
                family=str(d.get("family", "custom")),
                n=params.get("n"),
                l=params.get("l"),
                mu=tuple(parse_fraction(str(m)) for m in params.get("mu", [])),
                mask=mask,
                support=support_of(mask.to_symbol()).octagon,
            )
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed mask document: {exc}") from None
        if sup is not None and (sup.get("m"), sup.get("n"), sup.get("l")) != (
            doc.support.m,
            doc.support.n,
            doc.support.l,
        ):
            raise FormatError("support recorded in the document does not match its rows")
        return doc


def _strict_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"mask entries must be integers, got {v!r}")
    return v


def mask_to_csv(poly: BivariateLaurent) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha1", "alpha2", "value"])
    for (a1, a2), c in sorted(poly.items()):
        w.writerow([a1, a2, fraction_str(c)])
    return buf.getvalue()


def grid_to_csv(g: GridFunction) -> str:
    """All window points, ``alpha1`` then ``alpha2`` ascending, zeros included."""
    buf = io.StringIO()
    buf.write(f"# level={g.level}\n")
    buf.write("# window=" + ",".join(str(v) for v in g.window) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha1", "alpha2", "value"])
    for alpha in g.points():
        w.writerow([alpha[0], alpha[1], fraction_str(g[alpha])])
    return buf.getvalue()


def grid_from_csv(text: str) -> GridFunction:
    """Parse grid CSV.  Without a ``# window=`` line the window is the bounding box of the listed points."""
    meta: dict[str, str] = {}
    body: list[str] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, sep, value = stripped[1:].partition("=")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        body.append(line)
    rows = list(csv.reader(body))
    if not rows or [c.strip() for c in rows[0]] != ["alpha1", "alpha2", "value"]:
        raise FormatError("grid CSV needs the header alpha1,alpha2,value")
    values = {}
    try:
        for row in rows[1:]:
            if len(row) != 3:
                raise FormatError(f"expected 3 columns, got {row!r}")
            alpha = (int(row[0]), int(row[1]))
            if alpha in values:
                raise FormatError(f"duplicate point {alpha}")
            values[alpha] = parse_fraction(row[2])
        level = int(meta.get("level", 0))
        if "window" in meta:
            window = tuple(int(v) for v in meta["window"].split(","))
            if len(window) != 4:
                raise FormatError("window needs four integers")
        elif values:
            xs = [a[0] for a in values]
            ys = [a[1] for a in values]
            window = (min(xs), max(xs), min(ys), max(ys))
        else:
            raise FormatError("empty grid without a window")
        return GridFunction(level, window, values)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"malformed grid CSV: {exc}") from None


def _normalize(values: Iterable[Fraction], lo: Fraction, hi: Fraction) -> list[int]:
    if hi == lo:
        return [0 for _ in values]
    span = hi - lo
    return [round((v - lo) / span * 65535) for v in values]


def write_pgm(g: GridFunction, path: Path) -> Path:
    """Binary P5, 16-bit big-endian, rows from largest ``alpha2`` down; min-max normalized.

    Writes the normalization constants to ``<path>.norm.txt`` and returns that path.
    """
    i0, i1, j0, j1 = g.window
    width, height = i1 - i0 + 1, j1 - j0 + 1
    ordered = [g[(a1, a2)] for a2 in range(j1, j0 - 1, -1) for a1 in range(i0, i1 + 1)]
    lo, hi = min(ordered), max(ordered)
    pixels = _normalize(ordered, lo, hi)
    header = f"P5\n{width} {height}\n65535\n".encode("ascii")
    payload = b"".join(p.to_bytes(2, "big") for p in pixels)
    path = Path(path)
    path.write_bytes(header + payload)
    sidecar = Path(str(path) + ".norm.txt")
    sidecar.write_text(f"min={fraction_str(lo)}\nmax={fraction_str(hi)}\n")
    return sidecar


def read_pgm(path: Path) -> tuple[int, int, list[list[int]]]:
    """Inverse of :func:`write_pgm` for the exact header it emits; returns ``(width, height, rows)``."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P5" or parts[2] != b"65535":
        raise FormatError("not a 16-bit P5 file written by this tool")
    width, height = (int(v) for v in parts[1].split())
    raw = parts[3]
    if len(raw) != 2 * width * height:
        raise FormatError("PGM payload has the wrong length")
    px = [int.from_bytes(raw[i : i + 2], "big") for i in range(0, len(raw), 2)]
    return width, height, [px[r * width : (r + 1) * width] for r in range(height)]
