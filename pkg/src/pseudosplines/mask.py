"""Dense integer mask matrices in print layout (rows: z2 exponent descending)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .laurent import BivariateLaurent, Exponent2

__all__ = ["MaskMatrix", "symbol_to_mask", "mask_to_symbol"]


@dataclass(frozen=True)
class MaskMatrix:
    """``entries / denominator`` with ``entries[0][0]`` sitting at exponent ``offset``.

    Row ``r``, column ``c`` holds the coefficient of ``z1^(offset[0] + c) z2^(offset[1] - r)``.
    """

    offset: Exponent2
    denominator: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be a positive integer")
        widths = {len(r) for r in self.entries}
        if not self.entries or len(widths) != 1 or 0 in widths:
            raise ValueError("mask entries must form a nonempty rectangular matrix")

    @classmethod
    def centered(cls, rows: Sequence[Sequence[int]], denominator: int) -> "MaskMatrix":
        """An odd-sized matrix whose middle entry is the exponent ``(0, 0)``."""
        h, w = len(rows), len(rows[0])
        if h % 2 == 0 or w % 2 == 0:
            raise ValueError("centered masks need odd dimensions")
        return cls((-(w // 2), h // 2), denominator, tuple(tuple(int(v) for v in r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def exponent(self, row: int, col: int) -> Exponent2:
        return self.offset[0] + col, self.offset[1] - row

    def coefficients(self) -> dict[Exponent2, Fraction]:
        return {
            self.exponent(r, c): Fraction(v, self.denominator)
            for r, row in enumerate(self.entries)
            for c, v in enumerate(row)
            if v
        }

    def to_symbol(self) -> BivariateLaurent:
        return BivariateLaurent(self.coefficients())

    def format(self) -> str:
        """Fraction-prefixed matrix as printed, e.g. ``1/4 * [[1 2 1] ...]``."""
        width = max(len(str(v)) for row in self.entries for v in row)
        lines = ["  ".join(str(v).rjust(width) for v in row) for row in self.entries]
        head = f"1/{self.denominator} *"
        pad = " " * len(head)
        out = []
        for i, line in enumerate(lines):
            lead = head if i == len(lines) // 2 else pad
            out.append(f"{lead} [ {line} ]")
        return "\n".join(out)


def symbol_to_mask(a: BivariateLaurent) -> MaskMatrix:
    """The bounding-box mask of a nonzero symbol over its least common denominator."""
    a = getattr(a, "poly", a)
    if a.is_zero():
        raise ValueError("the zero symbol has no mask")
    den, ints = a.integer_form()
    e1s = [e[0] for e in ints]
    e2s = [e[1] for e in ints]
    lo1, hi1, lo2, hi2 = min(e1s), max(e1s), min(e2s), max(e2s)
    rows = tuple(
        tuple(ints.get((e1, e2), 0) for e1 in range(lo1, hi1 + 1))
        for e2 in range(hi2, lo2 - 1, -1)
    )
    return MaskMatrix((lo1, hi2), den, rows)


def mask_to_symbol(mask: MaskMatrix) -> BivariateLaurent:
    return mask.to_symbol()
