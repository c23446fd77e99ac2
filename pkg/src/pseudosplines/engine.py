"""Exact binary refinement of grid data, basic limit sampling, empirical reproduction.

A :class:`GridFunction` carries a rectangular window of validity.  Inside the
window, absent points are zero; outside it nothing is known.  One refinement
step keeps only output points whose every contributing input lies inside the
input window, so truncation never masquerades as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

import numpy as np

from .analysis import InvalidSchemeError, check_convergence_necessary, check_symmetry
from .laurent import BivariateLaurent, Exponent2, Scalar, as_fraction
from .mask import MaskMatrix, symbol_to_mask

__all__ = [
    "GridFunction",
    "Window",
    "WindowExhaustedError",
    "basic_limit",
    "delta_grid",
    "evaluate_polynomial",
    "reproduce_empirically",
    "sample_polynomial",
    "subdivide",
    "subdivide_step",
]

# inclusive bounds (min a1, max a1, min a2, max a2)
Window = tuple[int, int, int, int]


class WindowExhaustedError(ValueError):
    """Refinement left no point whose value is fully determined by the input window."""


@dataclass(frozen=True)
class GridFunction:
    """Values on ``2^-level Z^2``; point ``alpha`` sits at parameter ``alpha / 2^level``."""

    level: int
    window: Window
    values: Mapping[Exponent2, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        i0, i1, j0, j1 = self.window
        if i0 > i1 or j0 > j1:
            raise WindowExhaustedError(f"empty window {self.window}")
        clean = {}
        for alpha, v in self.values.items():
            v = as_fraction(v)
            if not self.in_window(alpha):
                raise ValueError(f"value at {alpha} lies outside the window {self.window}")
            if v:
                clean[tuple(alpha)] = v
        object.__setattr__(self, "values", clean)

    def in_window(self, alpha: Exponent2) -> bool:
        i0, i1, j0, j1 = self.window
        return i0 <= alpha[0] <= i1 and j0 <= alpha[1] <= j1

    def __getitem__(self, alpha: Exponent2) -> Fraction:
        if not self.in_window(alpha):
            raise KeyError(f"{alpha} is outside the window of validity {self.window}")
        return self.values.get(tuple(alpha), Fraction(0))

    def points(self):
        i0, i1, j0, j1 = self.window
        for a1 in range(i0, i1 + 1):
            for a2 in range(j0, j1 + 1):
                yield (a1, a2)

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def restrict(self, window: Window) -> "GridFunction":
        i0, i1, j0, j1 = window
        if not (self.in_window((i0, j0)) and self.in_window((i1, j1))):
            raise ValueError(f"{window} is not inside {self.window}")
        keep = {a: v for a, v in self.values.items() if i0 <= a[0] <= i1 and j0 <= a[1] <= j1}
        return GridFunction(self.level, window, keep)

    def to_dense(self) -> tuple[int, list[list[int]]]:
        """``(den, rows)`` in print layout (a2 descending down rows), exact integers over ``den``."""
        den = lcm(*(v.denominator for v in self.values.values())) if self.values else 1
        i0, i1, j0, j1 = self.window
        rows = [
            [
                int(self.values.get((a1, a2), 0) * den)
                for a1 in range(i0, i1 + 1)
            ]
            for a2 in range(j1, j0 - 1, -1)
        ]
        return den, rows


def delta_grid(radius: int) -> GridFunction:
    """The unit impulse at the origin, valid on ``[-radius, radius]^2``."""
    return GridFunction(0, (-radius, radius, -radius, radius), {(0, 0): Fraction(1)})


def _as_mask(mask) -> MaskMatrix:
    if isinstance(mask, MaskMatrix):
        return mask
    return symbol_to_mask(getattr(mask, "poly", mask))


def _mask_box(mask: MaskMatrix) -> Window:
    h, w = mask.shape
    lo1, hi2 = mask.offset
    return lo1, lo1 + w - 1, hi2 - h + 1, hi2


def output_window(mask: MaskMatrix, window: Window) -> Window:
    """Points ``alpha`` whose contributing inputs ``beta`` (with ``alpha - 2 beta`` in the mask box) all lie in ``window``."""
    lo1, hi1, lo2, hi2 = _mask_box(mask)
    i0, i1, j0, j1 = window
    return (2 * i0 + hi1 - 1, 2 * i1 + lo1 + 1, 2 * j0 + hi2 - 1, 2 * j1 + lo2 + 1)


def subdivide_step(mask, f: GridFunction) -> GridFunction:
    """``g_alpha = sum_beta a_(alpha - 2 beta) f_beta`` on the shrunken valid window."""
    mask = _as_mask(mask)
    win = output_window(mask, f.window)
    if win[0] > win[1] or win[2] > win[3]:
        raise WindowExhaustedError(
            f"window {f.window} is too small for a mask of shape {mask.shape}"
        )
    i0, i1, j0, j1 = f.window
    w1, w2 = i1 - i0 + 1, j1 - j0 + 1
    fden = lcm(*(v.denominator for v in f.values.values())) if f.values else 1
    src = np.zeros((w1, w2), dtype=object)
    for (a1, a2), v in f.values.items():
        src[a1 - i0, a2 - j0] = v.numerator * (fden // v.denominator)

    lo1, hi1, lo2, hi2 = _mask_box(mask)
    # full scatter range: alpha = 2 beta + gamma
    b1, b2 = 2 * i0 + lo1, 2 * j0 + lo2
    out = np.zeros((2 * (w1 - 1) + hi1 - lo1 + 1, 2 * (w2 - 1) + hi2 - lo2 + 1), dtype=object)
    for (g1, g2), c in _mask_ints(mask).items():
        r, s = g1 - lo1, g2 - lo2
        out[r : r + 2 * w1 - 1 : 2, s : s + 2 * w2 - 1 : 2] += c * src

    den = fden * mask.denominator
    values = {}
    for a1 in range(win[0], win[1] + 1):
        for a2 in range(win[2], win[3] + 1):
            v = out[a1 - b1, a2 - b2]
            if v:
                values[(a1, a2)] = Fraction(int(v), den)
    return GridFunction(f.level + 1, win, values)


def _mask_ints(mask: MaskMatrix) -> dict[Exponent2, int]:
    return {
        mask.exponent(r, c): v
        for r, row in enumerate(mask.entries)
        for c, v in enumerate(row)
        if v
    }


def subdivide(mask, f: GridFunction, steps: int) -> GridFunction:
    mask = _as_mask(mask)
    for _ in range(steps):
        f = subdivide_step(mask, f)
    return f


def _delta_radius(mask: MaskMatrix, steps: int) -> int:
    # smallest level-0 radius whose final window covers the mask hull (in level-0 units) plus one ring
    lo1, hi1, lo2, hi2 = _mask_box(mask)
    reach = max(-lo1, hi1, -lo2, hi2) + 1
    radius = reach
    while True:
        win = (-radius, radius, -radius, radius)
        for _ in range(steps):
            win = output_window(mask, win)
        if min(-win[0], win[1], -win[2], win[3]) >= reach * 2**steps:
            return radius
        radius += 1


def basic_limit(a, steps: int = 3) -> GridFunction:
    """Refine the unit impulse ``steps`` times; the result covers the limit support plus one ring."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    mask = _as_mask(a)
    return subdivide(mask, delta_grid(_delta_radius(mask, steps)), steps)


def evaluate_polynomial(p: BivariateLaurent, x: Scalar, y: Scalar) -> Fraction:
    """Value of an ordinary polynomial ``sum c x^i y^j`` (nonnegative exponents), zeros allowed."""
    x, y = as_fraction(x), as_fraction(y)
    if p.is_zero():
        return Fraction(0)
    den, ints = p.integer_form()
    if any(i < 0 or j < 0 for i, j in ints):
        raise ValueError("sampling needs a polynomial with nonnegative exponents")
    # clear denominators: q^D p(a/q, b/q) is an integer combination
    q = lcm(x.denominator, y.denominator)
    a, b = x.numerator * (q // x.denominator), y.numerator * (q // y.denominator)
    top = max(i + j for i, j in ints)
    total = sum(c * a**i * b**j * q ** (top - i - j) for (i, j), c in ints.items())
    return Fraction(total, den * q**top)


def sample_polynomial(p: BivariateLaurent, window: Window, level: int = 0) -> GridFunction:
    scale = Fraction(1, 2**level)
    i0, i1, j0, j1 = window
    values = {
        (a1, a2): evaluate_polynomial(p, a1 * scale, a2 * scale)
        for a1 in range(i0, i1 + 1)
        for a2 in range(j0, j1 + 1)
    }
    return GridFunction(level, window, values)


def reproduce_empirically(a, p: BivariateLaurent, window: Window) -> bool:
    """Whether one step maps integer samples of ``p`` to its exact half-grid samples on the valid window."""
    poly = getattr(a, "poly", a)
    if not check_convergence_necessary(poly) or not check_symmetry(poly):
        raise InvalidSchemeError(
            "empirical reproduction needs a symmetric primal symbol with a(1,1)=4 and zeros on E'"
        )
    g = subdivide_step(symbol_to_mask(poly), sample_polynomial(p, window))
    return all(g[alpha] == evaluate_polynomial(p, Fraction(alpha[0], 2), Fraction(alpha[1], 2))
               for alpha in g.points())
