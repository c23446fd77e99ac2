"""Algebraic property checks: symmetry, sum rules, reproduction, interpolation, support.

All checks are exact.  Degree probes evaluate mixed partial derivatives at the
sign points ``E = {(+-1, +-1)}`` straight from the integer form of the symbol,
without building derivative polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable

import numpy as np

from .laurent import BivariateLaurent, Exponent2, falling_factorial, lift
from .reference import CUBIC_EXAMPLE_MASK, example_amu_mask
from .symbols import SchemeSymbol, make_box_symbol, make_delta, make_example_amu

__all__ = [
    "E_PRIME",
    "DegreeReport",
    "InvalidSchemeError",
    "SupportInfo",
    "SupportOctagon",
    "UndefinedSupportError",
    "Witness",
    "analyze",
    "check_convergence_necessary",
    "check_interpolatory",
    "check_symmetry",
    "default_max_check",
    "derivative_table",
    "cubic_example_check",
    "generation_degree",
    "generation_probe",
    "predicted_support",
    "reproduction_degree",
    "reproduction_probe",
    "support_of",
]

E_PRIME: tuple[Exponent2, ...] = ((-1, 1), (1, -1), (-1, -1))


class InvalidSchemeError(ValueError):
    """The symbol fails a precondition of the requested check."""


class UndefinedSupportError(ValueError):
    pass


def _poly(a) -> BivariateLaurent:
    return a.poly if isinstance(a, SchemeSymbol) else a


def default_max_check(a) -> int:
    if isinstance(a, SchemeSymbol) and a.n is not None:
        return 2 * a.n + 2
    return 16


# -- derivatives at sign points -----------------------------------------------


def derivative_table(a, point: Exponent2, max_order: int) -> list[list[Fraction]]:
    """``T[k1][k2] = (D^(k1,k2) a)(point)`` for ``k1 + k2 <= max_order``; ``point`` in ``E``.

    Entries with ``k1 + k2 > max_order`` are computed too (the table is square)
    but callers should not rely on them.
    """
    s1, s2 = point
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError(f"derivative tables are only available at sign points, got {point}")
    a = _poly(a)
    size = max_order + 1
    if a.is_zero():
        return [[Fraction(0)] * size for _ in range(size)]
    den, ints = a.integer_form()
    e1s = sorted({e[0] for e in ints})
    e2s = sorted({e[1] for e in ints})
    r1 = {e: i for i, e in enumerate(e1s)}
    r2 = {e: i for i, e in enumerate(e2s)}
    coeffs = np.zeros((len(e1s), len(e2s)), dtype=object)
    for (e1, e2), c in ints.items():
        coeffs[r1[e1], r2[e2]] = c
    # D^k z^e at s: ff(e, k) s^(e - k); s^(-k) == s^k for s = +-1
    f1 = np.array(
        [[falling_factorial(e, k) * s1 ** ((e - k) % 2) for k in range(size)] for e in e1s],
        dtype=object,
    )
    f2 = np.array(
        [[falling_factorial(e, k) * s2 ** ((e - k) % 2) for k in range(size)] for e in e2s],
        dtype=object,
    )
    vals = f1.T.dot(coeffs).dot(f2)
    return [[Fraction(int(vals[i, j]), den) for j in range(size)] for i in range(size)]


@dataclass(frozen=True)
class Witness:
    """A nonvanishing derivative ``D^order a`` at ``point``."""

    order: Exponent2
    point: Exponent2
    value: Fraction

    def __str__(self):
        return f"D^{self.order} a{self.point} = {self.value}"


@dataclass(frozen=True)
class Probe:
    degree: int
    witness: Witness | None  # first failure at order degree + 1, if probed


def _first_failures(tables: dict, orders: Iterable[int]) -> dict[int, Witness]:
    out = {}
    for d in orders:
        for point, t in tables.items():
            for k1 in range(d + 1):
                v = t[k1][d - k1]
                if v:
                    out.setdefault(d, Witness((k1, d - k1), point, v))
                    break
            if d in out:
                break
    return out


def generation_probe(a, max_check: int | None = None) -> Probe:
    """Sum-rule degree plus the first failing derivative (probing through order ``max_check + 1``)."""
    if max_check is None:
        max_check = default_max_check(a)
    top = max_check + 1
    tables = {z: derivative_table(a, z, top) for z in E_PRIME}
    fails = _first_failures(tables, range(top + 1))
    if not fails:
        return Probe(max_check, None)
    d = min(fails)
    return Probe(min(d - 1, max_check), fails[d])


def generation_degree(a, max_check: int | None = None) -> int:
    """Largest ``d <= max_check`` with ``D^k a = 0`` on ``E'`` for all ``|k| <= d``; -1 if none."""
    return generation_probe(a, max_check).degree


def check_convergence_necessary(a) -> bool:
    """``a(1, 1) == 4`` and ``a`` vanishes on ``E'``."""
    a = _poly(a)
    return a(1, 1) == 4 and all(a(*z) == 0 for z in E_PRIME)


def reproduction_probe(a, max_check: int | None = None) -> Probe:
    if not check_convergence_necessary(a):
        raise InvalidSchemeError(
            "reproduction degree requires a(1,1) = 4 and a = 0 on E'"
        )
    if max_check is None:
        max_check = default_max_check(a)
    top = max_check + 1
    table = derivative_table(a, (1, 1), top)
    fails = _first_failures({(1, 1): table}, range(1, top + 1))
    raw = min(fails) - 1 if fails else max_check
    witness = fails.get(raw + 1)
    gen = generation_degree(a, max_check)
    return Probe(min(raw, gen, max_check), witness)


def reproduction_degree(a, max_check: int | None = None) -> int:
    """Largest ``d <= max_check`` with ``D^k a(1,1) = 0`` for ``0 < |k| <= d``, capped at the generation degree."""
    return reproduction_probe(a, max_check).degree


# -- symmetry and interpolation -----------------------------------------------


def check_symmetry(a) -> bool:
    a = _poly(a)
    return all(a.transform(t) == a for t in ("invert_z1", "invert_z2", "swap"))


def check_interpolatory(a) -> bool:
    """Whether the four sign-flipped copies of ``a`` sum to the constant 4."""
    a = _poly(a)
    flips = a + a.transform("negate_z2") + a.transform("negate_z1")
    flips = flips + a.transform("negate_z1").transform("negate_z2")
    return flips == 4


# -- support ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SupportOctagon:
    """``{alpha : |a1| <= m, |a2| <= n, |a1| + |a2| <= m + n - l}``."""

    m: int
    n: int
    l: int

    @property
    def width(self) -> int:
        return 2 * self.m + 1

    @property
    def height(self) -> int:
        return 2 * self.n + 1

    @property
    def area(self) -> int:
        return 4 * self.m * self.n - 2 * self.l * self.l

    def contains(self, alpha: Exponent2) -> bool:
        x, y = abs(alpha[0]), abs(alpha[1])
        return x <= self.m and y <= self.n and x + y <= self.m + self.n - self.l

    def vertices(self) -> set[Exponent2]:
        m, n, l = self.m, self.n, self.l
        out = set()
        for sx in (1, -1):
            for sy in (1, -1):
                out.add((sx * m, sy * (n - l)))
                out.add((sx * (m - l), sy * n))
        return out

    def __str__(self):
        if self.m == self.n:
            return f"width {self.width}, corner cut {self.l}"
        return f"{self.width}x{self.height}, corner cut {self.l}"


@dataclass(frozen=True)
class SupportInfo:
    """Measured support.  ``octagon`` is the tightest enclosing octagon; ``is_octagon`` says whether it is the hull."""

    octagon: SupportOctagon
    area: Fraction
    is_octagon: bool
    bbox: tuple[int, int, int, int]  # min a1, max a1, min a2, max a2
    max_l1: int


def _hull_area(points: list[Exponent2]) -> Fraction:
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    twice = sum(
        hull[i][0] * hull[(i + 1) % len(hull)][1] - hull[(i + 1) % len(hull)][0] * hull[i][1]
        for i in range(len(hull))
    )
    return Fraction(abs(twice), 2)


def support_of(a) -> SupportInfo:
    a = _poly(a)
    if a.is_zero():
        raise UndefinedSupportError("the zero symbol has no support")
    pts = a.support_points()
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    m = max(abs(x) for x in xs)
    n = max(abs(y) for y in ys)
    s = max(abs(x) + abs(y) for x, y in pts)
    octagon = SupportOctagon(m, n, m + n - s)
    present = set(pts)
    is_oct = octagon.vertices() <= present
    area = Fraction(octagon.area) if is_oct else _hull_area(pts)
    return SupportInfo(octagon, area, is_oct, (min(xs), max(xs), min(ys), max(ys)), s)


def predicted_support(n: int, l: int) -> SupportOctagon:
    """Octagon of ``a_n^l``: width ``2(n + l) + 1``, corner cut ``n + l - ceil((n - l)/2)``."""
    if not 0 <= l < n:
        raise ValueError(f"need 0 <= l < n, got n={n}, l={l}")
    h = n + l
    return SupportOctagon(h, h, h - ceil((n - l) / 2))


# -- worked examples ----------------------------------------------------------


def cubic_example_check() -> bool:
    """Both printed forms of the cubic-reproducing example hold, and its relatives match their masks."""
    B = make_box_symbol
    delta1, delta2 = lift(make_delta(), 1), lift(make_delta(), 2)
    a = B(1, 1, 1).scale(12) - B(1, 1, 2).scale(8)
    if a != CUBIC_EXAMPLE_MASK.to_symbol():
        return False
    decomposed = (
        BivariateLaurent.constant(4)
        - (delta1 * delta1 * (B(0, 1, 0) + B(1, 1, 0).scale(2))).scale(4)
        - (delta1 * delta2 * (BivariateLaurent.one() + B(1, 1, 0).scale(4))).scale(4)
        - (delta2 * delta2 * (B(1, 0, 0) + B(1, 1, 0).scale(2))).scale(4)
    )
    if a != decomposed:
        return False
    square = lift(make_delta().substitute_power(2), 1) * lift(make_delta().substitute_power(2), 2)
    b = B(2, 2, 0) - B(1, 1, 1)
    if b != square.scale(Fraction(1, 16)):
        return False
    for mu in (0, 1, -2):
        a_mu = a + b.scale(8 * (2 + mu))
        if a_mu.terms != example_amu_mask(mu):
            return False
        if a_mu != make_example_amu(mu).poly:
            return False
    return True


# -- aggregate --------------------------------------------------------------


@dataclass(frozen=True)
class DegreeReport:
    generation_degree: int
    reproduction_degree: int
    interpolatory: bool
    symmetric: bool
    convergence_necessary: bool
    generation_witness: Witness | None = None
    reproduction_witness: Witness | None = None

    def __post_init__(self):
        g, r = self.generation_degree, self.reproduction_degree
        if g >= 0 and r >= 0 and r > g:
            raise ValueError("reproduction degree cannot exceed generation degree")


def analyze(a, max_check: int | None = None) -> DegreeReport:
    """All degree-type checks at once.  Reproduction is -1 when the necessary conditions fail."""
    gen = generation_probe(a, max_check)
    conv = check_convergence_necessary(a)
    rep = reproduction_probe(a, max_check) if conv else Probe(-1, None)
    return DegreeReport(
        generation_degree=gen.degree,
        reproduction_degree=rep.degree,
        interpolatory=check_interpolatory(a),
        symmetric=check_symmetry(a),
        convergence_necessary=conv,
        generation_witness=gen.witness,
        reproduction_witness=rep.witness,
    )
