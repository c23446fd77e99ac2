"""Closed-form constructors for the four-directional subdivision symbols.

Every bivariate symbol here is normalized so that ``a(1, 1) == 4`` (dilation
``2 I``).  Constructors are cached; all returned values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .laurent import BivariateLaurent, Scalar, UnivariateLaurent, as_fraction, lift

__all__ = [
    "FAMILIES",
    "SchemeSymbol",
    "UnsupportedParametersError",
    "binom",
    "coefficient",
    "make_b",
    "make_bgamma",
    "make_bdelta",
    "make_bsigma",
    "make_box_symbol",
    "make_d",
    "make_delta",
    "make_e",
    "make_example_amu",
    "make_fourdir_box",
    "make_interpolatory",
    "make_pi_power",
    "make_pseudospline",
    "make_sigma",
    "make_tensor_pseudospline",
    "make_univariate_pseudospline",
    "make_univariate_pseudospline_alt",
    "make_variant",
]

FAMILIES = (
    "univariate-lifted",
    "tensor",
    "box",
    "fourdir-box",
    "interpolatory",
    "pseudo",
    "variant",
    "example-a-mu",
    "custom",
)


class UnsupportedParametersError(ValueError):
    """Parameters for which no symbol is defined (e.g. a variant with n - l even)."""


@dataclass(frozen=True, eq=False)
class SchemeSymbol:
    """A bivariate symbol with provenance.  Equality and hashing use ``poly`` only."""

    poly: BivariateLaurent
    family: str
    n: int | None = None
    l: int | None = None
    mu: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "pseudo" and not (0 <= self.l < self.n):
            raise ValueError(f"pseudo-spline needs 0 <= l < n, got n={self.n}, l={self.l}")

    def __eq__(self, other):
        if isinstance(other, SchemeSymbol):
            return self.poly == other.poly
        if isinstance(other, BivariateLaurent):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    @property
    def params(self) -> dict:
        return {"n": self.n, "l": self.l, "mu": [str(m) for m in self.mu]}


def binom(m: int, k: int) -> int:
    """Binomial coefficient under the vanishing convention used by the coefficient formulas.

    ``C(m, 0) = 1`` for every integer ``m``; ``C(m, k) = 0`` if ``k < 0`` or
    ``0 <= m < k``.  A negative ``m`` with positive ``k`` never arises in the
    formulas and raises.
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    if m < 0:
        raise ValueError(f"binomial C({m}, {k}) with negative top and positive k requested")
    if k > m:
        return 0
    return comb(m, k)


def _check_nl(n: int, l: int) -> None:
    if not (isinstance(n, int) and isinstance(l, int)):
        raise TypeError("n and l must be integers")
    if not 0 <= l < n:
        raise ValueError(f"need 0 <= l < n, got n={n}, l={l}")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"need integer n >= 1, got {n!r}")


# -- univariate ---------------------------------------------------------------


@lru_cache(maxsize=None)
def make_sigma() -> UnivariateLaurent:
    """(1 + z)^2 / (4 z)."""
    return UnivariateLaurent({-1: Fraction(1, 4), 0: Fraction(1, 2), 1: Fraction(1, 4)})


@lru_cache(maxsize=None)
def make_delta() -> UnivariateLaurent:
    """-(1 - z)^2 / (4 z)."""
    return UnivariateLaurent({-1: Fraction(-1, 4), 0: Fraction(1, 2), 1: Fraction(-1, 4)})


@lru_cache(maxsize=None)
def _sigma_pow(k: int) -> UnivariateLaurent:
    return make_sigma() ** k


@lru_cache(maxsize=None)
def _delta_pow(k: int) -> UnivariateLaurent:
    return make_delta() ** k


@lru_cache(maxsize=None)
def _u_formula(n: int, l: int) -> UnivariateLaurent:
    # 2 sigma^n sum_{i<=l} C(n+i-1, i) delta^i, without the l < n restriction
    acc = UnivariateLaurent.zero()
    for i in range(l + 1):
        acc = acc + _delta_pow(i).scale(binom(n + i - 1, i))
    return (_sigma_pow(n) * acc).scale(2)


def make_univariate_pseudospline(n: int, l: int) -> UnivariateLaurent:
    """Primal univariate pseudo-spline symbol ``u_n^l`` (``u(1) == 2``).

    Besides ``0 <= l < n`` the extended values ``u_0^0 = 2`` and
    ``u_n^{-1} = 0`` are accepted.
    """
    if n == 0 and l == 0:
        return UnivariateLaurent.constant(2)
    if l == -1 and isinstance(n, int) and n > 0:
        return UnivariateLaurent.zero()
    _check_nl(n, l)
    return _u_formula(n, l)


def _v(n: int, l: int) -> UnivariateLaurent:
    acc = UnivariateLaurent.zero()
    for i in range(1, n + 1):
        acc = acc + (_delta_pow(i - 1) * _sigma_pow(n - i)).scale(binom(n + l, i + l))
    return acc


def make_univariate_pseudospline_alt(n: int, l: int) -> UnivariateLaurent:
    """``u_n^l`` through its reproduction form ``2 - 2 delta^(l+1) v_n^l``."""
    _check_nl(n, l)
    return UnivariateLaurent.constant(2) - (_delta_pow(l + 1) * _v(n, l)).scale(2)


# -- bivariate building blocks ----------------------------------------------


@lru_cache(maxsize=None)
def make_bsigma() -> BivariateLaurent:
    return lift(make_sigma(), 1) * lift(make_sigma(), 2)


@lru_cache(maxsize=None)
def make_bdelta() -> BivariateLaurent:
    return lift(make_delta(), 1) * lift(make_delta(), 2)


@lru_cache(maxsize=None)
def make_bgamma() -> BivariateLaurent:
    """(1 + z1 z2)(z1 + z2) / (4 z1 z2), the diagonal box factor; equals bsigma - bdelta."""
    q = Fraction(1, 4)
    return BivariateLaurent({(1, 0): q, (-1, 0): q, (0, 1): q, (0, -1): q})


@lru_cache(maxsize=None)
def _bgamma_pow(k: int) -> BivariateLaurent:
    return make_bgamma() ** k


@lru_cache(maxsize=None)
def make_box_symbol(i: int, j: int, k: int) -> BivariateLaurent:
    """Four-directional box-spline symbol ``sigma(z1)^i sigma(z2)^j gamma(z)^k``."""
    if min(i, j, k) < 0:
        raise ValueError(f"box-spline indices must be nonnegative, got {(i, j, k)}")
    return lift(_sigma_pow(i), 1) * lift(_sigma_pow(j), 2) * _bgamma_pow(k)


@lru_cache(maxsize=None)
def _sigma_delta_pow(k: int) -> UnivariateLaurent:
    return (make_sigma() * make_delta()) ** k


@lru_cache(maxsize=None)
def make_pi_power(alpha: tuple[int, int]) -> BivariateLaurent:
    """``(sigma delta)(z1)^a1 (sigma delta)(z2)^a2``, i.e. ``delta(z1^2)^a1 delta(z2^2)^a2 / 4^(a1+a2)``."""
    a1, a2 = alpha
    if a1 < 0 or a2 < 0:
        raise ValueError(f"pi-power exponent must be nonnegative, got {alpha}")
    return lift(_sigma_delta_pow(a1), 1) * lift(_sigma_delta_pow(a2), 2)


@lru_cache(maxsize=None)
def _fourdir_box_poly(n: int) -> BivariateLaurent:
    # n == 0 gives the constant 4, needed by the variant family at l = n - 1
    return make_box_symbol((n + 1) // 2, (n + 1) // 2, n // 2).scale(4)


def make_fourdir_box(n: int) -> SchemeSymbol:
    """Scaled box-spline ``4 B_{ceil(n/2), ceil(n/2), floor(n/2)}``: generation 2n-1, reproduction 1."""
    _check_n(n)
    return SchemeSymbol(_fourdir_box_poly(n), "fourdir-box", n=n, l=0)


def make_tensor_pseudospline(n: int, l: int) -> SchemeSymbol:
    _check_nl(n, l)
    u = make_univariate_pseudospline(n, l)
    return SchemeSymbol(lift(u, 1) * lift(u, 2), "tensor", n=n, l=l)


@lru_cache(maxsize=None)
def _lifted_product(n1: int, l1: int, n2: int, l2: int) -> BivariateLaurent:
    return lift(make_univariate_pseudospline(n1, l1), 1) * lift(
        make_univariate_pseudospline(n2, l2), 2
    )


@lru_cache(maxsize=None)
def _interpolatory_poly(n: int) -> BivariateLaurent:
    acc = BivariateLaurent.zero()
    for i in range(n):
        acc = acc + _lifted_product(n - i, n - i - 1, i + 1, i)
    for i in range(n - 1):
        acc = acc - _lifted_product(n - i - 1, n - i - 2, i + 1, i)
    return acc


def make_interpolatory(n: int) -> SchemeSymbol:
    """Interpolatory four-directional scheme assembled from univariate 2k-point symbols."""
    _check_n(n)
    return SchemeSymbol(_interpolatory_poly(n), "interpolatory", n=n, l=n - 1)


def coefficient(n: int, i: int, j: int) -> int:
    """Integer weight of ``pi^(i-j, j)`` inside ``b_n^i``."""
    if not 0 <= j <= i < n:
        raise ValueError(f"need 0 <= j <= i < n, got n={n}, i={i}, j={j}")
    h = (n - i) // 2
    return sum(
        binom(h + k - 1, k) * binom(n + i - 2 * j - 1, i - j - k) * binom(n + 2 * j - i - 1, j - k)
        for k in range(i // 2 + 1)
    )


@lru_cache(maxsize=None)
def make_b(n: int, i: int) -> BivariateLaurent:
    _check_nl(n, i)
    acc = BivariateLaurent.zero()
    for j in range(i + 1):
        acc = acc + make_pi_power((i - j, j)).scale(coefficient(n, i, j))
    return acc


@lru_cache(maxsize=None)
def _family_term(n: int, i: int) -> BivariateLaurent:
    return _fourdir_box_poly(n - i) * make_b(n, i)


@lru_cache(maxsize=None)
def _pseudo_poly(n: int, l: int) -> BivariateLaurent:
    acc = BivariateLaurent.zero()
    for i in range(l + 1):
        acc = acc + _family_term(n, i)
    return acc


def make_pseudospline(n: int, l: int) -> SchemeSymbol:
    """Four-directional pseudo-spline ``a_n^l``: generation 2n-1, reproduction 2l+1."""
    _check_nl(n, l)
    return SchemeSymbol(_pseudo_poly(n, l), "pseudo", n=n, l=l)


def make_d(n: int, l: int) -> BivariateLaurent:
    _check_nl(n, l)
    acc = BivariateLaurent.zero()
    for j in range(l + 1):
        c = binom(n + l - 2 * j - 1, l - j) * binom(n + 2 * j - l - 1, j)
        acc = acc + make_pi_power((l - j, j)).scale(c)
    return acc


def _e(n: int, l: int) -> BivariateLaurent:
    # empty sum for l < 0; callers may step n down to 0 only together with l < 0
    acc = BivariateLaurent.zero()
    for j in range(l + 1):
        acc = acc + _lifted_product(n - j, l - j, n - l + j, j)
    return acc


def make_e(n: int, l: int) -> BivariateLaurent:
    _check_nl(n, l)
    return _e(n, l)


def _as_mu(mu: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(m) for m in mu)


def make_variant(n: int, l: int, mu: Iterable[Scalar]) -> SchemeSymbol:
    """Variant ``a_n^l + a_{n-l-1}^0 sum_j mu_j pi^(l+1-j, j)``, defined only for ``n - l`` odd.

    ``mu`` must have length ``l`` and satisfy ``mu_j == mu_{l+1-j}``.
    """
    _check_nl(n, l)
    mu = _as_mu(mu)
    if (n - l) % 2 == 0:
        raise UnsupportedParametersError(
            f"variant family is only defined for n - l odd, got n={n}, l={l}"
        )
    if len(mu) != l:
        raise ValueError(f"expected {l} weights, got {len(mu)}")
    if mu != mu[::-1]:
        raise ValueError(f"weights must be symmetric (mu_j == mu_(l+1-j)), got {mu}")
    extra = BivariateLaurent.zero()
    for j, m in enumerate(mu, start=1):
        extra = extra + make_pi_power((l + 1 - j, j)).scale(m)
    poly = _pseudo_poly(n, l) + _fourdir_box_poly(n - l - 1) * extra
    return SchemeSymbol(poly, "variant", n=n, l=l, mu=mu)


def make_example_amu(mu: Scalar) -> SchemeSymbol:
    """One-parameter family of cubic-reproducing schemes on the 7x7 octagon with cut 2."""
    mu = as_fraction(mu)
    a = make_box_symbol(1, 1, 1).scale(12) - make_box_symbol(1, 1, 2).scale(8)
    b = make_box_symbol(2, 2, 0) - make_box_symbol(1, 1, 1)
    return SchemeSymbol(a + b.scale(8 * (2 + mu)), "example-a-mu", n=2, mu=(mu,))
