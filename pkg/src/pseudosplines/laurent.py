"""Sparse Laurent polynomials in one and two variables with exact rational coefficients.

Both classes keep a canonical term map (no zero coefficients), so two values are
equal exactly when their term maps are equal.  Coefficients are
:class:`fractions.Fraction`; integers and fraction strings are accepted on input.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Callable, Iterable, Mapping, Tuple, Union

__all__ = [
    "DomainError",
    "Exponent2",
    "UnivariateLaurent",
    "BivariateLaurent",
    "TRANSFORMS",
    "as_fraction",
    "falling_factorial",
    "lift",
]

Exponent2 = Tuple[int, int]
Scalar = Union[int, Fraction, str]


class DomainError(ValueError):
    """Evaluation outside ``(C \\ {0})^2``."""


def as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean coefficient {x!r}")
    if isinstance(x, (int, str, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def falling_factorial(m: int, k: int) -> int:
    """m (m-1) ... (m-k+1); valid for negative m, used by the power rule."""
    out = 1
    for t in range(k):
        out *= m - t
    return out


def _canonical(items: Iterable) -> dict:
    terms: dict = {}
    for e, c in items:
        c = as_fraction(c)
        if c:
            terms[e] = terms.get(e, 0) + c
    return {e: c for e, c in terms.items() if c}


def _integer_form(terms: Mapping) -> tuple[int, dict]:
    """Common denominator and integer numerators of a term map."""
    den = lcm(*(c.denominator for c in terms.values())) if terms else 1
    return den, {e: c.numerator * (den // c.denominator) for e, c in terms.items()}


class _Laurent:
    """Shared canonical-term-map machinery; subclasses fix the exponent type."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = _canonical(self._check_key(e, c) for e, c in items)
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict):
        # terms already canonical: Fraction values, no zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _from_integers(cls, den: int, ints: Mapping):
        return cls._trusted({e: Fraction(v, den) for e, v in ints.items() if v})

    @staticmethod
    def _check_key(e, c):
        raise NotImplementedError

    @classmethod
    def constant(cls, c: Scalar):
        raise NotImplementedError

    @classmethod
    def zero(cls):
        return cls._trusted({})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return self._trusted(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._trusted({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: Scalar):
        c = as_fraction(c)
        if not c:
            return self.zero()
        return self._trusted({e: c * v for e, v in self._terms.items()})

    def _shift(self, a, b):
        raise NotImplementedError

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        if not self._terms or not other._terms:
            return self.zero()
        # Convolve integer numerators, divide once per output term.
        d1, p = _integer_form(self._terms)
        d2, q = _integer_form(other._terms)
        shift = self._shift
        out: dict = {}
        get = out.get
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = shift(e1, e2)
                out[e] = get(e, 0) + c1 * c2
        return self._from_integers(d1 * d2, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(1 / as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result, base = self.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def map_terms(self, f: Callable):
        """Apply ``f(e, c) -> (e', c')`` to every term and re-canonicalize."""
        return type(self)(f(e, c) for e, c in self._terms.items())


class UnivariateLaurent(_Laurent):
    """Laurent polynomial in one variable ``z``, terms keyed by integer exponent."""

    __slots__ = ()

    @staticmethod
    def _check_key(e, c):
        if not isinstance(e, int) or isinstance(e, bool):
            raise TypeError(f"exponent must be an int, got {e!r}")
        return e, c

    @classmethod
    def constant(cls, c: Scalar):
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1):
        return cls({e: c})

    @staticmethod
    def _shift(a, b):
        return a + b

    def __call__(self, z: Scalar) -> Fraction:
        z = as_fraction(z)
        if not z:
            raise DomainError("Laurent polynomials are evaluated on z != 0 only")
        return sum((c * z**e for e, c in self._terms.items()), Fraction(0))

    def derivative(self, k: int = 1) -> "UnivariateLaurent":
        return self.map_terms(lambda e, c: (e - k, c * falling_factorial(e, k)))

    def substitute_power(self, p: int) -> "UnivariateLaurent":
        """The polynomial ``z -> f(z**p)``."""
        return self._trusted({e * p: c for e, c in self._terms.items()})

    def exponent_range(self) -> tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no exponent range")
        return min(self._terms), max(self._terms)

    def __repr__(self):
        if not self._terms:
            return "UnivariateLaurent(0)"
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._terms.items()))
        return f"UnivariateLaurent({{{body}}})"


def _negate(axis):
    def f(e, c):
        return e, (-c if e[axis] % 2 else c)

    return f


def _invert(axis):
    def f(e, c):
        e = list(e)
        e[axis] = -e[axis]
        return tuple(e), c

    return f


TRANSFORMS: dict[str, Callable] = {
    "negate_z1": _negate(0),
    "negate_z2": _negate(1),
    "invert_z1": _invert(0),
    "invert_z2": _invert(1),
    "swap": lambda e, c: ((e[1], e[0]), c),
}


class BivariateLaurent(_Laurent):
    """Laurent polynomial in ``(z1, z2)``, terms keyed by exponent pairs."""

    __slots__ = ()

    @staticmethod
    def _check_key(e, c):
        if (
            not isinstance(e, tuple)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise TypeError(f"exponent must be a pair of ints, got {e!r}")
        return e, c

    @classmethod
    def constant(cls, c: Scalar):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c: Scalar = 1):
        return cls({(e1, e2): c})

    @staticmethod
    def _shift(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def __call__(self, z1: Scalar, z2: Scalar) -> Fraction:
        z1, z2 = as_fraction(z1), as_fraction(z2)
        if not z1 or not z2:
            raise DomainError("symbols live on (C \\ {0})^2; got a zero coordinate")
        return sum(
            (c * z1**e1 * z2**e2 for (e1, e2), c in self._terms.items()), Fraction(0)
        )

    evaluate = __call__

    def partial_derivative(self, k: Exponent2) -> "BivariateLaurent":
        """Mixed partial ``d^(k1+k2) / dz1^k1 dz2^k2`` by the power rule."""
        k1, k2 = k
        if k1 < 0 or k2 < 0:
            raise ValueError(f"derivative order must be nonnegative, got {k}")
        if k1 == k2 == 0:
            return self
        return self.map_terms(
            lambda e, c: (
                (e[0] - k1, e[1] - k2),
                c * falling_factorial(e[0], k1) * falling_factorial(e[1], k2),
            )
        )

    def transform(self, name: str) -> "BivariateLaurent":
        """One of the substitutions in :data:`TRANSFORMS`."""
        try:
            f = TRANSFORMS[name]
        except KeyError:
            raise ValueError(
                f"unknown transform {name!r}; expected one of {sorted(TRANSFORMS)}"
            ) from None
        return self._trusted(dict(f(e, c) for e, c in self._terms.items()))

    def integer_form(self) -> tuple[int, dict]:
        """``(den, {exponent: int})`` with ``den`` the least common denominator."""
        return _integer_form(self._terms)

    def support_points(self) -> list[Exponent2]:
        return sorted(self._terms)

    def __repr__(self):
        if not self._terms:
            return "BivariateLaurent(0)"
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._terms.items()))
        return f"BivariateLaurent({{{body}}})"


def lift(p: UnivariateLaurent, axis: int) -> BivariateLaurent:
    """Embed ``p(z)`` as ``p(z1)`` (axis 1) or ``p(z2)`` (axis 2)."""
    if axis == 1:
        return BivariateLaurent._trusted({(e, 0): c for e, c in p.items()})
    if axis == 2:
        return BivariateLaurent._trusted({(0, e): c for e, c in p.items()})
    raise ValueError(f"axis must be 1 or 2, got {axis!r}")
