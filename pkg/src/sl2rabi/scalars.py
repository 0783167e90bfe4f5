"""Exact scalar arithmetic: rationals and quadratic extensions Q(sqrt(d)).

Rationals are plain ``fractions.Fraction``.  ``QuadExt`` represents
``a + b*sqrt(disc)`` with rational ``a``, ``b``, ``disc``; a perfect-square
discriminant collapses into the rational part at construction, so equality
and zero tests are decidable and a rational value has exactly one
representation.  Elements of extensions with two different irrational
discriminants refuse to mix (IncompatibleField) rather than coerce.

Floats are deliberately rejected here: the float path lives only in the
root finder and the Fock oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import IncompatibleField

#: scalars the symbolic layers accept
ExactScalar = (int, Fraction)


def as_fraction(x) -> Fraction:
    """Coerce int/Fraction/exact-string input to Fraction."""
    if isinstance(x, bool) or isinstance(x, float):
        raise IncompatibleField(f"expected an exact rational, got {x!r}")
    return Fraction(x)


def rational_sqrt(x: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """Element a + b*sqrt(disc) of the quadratic field Q(sqrt(disc)).

    Canonical form: rational values are stored as (a, 0, 0); in particular a
    perfect-square disc folds into the rational part at construction.
    """

    __slots__ = ("a", "b", "disc")

    def __init__(self, a, b=0, disc=0):
        a, b, disc = as_fraction(a), as_fraction(b), as_fraction(disc)
        if b:
            root = rational_sqrt(disc)
            if root is not None:
                a, b, disc = a + b * root, Fraction(0), Fraction(0)
        else:
            disc = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "disc", disc)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- field housekeeping -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.b

    def _join(self, other) -> "QuadExt":
        """Coerce other into self's field, or raise IncompatibleField."""
        if isinstance(other, QuadExt):
            if self.b and other.b and self.disc != other.disc:
                raise IncompatibleField(
                    f"cannot mix sqrt({self.disc}) with sqrt({other.disc})"
                )
            return other
        if isinstance(other, float) or isinstance(other, bool):
            raise IncompatibleField(f"cannot mix exact scalars with {other!r}")
        if isinstance(other, ExactScalar):
            return QuadExt(other)
        return NotImplemented

    def _disc_with(self, other: "QuadExt") -> Fraction:
        return self.disc if self.b else other.disc

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self._disc_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.disc)

    def __sub__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - other.a, self.b - other.b, self._disc_with(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._disc_with(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        # norm (a + b sqrt d)(a - b sqrt d); zero iff the element is zero
        # because a collapsed element never has a square disc.
        norm = self.a * self.a - self.b * self.b * self.disc
        if not norm:
            raise ZeroDivisionError("inverse of zero field element")
        return QuadExt(self.a / norm, -self.b / norm, self.disc)

    def __truediv__(self, other):
        other = self._join(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        inv = self.inverse()
        return inv * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = QuadExt(1)
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.disc) == (other.a, other.b, other.disc)
        if isinstance(other, bool) or isinstance(other, float):
            return NotImplemented
        if isinstance(other, ExactScalar):
            return self.is_rational and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.disc))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        if self.disc < 0:
            raise ValueError("negative discriminant has no real float value")
        return float(self.a) + float(self.b) * math.sqrt(float(self.disc))

    def __lt__(self, other):
        # numeric ordering via floats; used for presentation sorts only
        return float(self) < to_float(other)

    def __le__(self, other):
        return float(self) <= to_float(other)

    def __gt__(self, other):
        return float(self) > to_float(other)

    def __ge__(self, other):
        return float(self) >= to_float(other)

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.disc!r})"

    def __str__(self):
        if self.is_rational:
            return str(self.a)
        return f"({self.a})+({self.b})√({self.disc})"


def is_exact(x) -> bool:
    """True for scalars the symbolic layers accept."""
    return isinstance(x, (QuadExt,) + ExactScalar) and not isinstance(x, bool)


def to_float(x) -> float:
    if isinstance(x, QuadExt):
        return float(x)
    return float(x)


def exact_sqrt(x):
    """Exact square root of a nonnegative exact scalar.

    Returns a Fraction for perfect squares, otherwise the QuadExt
    sqrt(x) = 0 + 1*sqrt(x).  Nested radicals (sqrt of an irrational
    QuadExt) are not representable and raise IncompatibleField.
    """
    if isinstance(x, QuadExt):
        if not x.is_rational:
            raise IncompatibleField(f"sqrt of irrational element {x} not representable")
        x = x.a
    x = as_fraction(x)
    if x < 0:
        raise ValueError(f"square root of negative scalar {x}")
    root = rational_sqrt(x)
    if root is not None:
        return root
    return QuadExt(0, 1, x)


def scalar_str(x) -> str:
    """Canonical serialization: '3/4', '-1/10', '(-1/2)+(1/2)√(5/9)', floats via repr."""
    if isinstance(x, QuadExt):
        return str(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return str(Fraction(x))
    return repr(float(x))
