"""Dense univariate polynomials over an exact field or over floats.

Coefficient index equals the power of z.  Trailing zeros are trimmed, so the
zero polynomial has an empty coefficient tuple and degree() returns the
sentinel -1.  Arithmetic defers to the coefficient scalars, which is where
field compatibility is enforced.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadExt

_SCALAR_TYPES = (int, float, Fraction, QuadExt)


def _norm_coeff(c):
    # ints become Fractions so the exact path never mixes machine ints in
    if isinstance(c, bool):
        raise TypeError("bool is not a polynomial coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, _SCALAR_TYPES):
        return c
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def variable(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, power, coeff=1):
        return cls((0,) * power + (coeff,))

    # -- structure ------------------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def leading_coefficient(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out)
        if isinstance(other, _SCALAR_TYPES) and not isinstance(other, bool):
            return Polynomial(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = Polynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    def derivative(self, order=1) -> "Polynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(k * cs[k] for k in range(1, len(cs)))
            if not cs:
                break
        return Polynomial(cs)

    def evaluate(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.evaluate(x)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return _eq_seq(self.coeffs, other.coeffs)
        if isinstance(other, _SCALAR_TYPES) and not isinstance(other, bool):
            return _eq_seq(self.coeffs, Polynomial((other,)).coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)


def _eq_seq(a, b):
    # lengths can differ only by trailing zeros, which are trimmed
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def _as_poly(other):
    if isinstance(other, Polynomial):
        return other
    if isinstance(other, _SCALAR_TYPES) and not isinstance(other, bool):
        return Polynomial((other,))
    return NotImplemented
