"""Linear differential operators with polynomial coefficients.

An operator is stored as a tuple of Polynomials, index k holding the
coefficient of d^k/dz^k.  Composition uses the Leibniz rule

    d^i (q(z) u) = sum_m C(i, m) q^(m)(z) d^(i-m) u,

so products, commutators and restrictions to the invariant space
span{1, z, ..., z^n} are all exact whenever the coefficients are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpaceNotPreserved
from .polynomials import Polynomial, _as_poly
from .scalars import QuadExt

_SCALARS = (int, float, Fraction, QuadExt)


class LinearDiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        polys = []
        for c in coeffs:
            p = c if isinstance(c, Polynomial) else Polynomial(c)
            polys.append(p)
        while polys and polys[-1].is_zero():
            polys.pop()
        object.__setattr__(self, "coeffs", tuple(polys))

    def __setattr__(self, name, value):
        raise AttributeError("LinearDiffOp is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def identity(cls):
        return cls((Polynomial.one(),))

    @classmethod
    def from_polynomial(cls, p):
        """Multiplication operator u -> p*u."""
        return cls((_as_poly(p),))

    @classmethod
    def derivative(cls, order=1):
        """The operator d^order/dz^order."""
        return cls((Polynomial.zero(),) * order + (Polynomial.one(),))

    # -- structure ------------------------------------------------------------

    def order(self) -> int:
        """Differential order, with -1 as the sentinel for the zero operator."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, der_order) -> Polynomial:
        if 0 <= der_order < len(self.coeffs):
            return self.coeffs[der_order]
        return Polynomial.zero()

    # -- action and algebra ---------------------------------------------------

    def apply(self, p: Polynomial) -> Polynomial:
        if not isinstance(p, Polynomial):
            p = _as_poly(p)
            if p is NotImplemented:
                raise TypeError("apply expects a Polynomial")
        out = Polynomial.zero()
        dp = p
        for k, c in enumerate(self.coeffs):
            if k:
                dp = dp.derivative()
            if not c.is_zero() and not dp.is_zero():
                out = out + c * dp
        return out

    def __call__(self, p):
        return self.apply(p)

    def compose(self, other: "LinearDiffOp") -> "LinearDiffOp":
        """Operator product: (self.compose(other))(u) = self(other(u))."""
        acc = {}
        for i, p in enumerate(self.coeffs):
            if p.is_zero():
                continue
            for j, q in enumerate(other.coeffs):
                dq = q
                for m in range(i + 1):
                    if m:
                        dq = dq.derivative()
                        if dq.is_zero():
                            break
                    term = p * dq * math.comb(i, m)
                    k = i - m + j
                    acc[k] = acc.get(k, Polynomial.zero()) + term
        if not acc:
            return LinearDiffOp.zero()
        top = max(acc)
        return LinearDiffOp(tuple(acc.get(k, Polynomial.zero()) for k in range(top + 1)))

    def __add__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return LinearDiffOp(out)

    __radd__ = __add__

    def __neg__(self):
        return LinearDiffOp(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LinearDiffOp):
            return self.compose(other)
        if isinstance(other, (Polynomial,) + _SCALARS) and not isinstance(other, bool):
            return self.compose(LinearDiffOp.from_polynomial(other))
        return NotImplemented

    def __rmul__(self, other):
        # scalar or polynomial on the left is plain coefficient scaling
        if isinstance(other, (Polynomial,) + _SCALARS) and not isinstance(other, bool):
            return LinearDiffOp.from_polynomial(other).compose(self)
        return NotImplemented

    def commutator(self, other: "LinearDiffOp") -> "LinearDiffOp":
        return self.compose(other) - other.compose(self)

    # -- invariant polynomial spaces -------------------------------------------

    def preserves_space(self, n: int) -> bool:
        """Does the operator map span{1, z, ..., z^n} into itself?"""
        _check_space_degree(n)
        for j in range(n + 1):
            if self.apply(Polynomial.monomial(j)).degree() > n:
                return False
        return True

    def restriction_matrix(self, n: int):
        """Matrix of the operator on span{1, z, ..., z^n}.

        Row i, column j holds the z^i coordinate of the image of z^j.
        Raises SpaceNotPreserved naming the first offending monomial.
        """
        _check_space_degree(n)
        cols = []
        for j in range(n + 1):
            image = self.apply(Polynomial.monomial(j))
            if image.degree() > n:
                raise SpaceNotPreserved(j, image.degree(), n)
            cols.append([image.coefficient(i) for i in range(n + 1)])
        return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]

    # -- comparisons ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LinearDiffOp):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"LinearDiffOp({[list(c.coeffs) for c in self.coeffs]!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*d^{k}")
        return " + ".join(parts)


def _as_op(other):
    if isinstance(other, LinearDiffOp):
        return other
    if isinstance(other, (Polynomial,) + _SCALARS) and not isinstance(other, bool):
        return LinearDiffOp.from_polynomial(other)
    return NotImplemented


def _check_space_degree(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"space degree must be a nonnegative integer, got {n!r}")


@dataclass(frozen=True)
class HeunCoefficients:
    """Second-order operator X(z) d^2 + Y(z) d + Z(z) with bounded degrees.

    deg X <= 4, deg Y <= 3, deg Z <= 2; this is the shape whose sl(2)
    expressibility is decided by three closed-form coefficient conditions.
    """

    d2: Polynomial
    d1: Polynomial
    d0: Polynomial

    def __post_init__(self):
        for name, poly, bound in (("d2", self.d2, 4), ("d1", self.d1, 3), ("d0", self.d0, 2)):
            p = poly if isinstance(poly, Polynomial) else Polynomial(poly)
            if p.degree() > bound:
                raise ValueError(f"{name} coefficient has degree {p.degree()} > {bound}")
            object.__setattr__(self, name, p)

    @classmethod
    def from_diffop(cls, op: LinearDiffOp) -> "HeunCoefficients":
        if op.order() > 2:
            raise ValueError(f"operator order {op.order()} > 2")
        return cls(op.coefficient(2), op.coefficient(1), op.coefficient(0))

    def to_diffop(self) -> LinearDiffOp:
        return LinearDiffOp((self.d0, self.d1, self.d2))

    def coeff(self, der_order: int, z_power: int):
        """Scalar coefficient of z^z_power * d^der_order."""
        return (self.d0, self.d1, self.d2)[der_order].coefficient(z_power)
