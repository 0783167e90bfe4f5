"""The sl(2) polynomial realization and expressibility of Heun-type operators.

Generators on polynomials in z, one family per value of the parameter n:

    j_plus  = z^2 d - n z        (raising)
    j_zero  = z d - n/2          (grading)
    j_minus = d                  (lowering)

The commutation relations [j_zero, j_pm] = +-j_pm and
[j_plus, j_minus] = 2 j_zero hold for every n; when n is a nonnegative
integer the span{1, z, ..., z^n} is invariant and the realization is the
(n+1)-dimensional irreducible one.

A combination of ordered generator words is the normal form this module
produces and consumes.  Words are spelled with the characters '+', '0', '-'
read left to right as operator composition; the empty word is the constant
term.  The quadratic normal form uses words of length <= 2; 4th-order
operators with a const*z^2*d^4 leading term extend it by the three words
'+---', '+--', '0--' via the exact rewrites

    z^2 d^4 = W('+---') + n z d^3
    z^2 d^3 = W('+--')  + n z d^2
    z   d^3 = W('0--')  + (n/2) d^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .diffops import HeunCoefficients, LinearDiffOp
from .errors import NotAlgebraizable, WrongLeadingShape
from .polynomials import Polynomial
from .scalars import is_exact

QUARTIC_WORDS = ("+---", "+--", "0--")
QUADRATIC_WORDS = ("++", "+0", "00", "0-", "--")
LINEAR_WORDS = ("+", "0", "-")
GENERATOR_WORDS = QUARTIC_WORDS + QUADRATIC_WORDS + LINEAR_WORDS + ("",)


def _exact_param(n):
    if isinstance(n, int) and not isinstance(n, bool):
        return Fraction(n)
    if isinstance(n, Fraction):
        return n
    raise TypeError(f"generator parameter must be rational, got {n!r}")


def sl2_generators(n):
    """(j_plus, j_zero, j_minus) for parameter n (any rational)."""
    n = _exact_param(n)
    j_plus = LinearDiffOp((Polynomial((0, -n)), Polynomial((0, 0, 1))))
    j_zero = LinearDiffOp((Polynomial((-n / 2,)), Polynomial((0, 1))))
    j_minus = LinearDiffOp.derivative()
    return j_plus, j_zero, j_minus


_word_cache: dict = {}


def word_operator(word: str, n) -> LinearDiffOp:
    """Compose the generators named by word, e.g. '+0' -> j_plus . j_zero."""
    n = _exact_param(n)
    key = (word, n)
    cached = _word_cache.get(key)
    if cached is not None:
        return cached
    j_plus, j_zero, j_minus = sl2_generators(n)
    table = {"+": j_plus, "0": j_zero, "-": j_minus}
    op = LinearDiffOp.identity()
    for ch in word:
        op = op.compose(table[ch])
    _word_cache[key] = op
    return op


@dataclass(frozen=True)
class Sl2Combination:
    """A finite combination sum_w coeff_w * W(w) in the parameter-n realization."""

    n: Fraction
    terms: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "n", _exact_param(self.n))
        clean = {}
        for word, coeff in self.terms.items():
            if word not in GENERATOR_WORDS:
                raise ValueError(f"unknown generator word {word!r}")
            if not is_exact(coeff):
                raise TypeError(f"coefficient of {word!r} must be exact, got {coeff!r}")
            if coeff:
                clean[word] = coeff
        object.__setattr__(self, "terms", clean)

    def coefficient(self, word: str):
        return self.terms.get(word, Fraction(0))

    def to_diffop(self) -> LinearDiffOp:
        out = LinearDiffOp.zero()
        for word, coeff in self.terms.items():
            out = out + coeff * word_operator(word, self.n)
        return out


def algebraization_residuals(h: HeunCoefficients, n):
    """The three obstruction scalars; all zero iff h is sl(2)-expressible.

    r1 couples the z^3 drift term to the quartic leading term, r2 and r3 pin
    the degree-2 and degree-1 potential coefficients.
    """
    n = _exact_param(n)
    a4, a3 = h.coeff(2, 4), h.coeff(2, 3)
    b3, b2 = h.coeff(1, 3), h.coeff(1, 2)
    c2, c1 = h.coeff(0, 2), h.coeff(0, 1)
    r1 = b3 + 2 * (n - 1) * a4
    r2 = c2 - n * (n - 1) * a4
    r3 = c1 + n * ((n - 1) * a3 + b2)
    return r1, r2, r3


def is_algebraizable(h: HeunCoefficients, n) -> bool:
    return not any(algebraization_residuals(h, n))


def _space_param(n) -> Fraction:
    n = _exact_param(n)
    if n.denominator != 1 or n < 0:
        raise ValueError(f"invariant-space parameter must be a nonnegative integer, got {n}")
    return n


def decompose_order2(h: HeunCoefficients, n) -> Sl2Combination:
    """Write an expressible Heun-shaped operator in the ordered-word normal form.

    Raises NotAlgebraizable carrying the three residuals when the coefficient
    conditions fail.  The result composes back to h exactly.
    """
    n = _space_param(n)
    residuals = algebraization_residuals(h, n)
    if any(residuals):
        raise NotAlgebraizable(
            f"coefficient conditions violated, residuals {tuple(map(str, residuals))}",
            residuals=residuals,
        )
    a4, a3, a2, a1, a0 = (h.coeff(2, k) for k in (4, 3, 2, 1, 0))
    b2, b1, b0 = (h.coeff(1, k) for k in (2, 1, 0))
    c0 = h.coeff(0, 0)
    half_n = n / 2
    terms = {
        "++": a4,
        "+0": a3,
        "00": a2,
        "0-": a1,
        "--": a0,
        "+": ((3 * n - 2) / 2) * a3 + b2,
        "0": (n - 1) * a2 + b1,
        "-": half_n * a1 + b0,
        "": half_n * ((half_n - 1) * a2 + b1) + c0,
    }
    return Sl2Combination(n, terms)


def decompose_order4(op: LinearDiffOp, n) -> Sl2Combination:
    """Normal form for 4th-order operators with a const*z^2*d^4 leading term.

    Peels the three quartic words via the rewrite identities, then delegates
    the 2nd-order remainder to decompose_order2.
    """
    n = _space_param(n)
    if op.order() != 4:
        raise WrongLeadingShape(f"operator order is {op.order()}, expected 4")
    lead = op.coefficient(4)
    if lead.degree() != 2 or lead.coefficient(0) or lead.coefficient(1):
        raise WrongLeadingShape(f"d^4 coefficient {lead} is not const*z^2")
    alpha = lead.coefficient(2)

    rest = op - alpha * word_operator("+---", n)
    q3 = rest.coefficient(3)
    if q3.degree() > 2 or q3.coefficient(0):
        raise NotAlgebraizable(
            f"d^3 coefficient {q3} is outside span(z^2 d^3, z d^3) after peeling"
        )
    beta, gamma = q3.coefficient(2), q3.coefficient(1)
    rest = rest - beta * word_operator("+--", n) - gamma * word_operator("0--", n)
    assert rest.order() <= 2

    try:
        remainder = HeunCoefficients.from_diffop(rest)
    except ValueError as exc:
        raise NotAlgebraizable(f"2nd-order remainder out of shape: {exc}") from exc
    quad = decompose_order2(remainder, n)
    terms = dict(quad.terms)
    terms["+---"] = alpha
    terms["+--"] = beta
    terms["0--"] = gamma
    return Sl2Combination(n, terms)
