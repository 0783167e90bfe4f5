"""Generator algebra, expressibility conditions, normal-form decomposition."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sl2rabi.diffops import HeunCoefficients, LinearDiffOp
from sl2rabi.errors import NotAlgebraizable, WrongLeadingShape
from sl2rabi.models import (
    ModelParams,
    frequency_ratio,
    rabi_exceptional_energy,
    rabi_heun,
    twophoton_exceptional_energy,
    twophoton_operator,
)
from sl2rabi.polynomials import Polynomial
from sl2rabi.scalars import QuadExt
from sl2rabi.sl2 import (
    GENERATOR_WORDS,
    Sl2Combination,
    algebraization_residuals,
    decompose_order2,
    decompose_order4,
    is_algebraizable,
    sl2_generators,
    word_operator,
)

F = Fraction
z = Polynomial.variable()
D = LinearDiffOp.derivative

PARAMETER_SAMPLES = (F(0), F(1, 2), F(1), F(7, 3), F(5))


@pytest.mark.parametrize("n", PARAMETER_SAMPLES, ids=str)
def test_bracket_relations(n):
    jp, j0, jm = sl2_generators(n)
    assert j0.commutator(jp) == jp
    assert j0.commutator(jm) == -1 * jm
    assert jp.commutator(jm) == -2 * j0


@pytest.mark.parametrize("n", PARAMETER_SAMPLES, ids=str)
def test_standard_triple_closure(n):
    # (h, e, f) = (2 j0, j_plus, -j_minus) is a standard sl(2) triple
    jp, j0, jm = sl2_generators(n)
    h, e, f = 2 * j0, jp, -1 * jm
    assert h.commutator(e) == 2 * e
    assert h.commutator(f) == -2 * f
    assert e.commutator(f) == h


def test_generator_action_on_monomials():
    jp, j0, jm = sl2_generators(3)
    assert jp.apply(z) == -2 * z**2
    assert jp.apply(z**3).is_zero()
    assert j0.apply(z**2) == F(1, 2) * z**2
    assert jm.apply(z**2) == 2 * z


def test_invariant_space():
    for n in (0, 1, 3):
        for op in sl2_generators(n):
            assert op.preserves_space(n)
    jp, _, _ = sl2_generators(2)
    assert not jp.preserves_space(1)


def test_word_operator_basics():
    assert word_operator("", 2) == LinearDiffOp.identity()
    assert word_operator("-", 2) == D()
    assert word_operator("--", 2) == D(2)
    jp, j0, _ = sl2_generators(F(1, 2))
    assert word_operator("+0", F(1, 2)) == jp.compose(j0)


def test_combination_vocabulary():
    with pytest.raises(ValueError):
        Sl2Combination(1, {"+-": F(1)})
    with pytest.raises(TypeError):
        Sl2Combination(1, {"+": 0.5})
    combo = Sl2Combination(1, {"+": F(0), "0": F(2)})
    assert "+" not in combo.terms
    assert combo.coefficient("0") == 2
    assert combo.coefficient("++") == 0


def test_combination_composes_to_operator():
    combo = Sl2Combination(2, {"--": F(1)})
    assert combo.to_diffop() == D(2)
    combo = Sl2Combination(2, {"00": F(1), "": F(1)})
    jp, j0, jm = sl2_generators(2)
    assert combo.to_diffop() == j0.compose(j0) + LinearDiffOp.identity()


# -- coefficient conditions ----------------------------------------------------


def rabi_params(g=F(1, 2), drive=F(0), omega=F(1)):
    return ModelParams("rabi", omega, g, F(0), drive=drive)


def test_residuals_vanish_at_exceptional_energy():
    for n in range(4):
        params = rabi_params()
        h = rabi_heun(params, rabi_exceptional_energy(params, n))
        assert algebraization_residuals(h, n) == (0, 0, 0)
        assert is_algebraizable(h, n)


def test_energy_perturbation_leaves_residue():
    # r3 = 2 g (E - E_n) for the gauged Rabi operator
    params = rabi_params()
    e1 = rabi_exceptional_energy(params, 1)
    h = rabi_heun(params, e1 + 1)
    r1, r2, r3 = algebraization_residuals(h, 1)
    assert (r1, r2) == (0, 0)
    assert r3 == 1
    assert not is_algebraizable(h, 1)

    params = rabi_params(g=F(1, 3), omega=F(2))
    h = rabi_heun(params, rabi_exceptional_energy(params, 1) + 5)
    assert algebraization_residuals(h, 1)[2] == F(10, 3)


def test_decompose_pure_quadratic_potential():
    h = HeunCoefficients(z**2, Polynomial.zero(), Polynomial.zero())
    combo = decompose_order2(h, 3)
    assert combo.coefficient("00") == 1
    assert combo.coefficient("0") == 2
    assert combo.coefficient("") == F(3, 4)
    assert combo.to_diffop() == h.to_diffop()


def test_decompose_rabi_level_one():
    params = rabi_params()
    h = rabi_heun(params, F(3, 4))
    combo = decompose_order2(h, 1)
    expected = {
        "00": F(1),
        "--": F(-1, 4),
        "+": F(-1),
        "0": F(-1),
        "-": F(-1, 4),
        "": F(-1, 4),
    }
    assert combo.terms == expected
    assert combo.to_diffop() == h.to_diffop()


def test_decompose_rabi_generic_parameters():
    # closed-form combination for the gauged minus-branch operator
    w, g, drive, n = F(1), F(1, 3), F(1, 8), 2
    params = rabi_params(g=g, drive=drive, omega=w)
    energy = rabi_exceptional_energy(params, n)
    assert energy == F(145, 72)
    combo = decompose_order2(rabi_heun(params, energy), n)
    shift = g * g / w
    assert combo.coefficient("00") == w * w
    assert combo.coefficient("--") == -g * g
    assert combo.coefficient("+") == -2 * g * w
    assert combo.coefficient("0") == n * w * w - 2 * g * g - 2 * w * energy
    assert combo.coefficient("-") == -g * (w + 2 * (drive - shift))
    star = n * (n * w * w / 4 - g * g - w * energy) + energy**2 - (drive - shift) ** 2
    assert combo.coefficient("") == star == F(29, 36)


def test_decompose_rejects_violation():
    params = rabi_params()
    h = rabi_heun(params, F(3, 4))
    bad = HeunCoefficients(h.d2, h.d1 + z**3, h.d0)
    with pytest.raises(NotAlgebraizable) as err:
        decompose_order2(bad, 1)
    assert err.value.residuals[0] == 1


def test_decompose_requires_integer_space_parameter():
    h = HeunCoefficients(z**2, Polynomial.zero(), Polynomial.zero())
    with pytest.raises(ValueError):
        decompose_order2(h, F(1, 2))
    with pytest.raises(ValueError):
        decompose_order2(h, -1)


# -- quartic layer ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(9))
def test_quartic_rewrite_identities(n):
    z_poly = Polynomial.variable()
    z2 = z_poly**2
    assert word_operator("+---", n) == LinearDiffOp(
        (Polynomial.zero(),) * 3 + (-F(n) * z_poly, z2)
    )
    assert word_operator("+--", n) == LinearDiffOp(
        (Polynomial.zero(),) * 2 + (-F(n) * z_poly, z2)
    )
    assert word_operator("0--", n) == LinearDiffOp(
        (Polynomial.zero(), Polynomial.zero(), Polynomial((-F(n, 2),)), z_poly)
    )


@pytest.mark.parametrize("n", (1, 2, 3))
def test_decompose_pure_quartic_term(n):
    g = F(1, 2)
    lead = 16 * g * g
    op = LinearDiffOp((Polynomial.zero(),) * 4 + (lead * z**2,))
    combo = decompose_order4(op, n)
    assert combo.coefficient("+---") == lead
    assert combo.coefficient("0--") == lead * n
    assert combo.coefficient("--") == 8 * g * g * n * n
    assert combo.to_diffop() == op


def test_decompose_twophoton_round_trip():
    params = ModelParams(
        "twophoton", F(1), F(3, 10), F(4, 5), bargmann_index=F(1, 4)
    )
    for n in (0, 1, 2):
        energy = twophoton_exceptional_energy(params, n)
        op = twophoton_operator(params, energy)
        combo = decompose_order4(op, n)
        assert combo.to_diffop() == op


def test_twophoton_shifted_energy_not_algebraizable():
    params = ModelParams(
        "twophoton", F(1), F(3, 10), F(4, 5), bargmann_index=F(1, 4)
    )
    ratio = frequency_ratio(params)
    energy = twophoton_exceptional_energy(params, 1) + ratio * F(1, 7)
    with pytest.raises(NotAlgebraizable):
        decompose_order4(twophoton_operator(params, energy), 1)


def test_decompose_order4_shape_errors():
    with pytest.raises(WrongLeadingShape):
        decompose_order4(D(2), 1)
    bad_lead = LinearDiffOp((Polynomial.zero(),) * 4 + (z**2 + 1,))
    with pytest.raises(WrongLeadingShape):
        decompose_order4(bad_lead, 1)
    # a bare d^3 term survives peeling and has no ordered-word image
    mixed = LinearDiffOp((Polynomial.zero(),) * 3 + (Polynomial.one(), z**2))
    with pytest.raises(NotAlgebraizable):
        decompose_order4(mixed, 1)


# -- randomized round trips -------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=8)


@st.composite
def algebraizable_heun(draw):
    n = draw(st.integers(min_value=0, max_value=5))
    a4, a3, a2, a1, a0 = (draw(coeffs) for _ in range(5))
    b2, b1, b0 = (draw(coeffs) for _ in range(3))
    c0 = draw(coeffs)
    b3 = -2 * (n - 1) * a4
    c2 = n * (n - 1) * a4
    c1 = -n * ((n - 1) * a3 + b2)
    d2 = Polynomial((a0, a1, a2, a3, a4))
    d1 = Polynomial((b0, b1, b2, b3))
    d0 = Polynomial((c0, c1, c2))
    return n, HeunCoefficients(d2, d1, d0)


@given(algebraizable_heun())
def test_constructed_operators_decompose_exactly(case):
    n, h = case
    combo = decompose_order2(h, n)
    assert combo.to_diffop() == h.to_diffop()
    assert HeunCoefficients.from_diffop(combo.to_diffop()) == h


@given(algebraizable_heun(), coeffs, st.integers(min_value=0, max_value=2))
def test_perturbed_operators_are_rejected(case, eps, which):
    n, h = case
    if not eps:
        eps = F(1)
    if which == 0:
        bad = HeunCoefficients(h.d2, h.d1 + eps * z**3, h.d0)
    elif which == 1:
        bad = HeunCoefficients(h.d2, h.d1, h.d0 + eps * z**2)
    else:
        bad = HeunCoefficients(h.d2, h.d1, h.d0 + eps * z)
    with pytest.raises(NotAlgebraizable):
        decompose_order2(bad, n)


@given(st.integers(min_value=0, max_value=6))
def test_quadratic_words_preserve_space(n):
    for word in GENERATOR_WORDS:
        assert word_operator(word, n).preserves_space(n)


def test_quadext_coefficients_survive_decomposition():
    root = QuadExt(0, 1, F(4, 5))
    h = HeunCoefficients(
        Polynomial((root,)), Polynomial((0, root)), Polynomial.zero()
    )
    combo = decompose_order2(h, 2)
    assert combo.to_diffop() == h.to_diffop()
    assert combo.coefficient("0") == root
