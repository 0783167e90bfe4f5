"""The driven Rabi, two-photon Rabi and two-mode Rabi models in Bargmann form.

Each model becomes a two-component first- or second-order system for the
sigma_x eigencomponents (phi_plus, phi_minus) after an exponential gauge
factor is split off the Bargmann wavefunctions, psi = exp(gauge*z) * phi.
Eliminating one component yields a single reduced operator whose spectral
problem reads

    H phi = (target_sign) * Delta^2 * phi,

with target_sign +1 for the Rabi model and -1 for the two-photon and
two-mode models.  The reduced operators are also written here in closed
form; agreement with the elimination is a test, not an assumption.

At the exceptional energies returned by *_exceptional_energy the reduced
operator preserves span{1, z, ..., z^n}, which is what makes the
quasi-exact machinery in the qes module possible.

Exact parameters (Fractions) produce exact operators; the square roots
sqrt(1 - (2g/w)^2) and sqrt(1 - (g/w)^2) live in a quadratic extension
field unless they collapse to rationals.  Float parameters produce float
operators for the numeric sweep path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .diffops import HeunCoefficients, LinearDiffOp
from .errors import CouplingOutOfRange, DecoupledModel, ZeroCoupling
from .polynomials import Polynomial
from .scalars import QuadExt, exact_sqrt, is_exact, to_float

MODELS = ("rabi", "twophoton", "twomode")
BRANCHES = ("minus", "plus")
TWOPHOTON_INDICES = (Fraction(1, 4), Fraction(3, 4))

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _norm_numeric(name, x):
    if isinstance(x, bool):
        raise TypeError(f"{name} must be a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float, QuadExt)):
        return x
    raise TypeError(f"{name} must be Fraction, float or QuadExt, got {x!r}")


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters; structural validity is checked at construction.

    drive is the sigma_x bias of the driven Rabi model and must vanish for
    the other models; bargmann_index is q in {1/4, 3/4} (two-photon) or the
    positive half-integer kappa (two-mode) and is absent for Rabi.  branch
    selects the Rabi gauge sign.
    """

    model: str
    omega: object
    g: object
    delta_level: object
    drive: object = Fraction(0)
    bargmann_index: object = None
    branch: str = "minus"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")
        for name in ("omega", "g", "delta_level", "drive"):
            object.__setattr__(self, name, _norm_numeric(name, getattr(self, name)))
        if not to_float(self.omega) > 0:
            raise ValueError("omega must be positive")
        if self.model == "rabi":
            if self.bargmann_index is not None:
                raise ValueError("rabi model takes no Bargmann index")
        else:
            if self.drive:
                raise ValueError(f"{self.model} model has no drive term")
            idx = self.bargmann_index
            if idx is None:
                raise ValueError(f"{self.model} model requires a Bargmann index")
            idx = Fraction(idx)
            if self.model == "twophoton" and idx not in TWOPHOTON_INDICES:
                raise ValueError(f"two-photon Bargmann index must be 1/4 or 3/4, got {idx}")
            if self.model == "twomode" and ((2 * idx).denominator != 1 or idx <= 0):
                raise ValueError(f"two-mode Bargmann index must be a positive half-integer, got {idx}")
            object.__setattr__(self, "bargmann_index", idx)

    @property
    def exact(self) -> bool:
        return all(
            is_exact(getattr(self, name)) for name in ("omega", "g", "delta_level", "drive")
        )

    def as_float(self) -> "ModelParams":
        return replace(
            self,
            omega=to_float(self.omega),
            g=to_float(self.g),
            delta_level=to_float(self.delta_level),
            drive=to_float(self.drive),
        )


@dataclass(frozen=True)
class CoupledSystem:
    """The gauged two-component system.

    op_plus acts on phi_plus and op_minus on phi_minus:

        op_plus(phi_plus)  = rhs_sign_plus  * Delta * phi_minus
        op_minus(phi_minus) = rhs_sign_minus * Delta * phi_plus

    gauge_coefficient is the exponent slope: psi_pm = exp(gauge*z) phi_pm.
    reduced_component names the component the closed-form reduced operator
    of the model acts on.
    """

    params: ModelParams
    energy: object
    op_plus: LinearDiffOp
    op_minus: LinearDiffOp
    rhs_sign_plus: int
    rhs_sign_minus: int
    gauge_coefficient: object
    reduced_component: str

    @property
    def target_sign(self) -> int:
        """Sign s in the reduced spectral problem H phi = s * Delta^2 * phi."""
        return self.rhs_sign_plus * self.rhs_sign_minus


def eliminate(system: CoupledSystem, keep: str = "plus") -> LinearDiffOp:
    """Reduce the system to one component by substituting out the other.

    keep='plus' returns op_minus . op_plus acting on phi_plus; keep='minus'
    the reverse order acting on phi_minus.  Either way the reduced problem
    is H phi = target_sign * Delta^2 * phi.
    """
    if not system.params.delta_level:
        raise DecoupledModel("Delta = 0: the components never mix")
    if keep == "plus":
        return system.op_minus.compose(system.op_plus)
    if keep == "minus":
        return system.op_plus.compose(system.op_minus)
    raise ValueError(f"keep must be 'plus' or 'minus', got {keep!r}")


# -- driven Rabi ----------------------------------------------------------------


def rabi_coupled_system(params: ModelParams, energy) -> CoupledSystem:
    """First-order gauged system of the driven Rabi model.

    The minus branch gauges with exp(-g z / w) and reduces on phi_plus; the
    plus branch gauges with exp(+g z / w) and reduces on phi_minus.
    """
    _expect_model(params, "rabi")
    if not params.delta_level:
        raise DecoupledModel("Delta = 0: the Rabi system decouples")
    w, g, drive = params.omega, params.g, params.drive
    shift = g * g / w
    if params.branch == "minus":
        op_plus = LinearDiffOp((Polynomial((-(shift - drive + energy),)), Polynomial((g, w))))
        op_minus = LinearDiffOp(
            (Polynomial((shift - drive - energy, -2 * g)), Polynomial((-g, w)))
        )
        gauge = -g / w
        reduced = "plus"
    else:
        op_plus = LinearDiffOp(
            (Polynomial((shift + drive - energy, 2 * g)), Polynomial((g, w)))
        )
        op_minus = LinearDiffOp((Polynomial((-(shift + drive + energy),)), Polynomial((-g, w))))
        gauge = g / w
        reduced = "minus"
    return CoupledSystem(params, energy, op_plus, op_minus, -1, -1, gauge, reduced)


def rabi_heun(params: ModelParams, energy) -> HeunCoefficients:
    """Closed form of the reduced Rabi operator (branch-dependent).

    Spectral problem: H phi = +Delta^2 phi on the reduced component.
    """
    _expect_model(params, "rabi")
    w, g, drive = params.omega, params.g, params.drive
    shift = g * g / w
    d2 = Polynomial((-g * g, 0, w * w))
    linear_mid = w * w - 2 * g * g - 2 * energy * w
    if params.branch == "minus":
        d1 = Polynomial((-g * w + 2 * g * (shift - drive), linear_mid, -2 * w * g))
        d0 = Polynomial(
            (energy * energy - (drive - shift) ** 2, 2 * g * (shift - drive + energy))
        )
    else:
        d1 = Polynomial((g * w - 2 * g * (shift + drive), linear_mid, 2 * w * g))
        d0 = Polynomial(
            (energy * energy - (drive + shift) ** 2, -2 * g * (energy + shift + drive))
        )
    return HeunCoefficients(d2, d1, d0)


def rabi_exceptional_energy(params: ModelParams, n: int):
    """E_n = w n +- drive - g^2 / w (sign of drive set by the branch)."""
    _expect_model(params, "rabi")
    _check_level_index(n)
    w, g, drive = params.omega, params.g, params.drive
    shift = g * g / w
    if params.branch == "minus":
        return w * n + drive - shift
    return w * n - drive - shift


# -- two-photon Rabi -------------------------------------------------------------


def frequency_ratio(params: ModelParams):
    """The gauge scale sqrt(1 - (2g/w)^2) (two-photon) or sqrt(1 - (g/w)^2) (two-mode).

    Exact parameters produce a Fraction or a quadratic-extension element;
    float parameters a float.  Requires 0 < |m g / w| < 1 with m = 2 or 1.
    """
    if params.model == "rabi":
        raise ValueError("frequency ratio is defined for the bosonic-pair models only")
    mult = 2 if params.model == "twophoton" else 1
    w, g = params.omega, params.g
    if not g:
        raise ZeroCoupling("g = 0: the gauge and elimination are undefined")
    if params.exact:
        ratio2 = Fraction(mult * mult) * g * g / (w * w)
        if ratio2 >= 1:
            raise CouplingOutOfRange(f"|{mult}g/omega| >= 1")
        return exact_sqrt(1 - ratio2)
    gf, wf = to_float(g), to_float(w)
    ratio2 = (mult * gf / wf) ** 2
    if ratio2 >= 1:
        raise CouplingOutOfRange(f"|{mult}g/omega| >= 1")
    return math.sqrt(1 - ratio2)


def twophoton_coupled_system(params: ModelParams, energy) -> CoupledSystem:
    """Second-order gauged system of the two-photon model.

    Note the asymmetric right-hand sides: op_plus gives -Delta*phi_minus but
    op_minus gives +Delta*phi_plus, so the reduced target is -Delta^2.
    """
    _expect_model(params, "twophoton")
    q = params.bargmann_index
    w, g = params.omega, params.g
    scale = frequency_ratio(params)
    op_plus = LinearDiffOp(
        (
            Polynomial((2 * q * w * scale - HALF * w - energy,)),
            Polynomial((8 * g * q, 2 * w * scale)),
            Polynomial((0, 4 * g)),
        )
    )
    op_minus = LinearDiffOp(
        (
            Polynomial(
                (
                    2 * q * w * (scale - 2) + HALF * w + energy,
                    (w * w / g) * (1 - scale),
                )
            ),
            Polynomial((8 * g * q, 2 * w * (scale - 2))),
            Polynomial((0, 4 * g)),
        )
    )
    gauge = -(w / (4 * g)) * (1 - scale)
    return CoupledSystem(params, energy, op_plus, op_minus, -1, +1, gauge, "plus")


def twophoton_operator(params: ModelParams, energy) -> LinearDiffOp:
    """Closed form of the reduced 4th-order two-photon operator.

    Spectral problem: H phi = -Delta^2 phi.  Equals
    eliminate(twophoton_coupled_system(params, energy), keep='plus').
    """
    _expect_model(params, "twophoton")
    q = params.bargmann_index
    w, g = params.omega, params.g
    s = frequency_ratio(params)
    one_minus = 1 - s
    qh = q + HALF
    p4 = Polynomial((0, 0, 16 * g * g))
    p3 = Polynomial((0, 64 * g * g * qh, 16 * g * w * (s - 1)))
    p2 = Polynomial(
        (
            64 * g * g * q * qh,
            16 * w * g * (3 * qh * s - 3 * q - 1),
            4 * w * w * (s * s - 3 * s + 1),
        )
    )
    p1 = Polynomial(
        (
            32 * w * g * q * (qh * s - q),
            8 * w * w * q * one_minus
            + 8 * w * w * qh * one_minus * one_minus
            + 4 * w * (energy - 2 * w * (q + QUARTER)),
            2 * (w * w * w / g) * s * one_minus,
        )
    )
    p0 = Polynomial(
        (
            4 * w * w * q * q * one_minus * one_minus
            - (energy - 2 * w * (q - QUARTER)) ** 2,
            (w * w / g) * one_minus * (2 * q * w * s - HALF * w - energy),
        )
    )
    return LinearDiffOp((p0, p1, p2, p3, p4))


def twophoton_exceptional_energy(params: ModelParams, n: int):
    """E_n = -w/2 + (2n + 2(q - 1/4) + 1/2) w sqrt(1 - (2g/w)^2)."""
    _expect_model(params, "twophoton")
    _check_level_index(n)
    q = params.bargmann_index
    w = params.omega
    scale = frequency_ratio(params)
    return -HALF * w + (2 * n + 2 * (q - QUARTER) + HALF) * w * scale


# -- two-mode Rabi ----------------------------------------------------------------


def twomode_coupled_system(params: ModelParams, energy) -> CoupledSystem:
    """Second-order gauged system of the two-mode model (target -Delta^2)."""
    _expect_model(params, "twomode")
    kappa = params.bargmann_index
    w, g = params.omega, params.g
    scale = frequency_ratio(params)
    op_plus = LinearDiffOp(
        (
            Polynomial((2 * kappa * w * scale - w - energy,)),
            Polynomial((2 * g * kappa, 2 * w * scale)),
            Polynomial((0, g)),
        )
    )
    op_minus = LinearDiffOp(
        (
            Polynomial(
                (
                    2 * kappa * w * (scale - 2) + w + energy,
                    (4 * w * w / g) * (1 - scale),
                )
            ),
            Polynomial((2 * g * kappa, 2 * w * (scale - 2))),
            Polynomial((0, g)),
        )
    )
    gauge = -(w / g) * (1 - scale)
    return CoupledSystem(params, energy, op_plus, op_minus, -1, +1, gauge, "plus")


def twomode_operator(params: ModelParams, energy) -> LinearDiffOp:
    """Closed form of the reduced 4th-order two-mode operator (target -Delta^2)."""
    _expect_model(params, "twomode")
    kappa = params.bargmann_index
    w, g = params.omega, params.g
    s = frequency_ratio(params)
    one_minus = 1 - s
    kh = kappa + HALF
    p4 = Polynomial((0, 0, g * g))
    p3 = Polynomial((0, 4 * g * g * kh, 4 * g * w * (s - 1)))
    p2 = Polynomial(
        (
            4 * g * g * kappa * kh,
            4 * w * g * (3 * kh * s - 3 * kappa - 1),
            4 * w * w * (s * s - 3 * s + 1),
        )
    )
    p1 = Polynomial(
        (
            8 * w * g * kappa * (kh * s - kappa),
            8 * w * w * kappa * one_minus
            + 8 * w * w * kh * one_minus * one_minus
            + 4 * w * (energy - 2 * w * kappa),
            8 * (w * w * w / g) * s * one_minus,
        )
    )
    p0 = Polynomial(
        (
            4 * w * w * kappa * kappa * one_minus * one_minus
            - (energy - 2 * w * (kappa - HALF)) ** 2,
            (4 * w * w / g) * one_minus * (2 * kappa * w * s - w - energy),
        )
    )
    return LinearDiffOp((p0, p1, p2, p3, p4))


def twomode_exceptional_energy(params: ModelParams, n: int):
    """E_n = -w + (2n + 2(kappa - 1/2) + 1) w sqrt(1 - (g/w)^2)."""
    _expect_model(params, "twomode")
    _check_level_index(n)
    kappa = params.bargmann_index
    w = params.omega
    scale = frequency_ratio(params)
    return -w + (2 * n + 2 * (kappa - HALF) + 1) * w * scale


# -- su(1,1) differential realizations (used by the verification suites) -----------


def su11_realization(model: str, index):
    """(K0, K_plus, K_minus) as differential operators on the index-`index` module.

    two-photon: K0 = z d + q,     K+ = z/2,  K- = 2 z d^2 + 4 q d
    two-mode:   K0 = z d + kappa, K+ = z,    K- = z d^2 + 2 kappa d
    """
    index = Fraction(index)
    k_zero = LinearDiffOp((Polynomial((index,)), Polynomial((0, 1))))
    if model == "twophoton":
        k_plus = LinearDiffOp((Polynomial((0, HALF)),))
        k_minus = LinearDiffOp(
            (Polynomial.zero(), Polynomial((4 * index,)), Polynomial((0, 2)))
        )
    elif model == "twomode":
        k_plus = LinearDiffOp((Polynomial((0, 1)),))
        k_minus = LinearDiffOp(
            (Polynomial.zero(), Polynomial((2 * index,)), Polynomial((0, 1)))
        )
    else:
        raise ValueError(f"no su(1,1) realization for model {model!r}")
    return k_zero, k_plus, k_minus


# -- model dispatch -----------------------------------------------------------------


def _expect_model(params, model):
    if params.model != model:
        raise ValueError(f"expected {model} parameters, got {params.model}")


def _check_level_index(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"level index n must be a nonnegative integer, got {n!r}")


def coupled_system(params: ModelParams, energy) -> CoupledSystem:
    return {
        "rabi": rabi_coupled_system,
        "twophoton": twophoton_coupled_system,
        "twomode": twomode_coupled_system,
    }[params.model](params, energy)


def model_operator(params: ModelParams, energy) -> LinearDiffOp:
    """The closed-form reduced operator of the model at the given energy."""
    if params.model == "rabi":
        return rabi_heun(params, energy).to_diffop()
    if params.model == "twophoton":
        return twophoton_operator(params, energy)
    return twomode_operator(params, energy)


def exceptional_energy(params: ModelParams, n: int):
    return {
        "rabi": rabi_exceptional_energy,
        "twophoton": twophoton_exceptional_energy,
        "twomode": twomode_exceptional_energy,
    }[params.model](params, n)


def spectral_target_sign(params: ModelParams) -> int:
    """Sign s in H phi = s * Delta^2 * phi for the reduced operator."""
    return 1 if params.model == "rabi" else -1


def reduced_component(params: ModelParams) -> str:
    """Which sigma_x component the closed-form reduced operator acts on."""
    if params.model == "rabi" and params.branch == "plus":
        return "minus"
    return "plus"


def gauge_coefficient(params: ModelParams):
    """Slope of the exponential gauge: psi = exp(gauge * z) * phi."""
    if params.model == "rabi":
        sign = -1 if params.branch == "minus" else 1
        return sign * params.g / params.omega
    scale = frequency_ratio(params)
    if params.model == "twophoton":
        return -(params.omega / (4 * params.g)) * (1 - scale)
    return -(params.omega / params.g) * (1 - scale)
