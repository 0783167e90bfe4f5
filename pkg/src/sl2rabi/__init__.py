"""Hidden sl(2) structure of driven and multi-photon Rabi models.

Exact detection and construction of quasi-exactly solvable spectra for the
driven Rabi, two-photon Rabi and two-mode Rabi models, cross-checked by a
truncated Fock-space oracle.
"""

from .diffops import HeunCoefficients, LinearDiffOp
from .errors import (
    CouplingOutOfRange,
    DecoupledModel,
    IncompatibleField,
    InputOutOfValidatedRange,
    NoRootInRange,
    NotAlgebraizable,
    NotAnEigenvalue,
    NumericalFailure,
    Sl2RabiError,
    SpaceNotPreserved,
    TruncationTooSmall,
    WrongLeadingShape,
    ZeroCoupling,
)
from .fock import (
    DEFAULT_SCHEDULE,
    DEFAULT_TOL,
    LevelVerdict,
    TruncatedHamiltonian,
    build_fock_matrix,
    dump_matrix,
    load_matrix,
    locate_level,
    spectrum,
)
from .models import (
    BRANCHES,
    MODELS,
    CoupledSystem,
    ModelParams,
    coupled_system,
    eliminate,
    exceptional_energy,
    frequency_ratio,
    gauge_coefficient,
    model_operator,
    reduced_component,
    spectral_target_sign,
    su11_realization,
)
from .polynomials import Polynomial
from .qes import (
    ConstraintPolynomial,
    ExceptionalSolution,
    Root,
    char_polynomial,
    companion_component,
    constraint_polynomial,
    eigenpolynomials,
    exceptional_points,
    nullspace,
    solution_residual,
    solutions_at_target,
    verify_solution,
)
from .scalars import QuadExt, exact_sqrt, is_exact, scalar_str, to_float
from .sl2 import (
    Sl2Combination,
    algebraization_residuals,
    decompose_order2,
    decompose_order4,
    is_algebraizable,
    sl2_generators,
    word_operator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
