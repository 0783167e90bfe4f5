"""Independent truncated Fock-space oracle for the three models.

Everything here is deliberately numeric and basis-level so it shares no
code path with the symbolic construction it cross-checks.  The two-level
system is stored spin-major: basis index s*(N+1) + m with s = 0 the
sigma_z = +1 block and m the boson (or pair-sector) quantum number.

Hamiltonians, acting on C^2 (x) span{|0>, ..., |N>}:

    rabi:       w a'a       + Delta sigma_z + sigma_x (g (a + a') + drive)
    twophoton:  2w (K0-1/4) + Delta sigma_z + 2 g sigma_x (K+ + K-)
    twomode:    2w (K0-1/2) + Delta sigma_z +   g sigma_x (K+ + K-)

with the discrete-series matrix elements

    K0 |m> = (m + idx) |m>
    K+ |m> = sqrt((m + 1)(m + 2 idx)) |m+1>
    K- |m> = sqrt(m (m + 2 idx - 1)) |m-1>

for idx = q (pair parity sector of a single mode) or kappa (two modes at
fixed mode-number difference).  The matrices are exactly symmetric by
construction.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import InputOutOfValidatedRange, TruncationTooSmall
from .models import ModelParams
from .scalars import to_float

DEFAULT_SCHEDULE = (40, 60, 80, 120, 160)
DEFAULT_TOL = 1e-8
MIN_TRUNCATION = 4
VALIDATED_COUPLING = 0.95

_MAGIC = b"SL2R"


def boson_ladder(trunc: int) -> np.ndarray:
    """Annihilation operator a on span{|0>, ..., |trunc>}."""
    return np.diag(np.sqrt(np.arange(1.0, trunc + 1)), 1)


def su11_matrices(index, trunc: int):
    """(K0, K_plus, K_minus) truncated to the first trunc+1 basis states."""
    idx = to_float(index)
    m = np.arange(trunc + 1, dtype=float)
    k_zero = np.diag(m + idx)
    k_plus = np.diag(np.sqrt((m[:-1] + 1.0) * (m[:-1] + 2.0 * idx)), -1)
    return k_zero, k_plus, k_plus.T


@dataclass(frozen=True)
class TruncatedHamiltonian:
    params: ModelParams
    trunc: int
    matrix: np.ndarray


def build_fock_matrix(params: ModelParams, trunc: int) -> TruncatedHamiltonian:
    """Assemble the 2(trunc+1) x 2(trunc+1) symmetric matrix."""
    if not isinstance(trunc, int) or isinstance(trunc, bool) or trunc < MIN_TRUNCATION:
        raise TruncationTooSmall(f"truncation must be an integer >= {MIN_TRUNCATION}")
    w = to_float(params.omega)
    g = to_float(params.g)
    delta = to_float(params.delta_level)
    m = np.arange(trunc + 1, dtype=float)

    if params.model == "rabi":
        diag = w * m
        a = boson_ladder(trunc)
        coupling = g * (a + a.T) + to_float(params.drive) * np.eye(trunc + 1)
    else:
        mult = 2.0 if params.model == "twophoton" else 1.0
        if abs(mult * g / w) > VALIDATED_COUPLING:
            raise InputOutOfValidatedRange(
                f"|{int(mult)}g/omega| > {VALIDATED_COUPLING}: oracle convergence not validated"
            )
        idx = to_float(params.bargmann_index)
        _, k_plus, k_minus = su11_matrices(params.bargmann_index, trunc)
        diag = 2.0 * w * (m + idx - (0.25 if params.model == "twophoton" else 0.5))
        coupling = mult * g * (k_plus + k_minus)

    dim = trunc + 1
    h = np.zeros((2 * dim, 2 * dim))
    h[:dim, :dim] = np.diag(diag + delta)
    h[dim:, dim:] = np.diag(diag - delta)
    # same array in both off-diagonal blocks keeps the matrix exactly symmetric
    sym_coupling = 0.5 * (coupling + coupling.T)
    h[:dim, dim:] = sym_coupling
    h[dim:, :dim] = sym_coupling
    return TruncatedHamiltonian(params, trunc, h)


def spectrum(ham) -> np.ndarray:
    """Sorted eigenvalues of a TruncatedHamiltonian or a raw symmetric matrix."""
    matrix = ham.matrix if isinstance(ham, TruncatedHamiltonian) else ham
    return np.linalg.eigvalsh(matrix)


def parity_matrix(trunc: int) -> np.ndarray:
    """sigma_z (x) (-1)^(boson number); commutes with the Rabi matrix at drive = 0."""
    signs = (-1.0) ** np.arange(trunc + 1)
    return np.diag(np.concatenate([signs, -signs]))


@dataclass(frozen=True)
class LevelVerdict:
    """Outcome of hunting one target energy through a truncation schedule.

    status is 'converged', 'not_converged' (seen near the target but not
    stable under truncation growth) or 'not_found'.  history holds one
    (truncation, nearest eigenvalue, absolute gap) row per probe.
    """

    status: str
    target: float
    tol: float
    energy: float | None
    trunc_used: int | None
    history: tuple

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def locate_level(
    params: ModelParams,
    target: float,
    schedule=DEFAULT_SCHEDULE,
    tol: float = DEFAULT_TOL,
) -> LevelVerdict:
    """Track the eigenvalue nearest target through increasing truncations.

    Converged means: within tol of the target at two consecutive truncations
    and drifting by less than tol/10 between them.
    """
    schedule = tuple(int(n) for n in schedule)
    if not schedule or any(n < MIN_TRUNCATION for n in schedule):
        raise TruncationTooSmall(f"schedule entries must be >= {MIN_TRUNCATION}")
    if list(schedule) != sorted(set(schedule)):
        raise ValueError("schedule must be strictly increasing")
    if not tol > 0:
        raise ValueError("tol must be positive")
    target = float(target)

    history = []
    prev = None
    for trunc in schedule:
        eigs = spectrum(build_fock_matrix(params, trunc))
        nearest = float(eigs[np.argmin(np.abs(eigs - target))])
        gap = abs(nearest - target)
        history.append((trunc, nearest, gap))
        if prev is not None:
            prev_trunc, prev_nearest, prev_gap = prev
            if (
                prev_gap <= tol
                and gap <= tol
                and abs(nearest - prev_nearest) < tol / 10.0
            ):
                return LevelVerdict("converged", target, tol, nearest, trunc, tuple(history))
        prev = history[-1]

    status = "not_converged" if history[-1][2] <= tol else "not_found"
    return LevelVerdict(status, target, tol, None, None, tuple(history))


def dump_matrix(ham: TruncatedHamiltonian, path) -> None:
    """Binary dump: 8-byte header (4-byte magic, uint32 truncation LE), then
    the matrix row-major as little-endian float64."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", ham.trunc))
        fh.write(np.ascontiguousarray(ham.matrix, dtype="<f8").tobytes())


def load_matrix(path):
    """Read a dump back; returns (truncation, matrix)."""
    with open(path, "rb") as fh:
        header = fh.read(8)
        if len(header) != 8 or header[:4] != _MAGIC:
            raise ValueError("not a Fock-matrix dump")
        (trunc,) = struct.unpack("<I", header[4:])
        dim = 2 * (trunc + 1)
        data = np.frombuffer(fh.read(), dtype="<f8")
    if data.size != dim * dim:
        raise ValueError(f"payload holds {data.size} values, expected {dim * dim}")
    return trunc, data.reshape(dim, dim)
