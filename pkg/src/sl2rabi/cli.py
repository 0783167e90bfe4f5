"""Command-line front end.

Subcommands
-----------
verify       run the internal consistency suites and report PASS/FAIL
exceptional  tabulate quasi-exact energies and coupling constraints
constraint   print the determinant constraint polynomial for one level
sweep        numerically sweep the spectrum over a coupling range
oracle       locate one energy level by truncated diagonalization

Exit status: 0 on success, 1 when a verification or convergence check
fails, 2 on unusable configuration.  Output is CSV by default, JSON with
--format json, written to stdout or to --out.  All numeric output is
deterministic: rerunning a command with the same configuration produces
byte-identical results, regardless of --jobs.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from fractions import Fraction

import numpy as np

from . import fock, qes, sl2
from .diffops import HeunCoefficients, LinearDiffOp
from .errors import (
    CouplingOutOfRange,
    InputOutOfValidatedRange,
    NoRootInRange,
    NotAlgebraizable,
    Sl2RabiError,
    TruncationTooSmall,
    ZeroCoupling,
)
from .models import (
    BRANCHES,
    MODELS,
    ModelParams,
    coupled_system,
    eliminate,
    exceptional_energy,
    model_operator,
    su11_realization,
)
from .polynomials import Polynomial
from .scalars import QuadExt, scalar_str, to_float

DEFAULT_TOL_ENV = "QES_DEFAULT_TOL"
_VERIFY_SUITES = ("sl2", "algebraization", "identities", "elimination", "quartic", "su11")


class ConfigError(Sl2RabiError):
    """Unusable command-line or config-file input."""


_CONFIG_ERRORS = (
    ConfigError,
    CouplingOutOfRange,
    ZeroCoupling,
    TruncationTooSmall,
    InputOutOfValidatedRange,
    ValueError,
)


def _default_tol():
    raw = os.environ.get(DEFAULT_TOL_ENV)
    if raw is None:
        return fock.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"{DEFAULT_TOL_ENV} is not a float: {raw!r}")
    if tol <= 0:
        raise ConfigError(f"{DEFAULT_TOL_ENV} must be positive, got {tol}")
    return tol


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation.

    Exact model parameters are kept as canonical fraction strings so a
    config survives a JSON round trip unchanged.
    """

    command: str
    model: str = "rabi"
    branch: str = "minus"
    omega: str = "1"
    g: str = "1/2"
    delta: str = "0"
    drive: str = "0"
    index: str | None = None
    n: int | None = None
    n_min: int = 0
    n_max: int = 4
    g_min: float | None = None
    g_max: float | None = None
    grid: int = 200
    levels: int = 6
    trunc: int = 60
    schedule: tuple[int, ...] | None = None
    tol: float | None = None
    target: float | None = None
    suite: str = "all"
    samples: int = 40
    seed: int = 20240819
    jobs: int = 1
    format: str = "csv"
    out: str | None = None
    markers_out: str | None = None
    plot: str | None = None
    dump: str | None = None

    def canonical(self):
        """Dict form whose parse -> print -> parse cycle is a fixpoint."""
        data = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in ("omega", "g", "delta", "drive", "index") and value is not None:
                value = str(Fraction(value))
            if f.name == "schedule" and value is not None:
                value = list(value)
            data[f.name] = value
        return data

    @classmethod
    def from_mapping(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        merged = dict(data)
        if merged.get("schedule") is not None:
            sched = merged["schedule"]
            if isinstance(sched, str):
                sched = sched.split(",")
            merged["schedule"] = tuple(int(s) for s in sched)
        for key in ("omega", "g", "delta", "drive", "index"):
            if merged.get(key) is not None:
                try:
                    merged[key] = str(Fraction(str(merged[key])))
                except (ValueError, ZeroDivisionError):
                    raise ConfigError(f"--{key} is not a rational number: {merged[key]!r}")
        cfg = cls(**merged)
        if cfg.model not in MODELS:
            raise ConfigError(f"unknown model {cfg.model!r}")
        if cfg.branch not in BRANCHES:
            raise ConfigError(f"unknown branch {cfg.branch!r}")
        if cfg.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
        if cfg.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if cfg.samples < 1:
            raise ConfigError("--samples must be >= 1")
        return cfg


def _exact_params(cfg) -> ModelParams:
    kwargs = dict(
        model=cfg.model,
        omega=Fraction(cfg.omega),
        g=Fraction(cfg.g),
        delta_level=Fraction(cfg.delta),
        branch=cfg.branch,
    )
    if cfg.model == "rabi":
        kwargs["drive"] = Fraction(cfg.drive)
    elif cfg.drive != "0":
        raise ConfigError("--drive applies to the rabi model only")
    if cfg.index is not None:
        kwargs["bargmann_index"] = Fraction(cfg.index)
    return ModelParams(**kwargs)


def _float_params(cfg) -> ModelParams:
    return _exact_params(cfg).as_float()


# ---------------------------------------------------------------------------
# serialization helpers


def _scalar_cell(value):
    if isinstance(value, (Fraction, int, QuadExt)):
        return scalar_str(value)
    if isinstance(value, (float, complex)):
        return repr(value)
    return str(value)


def _join(values):
    return ";".join(_scalar_cell(v) for v in values)


def _render(rows, columns, fmt):
    if fmt == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = [",".join(columns)]
    for row in rows:
        cells = [c if isinstance(c, str) else _scalar_cell(c) for c in row]
        for cell in cells:
            if "," in cell or "\n" in cell:
                raise ConfigError(f"cell not CSV-safe: {cell!r}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _expand_roots(roots):
    flat = []
    for root in roots:
        flat.extend([root.value] * root.multiplicity)
    return flat


# ---------------------------------------------------------------------------
# exceptional / constraint


def cmd_exceptional(cfg):
    if cfg.n_min < 0 or cfg.n_max < cfg.n_min:
        raise ConfigError(f"bad level range {cfg.n_min}..{cfg.n_max}")
    params = _exact_params(cfg)
    branch_cell = cfg.branch if cfg.model == "rabi" else ""
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        cp = qes.constraint_polynomial(params, n)
        rows.append(
            (
                cfg.model,
                branch_cell,
                str(n),
                scalar_str(cp.energy),
                repr(to_float(cp.energy)),
                _join(_expand_roots(cp.roots())),
                _join(cp.delta_values()),
            )
        )
    columns = ("model", "branch", "n", "E_exact", "E_float", "lambda_roots", "delta_values")
    _emit(_render(rows, columns, cfg.format), cfg.out)
    return 0


def cmd_constraint(cfg):
    if cfg.n is None:
        raise ConfigError("constraint requires --n")
    params = _exact_params(cfg)
    cp = qes.constraint_polynomial(params, cfg.n)
    row = (
        cfg.model,
        cfg.branch if cfg.model == "rabi" else "",
        str(cfg.n),
        scalar_str(cp.energy),
        str(cp.target_sign),
        str(cp.degree()),
        _join(cp.coeffs),
        _join(_expand_roots(cp.roots())),
        _join(cp.delta_values()),
    )
    columns = (
        "model",
        "branch",
        "n",
        "E_exact",
        "target_sign",
        "degree",
        "coefficients",
        "lambda_roots",
        "delta_values",
    )
    _emit(_render([row], columns, cfg.format), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle(cfg):
    if cfg.n is None and cfg.target is None:
        raise ConfigError("oracle requires --n or --target")
    params = _float_params(cfg)
    if cfg.target is not None:
        target = cfg.target
    else:
        target = to_float(exceptional_energy(_exact_params(cfg), cfg.n))
    tol = cfg.tol if cfg.tol is not None else _default_tol()
    schedule = cfg.schedule if cfg.schedule is not None else fock.DEFAULT_SCHEDULE
    verdict = fock.locate_level(params, target, schedule=schedule, tol=tol)
    rows = []
    for trunc, nearest, gap in verdict.history:
        rows.append(("probe", str(trunc), repr(nearest), repr(gap), ""))
    rows.append(
        (
            "verdict",
            str(verdict.trunc_used) if verdict.trunc_used is not None else "",
            repr(verdict.energy) if verdict.energy is not None else "",
            repr(abs(verdict.energy - target)) if verdict.energy is not None else "",
            verdict.status,
        )
    )
    columns = ("kind", "trunc", "energy", "abs_error", "status")
    _emit(_render(rows, columns, cfg.format), cfg.out)
    if cfg.dump is not None:
        fock.dump_matrix(fock.build_fock_matrix(params, max(schedule)), cfg.dump)
    return 0 if verdict.status == "converged" else 1


# ---------------------------------------------------------------------------
# sweep


def _sweep_cell(payload):
    params, trunc, levels, g = payload
    eigs = fock.spectrum(fock.build_fock_matrix(replace(params, g=g), trunc))
    return [(g, i, float(eigs[i])) for i in range(levels)]


def cmd_sweep(cfg):
    if cfg.g_min is None or cfg.g_max is None:
        raise ConfigError("sweep requires --g-min and --g-max")
    if not 0 <= cfg.g_min < cfg.g_max:
        raise ConfigError(f"need 0 <= g-min < g-max, got [{cfg.g_min}, {cfg.g_max}]")
    if Fraction(cfg.delta) == 0:
        raise ConfigError("sweep needs a nonzero --delta for the marker scan")
    if cfg.out is None:
        raise ConfigError("sweep requires --out")
    if cfg.grid < 2:
        raise ConfigError("sweep needs --grid >= 2")
    params = _float_params(cfg)
    dim = 2 * (cfg.trunc + 1)
    if cfg.levels > dim:
        raise ConfigError(f"--levels {cfg.levels} exceeds matrix dimension {dim}")

    gs = [cfg.g_min + (cfg.g_max - cfg.g_min) * i / cfg.grid for i in range(cfg.grid + 1)]
    payloads = [(params, cfg.trunc, cfg.levels, g) for g in gs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_sweep_cell, payloads, chunksize=8))
    else:
        chunks = [_sweep_cell(p) for p in payloads]
    level_rows = [row for chunk in chunks for row in chunk]

    delta = to_float(params.delta_level)
    # the marker search needs g > 0; start one grid step in when the
    # level sweep itself begins at zero coupling
    marker_lo = cfg.g_min
    if marker_lo == 0.0:
        marker_lo = (cfg.g_max - cfg.g_min) / cfg.grid
    marker_rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            points = qes.exceptional_points(
                params, n, delta, (marker_lo, cfg.g_max), grid=cfg.grid
            )
        except NoRootInRange:
            continue
        for g, energy in points:
            marker_rows.append((g, n, energy))

    if cfg.format == "json":
        payload = {
            "levels": [{"g": g, "level": i, "energy": e} for g, i, e in level_rows],
            "markers": [{"g": g, "n": n, "energy": e} for g, n, e in marker_rows],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.out)
    else:
        _emit(
            _render(
                [(repr(g), str(i), repr(e)) for g, i, e in level_rows],
                ("g", "level", "energy"),
                "csv",
            ),
            cfg.out,
        )
        _emit(
            _render(
                [(repr(g), str(n), repr(e)) for g, n, e in marker_rows],
                ("g", "n", "energy"),
                "csv",
            ),
            cfg.markers_out or _default_markers_path(cfg.out),
        )
    if cfg.plot is not None:
        from .plots import render_sweep_figure

        render_sweep_figure(
            level_rows, marker_rows, cfg.plot, title=f"{cfg.model} spectrum, omega={cfg.omega}"
        )
    return 0


def _default_markers_path(out):
    root, ext = os.path.splitext(out)
    return f"{root}.markers{ext or '.csv'}"


# ---------------------------------------------------------------------------
# verify


def _check(name, passed, detail=""):
    return (name, bool(passed), detail)


def _const_op(c) -> LinearDiffOp:
    return LinearDiffOp((Polynomial((c,)),))


def _suite_sl2(cfg):
    checks = []
    for n in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(7, 3), Fraction(5)):
        jp, j0, jm = sl2.sl2_generators(n)
        ok = (
            j0.commutator(jp) == jp
            and j0.commutator(jm) == -jm
            and jp.commutator(jm) == -2 * j0
        )
        checks.append(_check(f"sl2.commutators[n={n}]", ok))
    for n in (0, 1, 3):
        jp, j0, jm = sl2.sl2_generators(n)
        ok = all(op.preserves_space(n) for op in (jp, j0, jm))
        checks.append(_check(f"sl2.invariant_space[n={n}]", ok))
    return checks


def _random_scalar(rng):
    return Fraction(rng.randrange(-9, 10), rng.randrange(1, 8))


def _nonzero_scalar(rng):
    while True:
        val = _random_scalar(rng)
        if val:
            return val


def _suite_algebraization(cfg):
    rng = random.Random(cfg.seed)
    checks = []
    words = sl2.QUADRATIC_WORDS + sl2.LINEAR_WORDS + ("",)
    cubic = Polynomial((0, 0, 0, 1))
    for n in range(0, 7):
        round_trip = residuals = rejects = True
        for _ in range(cfg.samples):
            terms = {w: _random_scalar(rng) for w in words if rng.random() < 0.7}
            combo = sl2.Sl2Combination(n=n, terms=terms)
            heun = HeunCoefficients.from_diffop(combo.to_diffop())
            if sl2.algebraization_residuals(heun, n) != (0, 0, 0):
                residuals = False
            recovered = sl2.decompose_order2(heun, n)
            if recovered.to_diffop() != combo.to_diffop():
                round_trip = False
            broken = replace(heun, d1=heun.d1 + _nonzero_scalar(rng) * cubic)
            try:
                sl2.decompose_order2(broken, n)
                rejects = False
            except NotAlgebraizable:
                pass
        checks.append(_check(f"algebraization.residuals_vanish[n={n}]", residuals))
        checks.append(_check(f"algebraization.round_trip[n={n}]", round_trip))
        checks.append(_check(f"algebraization.rejects_violation[n={n}]", rejects))
    return checks


def _quartic_identity_checks(n):
    z = Polynomial((0, 1))
    zz = Polynomial((0, 0, 1))
    d2 = LinearDiffOp.derivative(2)
    d3 = LinearDiffOp.derivative(3)
    d4 = LinearDiffOp.derivative(4)
    z_op = LinearDiffOp.from_polynomial(z)
    zz_op = LinearDiffOp.from_polynomial(zz)
    yield (
        "z2_d4",
        zz_op * d4 == sl2.word_operator("+---", n) + n * (z_op * d3),
    )
    yield (
        "z2_d3",
        zz_op * d3 == sl2.word_operator("+--", n) + n * (z_op * d2),
    )
    yield (
        "z_d3",
        z_op * d3 == sl2.word_operator("0--", n) + Fraction(n, 2) * d2,
    )


def _suite_identities(cfg):
    checks = []
    for n in range(0, 9):
        for name, ok in _quartic_identity_checks(n):
            checks.append(_check(f"identities.{name}[n={n}]", ok))
    return checks


def _elim_cases():
    f = Fraction
    cases = []
    for branch in BRANCHES:
        for drive in (f(0), f(1, 8)):
            for g in (f(1, 5), f(1, 2)):
                cases.append(
                    ModelParams(
                        model="rabi",
                        omega=f(1),
                        g=g,
                        delta_level=f(1, 3),
                        drive=drive,
                        branch=branch,
                    )
                )
    for g in (f(3, 10), f(1, 3)):
        for q in (f(1, 4), f(3, 4)):
            cases.append(
                ModelParams(
                    model="twophoton", omega=f(1), g=g, delta_level=f(1, 5), bargmann_index=q
                )
            )
    for g in (f(3, 5), f(1, 3)):
        for kappa in (f(1, 2), f(1)):
            cases.append(
                ModelParams(
                    model="twomode", omega=f(1), g=g, delta_level=f(1, 5), bargmann_index=kappa
                )
            )
    return cases


def _suite_elimination(cfg):
    checks = []
    energy = Fraction(3, 7)
    for params in _elim_cases():
        system = coupled_system(params, energy)
        closed = model_operator(params, energy)
        reduced = eliminate(system, keep=system.reduced_component)
        label = params.model if params.model != "rabi" else f"rabi.{params.branch}"
        name = (
            f"elimination.matches_closed_form[{label} g={params.g}"
            f" drive={params.drive} idx={params.bargmann_index}]"
        )
        checks.append(_check(name, reduced == closed))
    return checks


def _suite_quartic(cfg):
    checks = []
    f = Fraction
    for model, indices, g in (
        ("twophoton", (f(1, 4), f(3, 4)), f(3, 10)),
        ("twomode", (f(1, 2), f(1)), f(3, 5)),
    ):
        for idx in indices:
            params = ModelParams(
                model=model, omega=f(1), g=g, delta_level=f(1, 5), bargmann_index=idx
            )
            for n in (1, 2, 3):
                energy = exceptional_energy(params, n)
                op = model_operator(params, energy)
                combo = sl2.decompose_order4(op, n)
                ok = combo.to_diffop() == op
                checks.append(_check(f"quartic.round_trip[{model} idx={idx} n={n}]", ok))
    return checks


def _suite_su11(cfg):
    checks = []
    f = Fraction
    for model, indices in (
        ("twophoton", (f(1, 4), f(3, 4))),
        ("twomode", (f(1, 2), f(1))),
    ):
        for idx in indices:
            k0, kp, km = su11_realization(model, idx)
            comm_ok = (
                k0.commutator(kp) == kp
                and k0.commutator(km) == -km
                and kp.commutator(km) == -2 * k0
            )
            # Casimir in raising-first form stays truncation-safe as a matrix
            casimir = kp * km - k0 * (k0 - LinearDiffOp.identity())
            cas_ok = casimir == _const_op(idx * (1 - idx))
            checks.append(_check(f"su11.commutators[{model} idx={idx}]", comm_ok))
            checks.append(_check(f"su11.casimir[{model} idx={idx}]", cas_ok))
            k0m, kpm, kmm = fock.su11_matrices(idx, 24)
            eye = np.eye(25)
            interior = np.s_[:23, :23]
            resid = max(
                float(np.max(np.abs((k0m @ kpm - kpm @ k0m - kpm)[interior]))),
                float(np.max(np.abs((k0m @ kmm - kmm @ k0m + kmm)[interior]))),
                float(np.max(np.abs((kpm @ kmm - kmm @ kpm + 2 * k0m)[interior]))),
                float(
                    np.max(
                        np.abs(kpm @ kmm - k0m @ (k0m - eye) - float(idx * (1 - idx)) * eye)
                    )
                ),
            )
            checks.append(
                _check(
                    f"su11.matrix_blocks[{model} idx={idx}]",
                    resid <= 1e-12,
                    f"max_resid={resid:.3e}",
                )
            )
    return checks


_SUITE_FUNCS = {
    "sl2": _suite_sl2,
    "algebraization": _suite_algebraization,
    "identities": _suite_identities,
    "elimination": _suite_elimination,
    "quartic": _suite_quartic,
    "su11": _suite_su11,
}


def cmd_verify(cfg):
    if cfg.suite != "all" and cfg.suite not in _VERIFY_SUITES:
        raise ConfigError(f"unknown suite {cfg.suite!r}; pick from {', '.join(_VERIFY_SUITES)}")
    names = _VERIFY_SUITES if cfg.suite == "all" else (cfg.suite,)
    rows = []
    all_ok = True
    for suite in names:
        for name, passed, detail in _SUITE_FUNCS[suite](cfg):
            all_ok = all_ok and passed
            rows.append((suite, name, "PASS" if passed else "FAIL", detail))
    columns = ("suite", "check", "result", "detail")
    _emit(_render(rows, columns, cfg.format), cfg.out)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_model_flags(p):
    p.add_argument("--model", choices=sorted(MODELS), default=None)
    p.add_argument("--branch", choices=sorted(BRANCHES), default=None)
    p.add_argument("--omega", default=None, help="field frequency (rational)")
    p.add_argument("--g", default=None, help="coupling strength (rational)")
    p.add_argument("--delta", default=None, help="level splitting Delta (rational)")
    p.add_argument("--drive", default=None, help="drive amplitude, driven Rabi only")
    p.add_argument("--index", default=None, help="Bargmann index: q or kappa")


def _add_output_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sl2rabi",
        description="hidden sl(2) structure of driven and multi-photon Rabi models",
    )
    parser.add_argument("--config", default=None, help="JSON file of defaults for any flag")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run internal consistency suites")
    p.add_argument("--suite", choices=("all",) + _VERIFY_SUITES, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("exceptional", help="tabulate quasi-exact energies")
    _add_model_flags(p)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("constraint", help="determinant constraint for one level")
    _add_model_flags(p)
    p.add_argument("--n", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="spectral sweep over a coupling range")
    _add_model_flags(p)
    p.add_argument("--g-min", type=float, default=None)
    p.add_argument("--g-max", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--markers-out", default=None)
    p.add_argument("--plot", default=None, help="also render a figure to this path")
    _add_output_flags(p)

    p = sub.add_parser("oracle", help="locate one level by truncated diagonalization")
    _add_model_flags(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--target", type=float, default=None, help="energy to hunt (overrides --n)")
    p.add_argument("--schedule", default=None, help="comma-separated truncation sizes")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--dump", default=None, help="write the largest matrix to this path")
    _add_output_flags(p)

    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "exceptional": cmd_exceptional,
    "constraint": cmd_constraint,
    "sweep": cmd_sweep,
    "oracle": cmd_oracle,
}


def config_from_args(args):
    data = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        data.update(loaded)
    for key, value in vars(args).items():
        if key == "config" or value is None:
            continue
        data[key] = value
    data["command"] = args.command
    return RunConfig.from_mapping(data)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Sl2RabiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
