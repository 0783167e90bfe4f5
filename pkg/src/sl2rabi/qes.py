"""Quasi-exact spectra: constraint polynomials, eigenpolynomials, sweeps.

At an exceptional energy E_n the reduced model operator restricts to the
space span{1, z, ..., z^n}.  Its restriction matrix M_n turns the spectral
problem H phi = target_sign * Delta^2 * phi into a finite eigenproblem: the
admissible values lambda = target_sign * Delta^2 are the roots of

    det(M_n - lambda I) = 0,

the constraint polynomial.  Roots are extracted exactly where the algebra
allows (zero roots peeled, then residual factors of degree <= 2 via the
quadratic formula in a quadratic extension) and otherwise through a
balanced companion matrix with Newton polish.

The characteristic polynomial itself is computed by the Faddeev-LeVerrier
recurrence, which stays inside the coefficient field (characteristic zero,
so the integer divisions are exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .diffops import LinearDiffOp
from .errors import (
    CouplingOutOfRange,
    DecoupledModel,
    IncompatibleField,
    NoRootInRange,
    NotAnEigenvalue,
    NumericalFailure,
    SpaceNotPreserved,
)
from .models import (
    ModelParams,
    coupled_system,
    exceptional_energy,
    gauge_coefficient,
    model_operator,
    reduced_component,
    spectral_target_sign,
)
from .polynomials import Polynomial
from .scalars import QuadExt, exact_sqrt, is_exact, to_float

ROOT_CLUSTER_TOL = 1e-9
FLOAT_EIGEN_TOL = 1e-10
FLOAT_SPACE_LEAK_TOL = 1e-9


# -- exact linear algebra -----------------------------------------------------------


def char_polynomial(rows):
    """Coefficients of det(M - lambda I), index k = power of lambda.

    Leading coefficient is (-1)^dim.  Faddeev-LeVerrier recurrence; exact
    whenever the entries are exact.
    """
    dim = len(rows)
    if any(len(r) != dim for r in rows):
        raise ValueError("matrix must be square")
    one, zero = Fraction(1), Fraction(0)
    ident = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
    aux = ident
    monic = [one]  # descending powers: lambda^dim + c1 lambda^(dim-1) + ...
    for k in range(1, dim + 1):
        prod = _mat_mul(rows, aux)
        ck = -_trace(prod) / k
        monic.append(ck)
        aux = [
            [prod[i][j] + (ck if i == j else zero) for j in range(dim)]
            for i in range(dim)
        ]
    sign = one if dim % 2 == 0 else -one
    return tuple(sign * monic[dim - j] for j in range(dim + 1))


def _mat_mul(a, b):
    dim = len(a)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            acc = Fraction(0)
            for k in range(dim):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _trace(a):
    acc = Fraction(0)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def nullspace(rows):
    """Exact kernel basis of a square matrix over Fraction/QuadExt entries.

    Each basis vector is scaled so its first nonzero coordinate is 1.
    """
    dim = len(rows)
    m = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(dim):
        pivot = None
        for r in range(row, dim):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(dim):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == dim:
            break
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        lead = next(x for x in vec if x)
        basis.append(tuple(x * (1 / lead) for x in vec))
    return basis


# -- constraint polynomial ------------------------------------------------------------


@dataclass(frozen=True)
class Root:
    """One root with multiplicity; value is exact (Fraction/QuadExt) or complex."""

    value: object
    multiplicity: int
    exact: bool

    def is_real(self) -> bool:
        if self.exact:
            if isinstance(self.value, QuadExt):
                return self.value.disc >= 0
            return True
        return abs(self.value.imag) <= ROOT_CLUSTER_TOL

    def real_float(self) -> float:
        if self.exact:
            return to_float(self.value)
        return float(self.value.real)


@dataclass(frozen=True)
class ConstraintPolynomial:
    """det(M_n - lambda I) for the restriction M_n at the exceptional energy.

    Roots are the admissible values of target_sign * Delta^2.  Coefficient
    index = power of lambda; leading coefficient (-1)^(n+1).
    """

    params: ModelParams
    n: int
    energy: object
    coeffs: tuple
    target_sign: int

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, lam):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    def roots(self):
        """All roots with multiplicity (degree-many in total)."""
        return _poly_roots(self.coeffs)

    def delta_values(self):
        """Nonnegative Delta with target_sign * Delta^2 among the real roots."""
        out = []
        for root in self.roots():
            if not root.is_real():
                continue
            if root.exact:
                dsq = self.target_sign * root.value
                if isinstance(dsq, QuadExt) and dsq.is_rational:
                    dsq = dsq.a
                if to_float(dsq) < 0:
                    continue
                try:
                    out.append(exact_sqrt(dsq))
                except IncompatibleField:
                    out.append(math.sqrt(to_float(dsq)))
            else:
                dsq = self.target_sign * root.real_float()
                if dsq < -ROOT_CLUSTER_TOL:
                    continue
                out.append(math.sqrt(max(dsq, 0.0)))
        out.sort(key=to_float)
        return tuple(out)


def _poly_roots(coeffs):
    coeffs = list(coeffs)
    if not any(coeffs):
        raise ValueError("zero polynomial has no well-defined root set")
    roots = []
    first_nonzero = next(i for i, c in enumerate(coeffs) if c)
    if first_nonzero:
        roots.append(Root(Fraction(0), first_nonzero, True))
        coeffs = coeffs[first_nonzero:]
    degree = len(coeffs) - 1
    if degree == 0:
        return tuple(roots)
    exact_in = all(is_exact(c) for c in coeffs)
    if exact_in and degree == 1:
        roots.append(Root(-coeffs[0] / coeffs[1], 1, True))
        return tuple(roots)
    if exact_in and degree == 2:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c2 * c0
        if isinstance(disc, QuadExt) and disc.is_rational:
            disc = disc.a
        if not isinstance(disc, QuadExt):
            half = 1 / (2 * c2)
            if not disc:
                roots.append(Root(-c1 * half, 2, True))
                return tuple(roots)
            # QuadExt collapses a perfect-square disc back to a Fraction
            sqrt_disc = QuadExt(0, 1, disc)
            r1 = _demote((-c1 + sqrt_disc) * half)
            r2 = _demote((-c1 - sqrt_disc) * half)
            lo, hi = sorted((r1, r2), key=_root_sort_key)
            roots.append(Root(lo, 1, True))
            roots.append(Root(hi, 1, True))
            return tuple(roots)
        # irrational discriminant in an extension field: fall through to floats
    roots.extend(_float_roots(coeffs))
    return tuple(roots)


def _demote(x):
    """Collapse a rational QuadExt to its Fraction value."""
    if isinstance(x, QuadExt) and x.is_rational:
        return x.a
    return x


def _root_sort_key(x):
    if isinstance(x, QuadExt) and x.disc < 0:
        return (float(x.a), float(x.b))
    return (to_float(x), 0.0)


def _float_roots(coeffs):
    cs = np.array([to_float(c) for c in coeffs], dtype=complex)
    raw = np.roots(cs[::-1])
    poly = np.polynomial.Polynomial(cs)
    dpoly = poly.deriv()
    polished = []
    for r in raw:
        x = complex(r)
        for _ in range(3):
            d = dpoly(x)
            if abs(d) < 1e-300:
                break
            x = x - poly(x) / d
        polished.append(x)
    polished.sort(key=lambda v: (round(v.real, 12), round(v.imag, 12)))
    clusters = []
    for x in polished:
        if clusters and abs(x - clusters[-1][-1]) <= ROOT_CLUSTER_TOL * max(1.0, abs(x)):
            clusters[-1].append(x)
        else:
            clusters.append([x])
    out = []
    for cluster in clusters:
        rep = sum(cluster) / len(cluster)
        if abs(rep.imag) <= ROOT_CLUSTER_TOL:
            rep = complex(rep.real, 0.0)
        out.append(Root(rep, len(cluster), False))
    return out


def constraint_polynomial(params: ModelParams, n: int) -> ConstraintPolynomial:
    """Characteristic polynomial of the restriction at the exceptional energy E_n."""
    energy = exceptional_energy(params, n)
    op = model_operator(params, energy)
    matrix = op.restriction_matrix(n)
    return ConstraintPolynomial(
        params=params,
        n=n,
        energy=energy,
        coeffs=char_polynomial(matrix),
        target_sign=spectral_target_sign(params),
    )


# -- exceptional solutions ------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalSolution:
    """One polynomial eigenfunction of the reduced problem at E_n.

    phi solves H phi = lam * phi with lam = target_sign * Delta^2; the full
    Bargmann-space component is exp(gauge_coefficient * z) * phi.  companion
    is the other spin component's polynomial factor (None when Delta does
    not embed in phi's coefficient field).  multiplicity is the kernel
    dimension lam has in the restriction.
    """

    params: ModelParams
    n: int
    energy: object
    delta_level: object
    lam: object
    phi: Polynomial
    companion: object
    gauge_coefficient: object
    multiplicity: int


def solutions_at_target(params: ModelParams, n: int, lam, delta=None):
    """Exact eigenpolynomials for a root lam of the constraint polynomial."""
    if not params.exact or not is_exact(lam):
        raise TypeError("solutions_at_target is the exact path; use eigenpolynomials for floats")
    energy = exceptional_energy(params, n)
    op = model_operator(params, energy)
    matrix = op.restriction_matrix(n)
    shifted = [
        [matrix[i][j] - (lam if i == j else 0) for j in range(n + 1)]
        for i in range(n + 1)
    ]
    kernel = nullspace(shifted)
    if not kernel:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue of the restriction at n={n}")
    if delta is None:
        delta = _delta_from_lam(lam, spectral_target_sign(params))
    gauge = gauge_coefficient(params)
    out = []
    for vec in kernel:
        phi = Polynomial(vec)
        residual = op.apply(phi) - lam * phi
        if not residual.is_zero():
            raise NumericalFailure("exact kernel vector failed the operator residual")
        companion = None
        if delta is not None and is_exact(delta) and delta:
            try:
                companion = companion_component_raw(params, energy, delta, phi)
            except IncompatibleField:
                companion = None
        out.append(
            ExceptionalSolution(
                params=params,
                n=n,
                energy=energy,
                delta_level=delta,
                lam=lam,
                phi=phi,
                companion=companion,
                gauge_coefficient=gauge,
                multiplicity=len(kernel),
            )
        )
    return tuple(out)


def _delta_from_lam(lam, target_sign):
    dsq = target_sign * lam
    if is_exact(dsq):
        if isinstance(dsq, QuadExt) and dsq.is_rational:
            dsq = dsq.a
        if isinstance(dsq, QuadExt):
            return math.sqrt(to_float(dsq)) if to_float(dsq) >= 0 else None
        if dsq < 0:
            return None
        return exact_sqrt(dsq)
    dsq = complex(dsq)
    if abs(dsq.imag) > ROOT_CLUSTER_TOL or dsq.real < -ROOT_CLUSTER_TOL:
        return None
    return math.sqrt(max(dsq.real, 0.0))


def eigenpolynomials(params: ModelParams, n: int, delta):
    """Eigenpolynomials of H phi = target_sign * delta^2 * phi at E_n.

    Exact parameters take the exact path (kernel over the coefficient
    field); float parameters fall back to an SVD kernel with a 1e-10
    eigenvalue tolerance.
    """
    sign = spectral_target_sign(params)
    if params.exact and is_exact(delta):
        lam = sign * delta * delta
        return solutions_at_target(params, n, lam, delta=delta)
    return _eigenpolynomials_float(params, n, to_float(delta))


def _eigenpolynomials_float(params: ModelParams, n: int, delta: float):
    params = params.as_float()
    lam = spectral_target_sign(params) * delta * delta
    energy = exceptional_energy(params, n)
    op = model_operator(params, energy)
    matrix = _float_restriction(op, n)
    eigs = np.linalg.eigvals(matrix)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    if np.min(np.abs(eigs - lam)) > FLOAT_EIGEN_TOL * scale:
        raise NotAnEigenvalue(f"{lam} is not within tolerance of a restriction eigenvalue")
    shifted = matrix - lam * np.eye(n + 1)
    _, svals, vt = np.linalg.svd(shifted)
    null_mask = svals <= FLOAT_EIGEN_TOL * max(1.0, float(svals[0]) if len(svals) else 1.0)
    vectors = [vt[i] for i in range(len(svals)) if null_mask[i]]
    if not vectors:
        vectors = [vt[-1]]
    gauge = gauge_coefficient(params)
    out = []
    for vec in vectors:
        lead = next((x for x in vec if abs(x) > 1e-12), vec[0])
        vec = vec / lead
        phi = Polynomial([float(x) for x in vec])
        residual = op.apply(phi) - lam * phi
        rel = _poly_norm(residual) / max(1.0, _poly_norm(phi))
        if rel > 1e-10:
            raise NumericalFailure(f"float eigenpolynomial residual {rel:.3e} too large")
        companion = None
        if delta:
            companion = companion_component_raw(params, energy, delta, phi)
        out.append(
            ExceptionalSolution(
                params=params,
                n=n,
                energy=energy,
                delta_level=delta,
                lam=lam,
                phi=phi,
                companion=companion,
                gauge_coefficient=gauge,
                multiplicity=len(vectors),
            )
        )
    return tuple(out)


def _poly_norm(p: Polynomial) -> float:
    return max((abs(to_float(c)) for c in p.coeffs), default=0.0)


def _float_restriction(op: LinearDiffOp, n: int) -> np.ndarray:
    """Restriction of a float-coefficient operator on span{1..z^n}.

    The cancellations that keep the space invariant are exact in the symbolic
    layer but survive only to rounding level in floats, so coefficients above
    z^n below FLOAT_SPACE_LEAK_TOL (relative to the largest image entry) are
    dropped; anything larger is a genuine violation.
    """
    images = [op.apply(Polynomial.monomial(j)) for j in range(n + 1)]
    scale = max(
        1.0,
        max((abs(to_float(c)) for img in images for c in img.coeffs), default=0.0),
    )
    cols = []
    for j, image in enumerate(images):
        for k in range(n + 1, image.degree() + 1):
            if abs(to_float(image.coefficient(k))) > FLOAT_SPACE_LEAK_TOL * scale:
                raise SpaceNotPreserved(j, image.degree(), n)
        cols.append([to_float(image.coefficient(i)) for i in range(n + 1)])
    return np.array(cols, dtype=float).T


def companion_component_raw(params: ModelParams, energy, delta, phi: Polynomial) -> Polynomial:
    """The other component's polynomial: phi_other = op(phi) / (sign * Delta)."""
    if not delta:
        raise DecoupledModel("Delta = 0 has no companion relation")
    system = coupled_system(params, energy)
    if reduced_component(params) == "plus":
        op, sign = system.op_plus, system.rhs_sign_plus
    else:
        op, sign = system.op_minus, system.rhs_sign_minus
    return op.apply(phi) * (1 / (sign * delta))


def companion_component(solution: ExceptionalSolution) -> Polynomial:
    """Companion polynomial of a solution (recomputed if not stored)."""
    if solution.companion is not None:
        return solution.companion
    return companion_component_raw(
        solution.params, solution.energy, solution.delta_level, solution.phi
    )


def solution_residual(params: ModelParams, energy, delta, phi: Polynomial) -> Polynomial:
    """H phi - target_sign * delta^2 * phi; identically zero for a true solution."""
    op = model_operator(params, energy)
    lam = spectral_target_sign(params) * delta * delta
    return op.apply(phi) - lam * phi


def verify_solution(params: ModelParams, energy, delta, phi: Polynomial) -> bool:
    """Exact check on the exact path; relative residual < 1e-10 on floats."""
    residual = solution_residual(params, energy, delta, phi)
    if params.exact and is_exact(delta) and all(is_exact(c) for c in phi.coeffs):
        return residual.is_zero()
    return _poly_norm(residual) <= 1e-10 * max(1.0, _poly_norm(phi))


# -- coupling sweeps -------------------------------------------------------------------


def exceptional_points(params: ModelParams, n: int, delta, g_range, grid: int = 512):
    """Couplings g in g_range where delta is admissible at level n.

    Scans det(M_n(g) - target_sign*delta^2 I) on a uniform grid, bisects sign
    changes to machine precision, and also inspects the sign changes of the
    numerical derivative so tangential (double) roots are captured.  Returns
    (g, E_n(g)) pairs sorted by g; an empty result is valid.
    """
    lo, hi = (float(g_range[0]), float(g_range[1]))
    if not (math.isfinite(lo) and math.isfinite(hi)) or not 0 < lo < hi:
        raise NoRootInRange(f"invalid g range ({lo}, {hi})")
    base = params.as_float()
    wf = to_float(base.omega)
    bound = wf / 2 if base.model == "twophoton" else wf
    if base.model != "rabi" and hi >= bound:
        raise CouplingOutOfRange(f"g range exceeds the validity bound {bound}")
    if not isinstance(grid, int) or grid < 2:
        raise ValueError("grid must be an integer >= 2")
    delta = to_float(delta)
    if delta == 0.0:
        # lambda = 0 is a root at every coupling, so the scan is vacuous
        raise DecoupledModel("Delta = 0 admits the trivial root everywhere")
    lam = spectral_target_sign(base) * delta * delta

    def det_at(g: float) -> float:
        p = replace(base, g=g)
        energy = exceptional_energy(p, n)
        matrix = _float_restriction(model_operator(p, energy), n)
        return float(np.linalg.det(matrix - lam * np.eye(n + 1)))

    xs = np.linspace(lo, hi, grid + 1)
    fs = np.array([det_at(x) for x in xs])
    fscale = max(1.0, float(np.max(np.abs(fs))))

    found = []

    def record(g: float):
        for seen in found:
            if abs(g - seen) <= 1e-10 * max(1.0, abs(seen)):
                return
        found.append(g)

    for i in range(grid):
        a, b, fa, fb = xs[i], xs[i + 1], fs[i], fs[i + 1]
        if fa == 0.0:
            record(float(a))
            continue
        if fa * fb < 0:
            record(_bisect(det_at, float(a), float(b), float(fa)))
    if fs[-1] == 0.0:
        record(float(xs[-1]))

    # tangential roots: minima of |f| where f does not change sign
    df = np.diff(fs)
    for i in range(len(df) - 1):
        if df[i] * df[i + 1] < 0:
            g_ext, f_ext = _refine_extremum(det_at, float(xs[i]), float(xs[i + 2]))
            if abs(f_ext) <= 1e-9 * fscale:
                record(g_ext)

    found.sort()
    out = []
    for g in found:
        energy = exceptional_energy(replace(base, g=g), n)
        out.append((g, to_float(energy)))
    return tuple(out)


def _bisect(func, a, b, fa):
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = func(mid)
        if fm == 0.0:
            return mid
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def _refine_extremum(func, a, b):
    # golden-section on |f|; enough accuracy to classify a tangential root
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = abs(func(x1)), abs(func(x2))
    for _ in range(120):
        if b - a < 1e-14 * max(1.0, abs(b)):
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = abs(func(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = abs(func(x2))
    mid = 0.5 * (a + b)
    return mid, func(mid)
