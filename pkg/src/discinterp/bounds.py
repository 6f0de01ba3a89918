"""Interpolation-constant estimation and closed-form growth bounds.

The constant of a node set sigma over a Hilbert space X is
sup { min-sup-norm interpolant of f / ||f||_X } over the unit ball.  For
a fixed jet the worst f is the minimal-norm representative, so the sup
collapses to a finite-dimensional maximisation over jet vectors a on the
unit sphere of C^n, run here as seeded multistart Nelder-Mead.

Lower bounds come from explicit witnesses: the Fejer-smoothed Dirichlet
kernel (or its integer power for weighted sequence spaces), antipodally
rotated and transplanted to the target point by composition with the
Blaschke involution.  Closed-form two-sided bound formulas are emitted
alongside, with honest "order-only" flags where the underlying constants
are not numeric.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.optimize import minimize

from .errors import MixedMultiplicity, NotHilbert, UnsupportedSpace
from .extremal import PickProblem, cs_min_norm, pick_min_norm, quotient_norm
from .series import (
    CoeffSeries,
    SigmaSet,
    compose_with_blaschke,
    dirichlet_kernel,
    fejer_kernel,
    hadamard_product,
    jet_values,
    series_power,
)
from . import spaces as _sp

__all__ = [
    "BoundReport",
    "SweepRow",
    "SweepResult",
    "interp_constant",
    "witness_lower_bound",
    "theorem_bounds",
    "bound_sweep",
]

_MIN_SEPARATION = 1e-10


@dataclass(frozen=True)
class BoundReport:
    """Two-sided growth bounds for a (n, r) class, plus the conjectured scale."""

    n: int
    r: float
    lower: float
    upper: float
    lower_tag: str
    upper_tag: str
    lower_known: bool
    upper_known: bool
    phi_scale: float | None
    order_hints: tuple[tuple[str, float], ...] = ()
    estimate: float | None = None


def theorem_bounds(space: _sp.SpaceSpec, n: int, r: float) -> BoundReport:
    """Closed-form lower/upper bound values for the class (n, r).

    Known multiplicative constants are filled in (the Hardy lower side
    1/32^(1/p), the explicit sqrt(2) upper factor at p = 2); everything
    else is emitted with constant 1 and flagged order-only, never to be
    asserted against estimates.
    """
    if n < 1 or not (0.0 <= r < 1.0):
        raise ValueError("need n >= 1 and 0 <= r < 1")
    x = n / (1.0 - r)
    hints: tuple[tuple[str, float], ...] = ()

    if space.family == "hardy":
        invp = 0.0 if space.p == np.inf else 1.0 / space.p
        lower = (1.0 / 32.0) ** invp * x**invp
        if space.p == 2:
            upper, upper_tag, upper_known = (
                math.sqrt(2.0) * math.sqrt(x),
                "hardy-upper-exact",
                True,
            )
        else:
            upper, upper_tag, upper_known = x**invp, "hardy-upper-order", False
        report = BoundReport(
            n, r, lower, upper, "hardy-lower", upper_tag, True, upper_known, None
        )
    elif space.family == "seq":
        alpha = space.alpha
        if space.p == 2:
            expo = (2.0 * alpha - 1.0) / 2.0
            big_n = int(math.floor(alpha))
            hints = (
                ("lower-const", 1.0 / (2.0 ** (3 * big_n) * math.factorial(2 * big_n))),
                ("upper-const", float(big_n) ** (2 * big_n) if big_n > 0 else 1.0),
            )
            report = BoundReport(
                n, r, x**expo, x**expo, "seq-order", "seq-order", False, False, None,
                hints,
            )
        else:
            lower = (1.0 / (1.0 - r)) ** (alpha - 1.0 / space.p)
            if space.p <= 2:
                up_expo = alpha - 0.5
            else:
                invp = 0.0 if space.p == np.inf else 1.0 / space.p
                up_expo = alpha + 0.5 - 2.0 * invp
            report = BoundReport(
                n, r, lower, x**up_expo, "seq-eval-order", "seq-interp-order",
                False, False, None,
            )
    else:  # bergman
        beta = space.beta
        if space.p == 2:
            expo = (beta + 2.0) / 2.0  # same scale as the alpha = (beta+3)/2 sequence space
            report = BoundReport(
                n, r, x**expo, x**expo, "bergman-order", "bergman-order",
                False, False, None,
            )
        else:
            up_expo = (beta + 2.0) / space.p
            report = BoundReport(
                n, r, 0.0, x**up_expo, "none", "bergman-jet-upper", False, False, None
            )

    try:
        phi = _sp.eval_functional_norm(space, 1.0 - (1.0 - r) / n)
    except UnsupportedSpace:
        phi = None
    return replace(report, phi_scale=phi)


def _witness_power(space: _sp.SpaceSpec) -> int:
    if space.family == "hardy" and space.p == 2:
        return 1
    if space.family == "seq" and space.p == 2:
        m = 2.0 * space.alpha - 1.0
        m_int = int(round(m))
        if abs(m - m_int) < 1e-9 and m_int >= 1:
            return m_int
    raise UnsupportedSpace(
        "witness needs H^2 or a weighted l^2 space with integer 2*alpha - 1"
    )


def witness_lower_bound(space: _sp.SpaceSpec, lam: complex, n: int) -> float:
    """Certified lower bound for the interpolation constant of sigma_{lam,n}.

    The witness is (p_n * K_n)^m (coefficientwise product of Dirichlet and
    Fejer kernels, m = 2*alpha - 1), rotated so its boundary peak faces
    away from lam, then composed with b_lam.  The returned quotient/norm
    ratio is a valid lower bound for any witness; the rotation is what
    makes it grow at the proved (n/(1-r))-power rate.
    """
    if n < 1:
        raise ValueError("multiplicity must be >= 1")
    lam = complex(lam)
    m = _witness_power(space)
    base = series_power(hadamard_product(dirichlet_kernel(n), fejer_kernel(n)), m)
    if lam == 0:
        f = base
    else:
        eta = -np.conj(lam) / abs(lam)
        rotated = CoeffSeries(base.coeffs * eta ** np.arange(len(base)))
        f = compose_with_blaschke(rotated, lam)
    sigma = SigmaSet((lam,) * n)
    numerator = quotient_norm(f, sigma).value
    return numerator / _sp.norm(space, f)


def _jet_to_origin_matrix(lam: complex, n: int) -> np.ndarray:
    """Map a jet (f(lam), f'(lam), ..) to the first n coefficients of f o b_lam.

    Column d holds (b_lam - lam)^d / d! modulo z^n, so the matrix applied
    to the jet vector reproduces the transplanted Taylor coefficients.
    """
    u = np.zeros(n, dtype=complex)
    ks = np.arange(1, n)
    u[1:] = -(1.0 - abs(lam) ** 2) * np.conj(lam) ** (ks - 1)
    U = np.zeros((n, n), dtype=complex)
    U[0, 0] = 1.0
    col = U[:, 0].copy()
    for d in range(1, n):
        col = np.convolve(col, u)[:n]
        U[:, d] = col / math.factorial(d)
    return U


def interp_constant(
    space: _sp.SpaceSpec,
    sigma: SigmaSet,
    budget: int = 32,
    tol: float = 1e-8,
    seed: int = 0,
    nm_maxfev: int | None = None,
) -> float:
    """Multistart estimate of the interpolation constant of sigma over X.

    Maximises J(a) = (min sup-norm interpolant of jet a) /
    (min X-norm with jet a) over unit jet vectors; J is scale and phase
    invariant, so the search runs on the real 2n-sphere.  Deterministic
    under a fixed seed.  The result is a lower estimate of the true sup
    and never exceeds the projection operator norm (plus tolerance).
    """
    if not space.is_hilbert:
        raise NotHilbert("constant estimation needs a Hilbert-case space")
    n = sigma.n
    distinct = sigma.is_distinct(_MIN_SEPARATION)
    single = sigma.single_point()
    if not distinct and single is None:
        raise MixedMultiplicity(
            "sigma must be pairwise distinct or a single repeated point"
        )

    gram = _sp.gram_matrix(space, sigma)
    try:
        factor = cho_factor(gram, lower=True)

        def solve(a: np.ndarray) -> np.ndarray:
            return cho_solve(factor, a)

    except np.linalg.LinAlgError:
        inv = np.linalg.pinv(gram, hermitian=True)

        def solve(a: np.ndarray) -> np.ndarray:
            return inv @ a

    if distinct:
        def numerator(a: np.ndarray) -> float:
            return pick_min_norm(PickProblem(sigma.points, tuple(a)), tol=tol / 10).value
    else:
        U = _jet_to_origin_matrix(single, n)

        def numerator(a: np.ndarray) -> float:
            return cs_min_norm(U @ a).value

    def j_ratio(a: np.ndarray) -> float:
        den = math.sqrt(max(float(np.real(np.vdot(solve(a), a))), 0.0))
        if den <= 1e-14:
            return 0.0
        return numerator(a) / den

    starts = _jet_starts(n, budget, seed)
    if single is not None:
        witness_jet = _witness_jet(space, single, n)
        if witness_jet is not None:
            # guarantees estimate >= witness_lower_bound on this class
            starts.insert(0, witness_jet)
    maxfev = nm_maxfev if nm_maxfev is not None else 100 * n + 80
    best = 0.0
    for a0 in starts:
        best = max(best, j_ratio(a0))
        x0 = np.concatenate([a0.real, a0.imag])

        def objective(x: np.ndarray) -> float:
            v = x[:n] + 1j * x[n:]
            nv = np.linalg.norm(v)
            if nv < 1e-9:
                return 0.0
            return -j_ratio(v / nv)

        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": maxfev, "xatol": 1e-5, "fatol": tol / 4},
        )
        best = max(best, -float(res.fun))
    return best


def _witness_jet(space: _sp.SpaceSpec, lam: complex, n: int) -> np.ndarray | None:
    """Jet of the kernel witness at lam, normalised; None if unsupported."""
    try:
        m = _witness_power(space)
    except UnsupportedSpace:
        return None
    base = series_power(hadamard_product(dirichlet_kernel(n), fejer_kernel(n)), m)
    if lam != 0:
        eta = -np.conj(lam) / abs(lam)
        base = compose_with_blaschke(
            CoeffSeries(base.coeffs * eta ** np.arange(len(base))), lam
        )
    jet = jet_values(base, SigmaSet((lam,) * n))
    scale = np.linalg.norm(jet)
    return jet / scale if scale > 0 else None


def _jet_starts(n: int, budget: int, seed: int) -> list[np.ndarray]:
    starts: list[np.ndarray] = []
    for i in range(n):
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        starts.append(e)
    starts.append(np.ones(n, dtype=complex) / math.sqrt(n))
    starts.append(np.array([(-1.0) ** k for k in range(n)], dtype=complex) / math.sqrt(n))
    rng = np.random.default_rng(seed)
    while len(starts) < budget:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        starts.append(v / np.linalg.norm(v))
    return starts[: max(budget, 1)]


@dataclass(frozen=True)
class SweepRow:
    n: int
    r: float
    x: float
    witness: float | None
    estimate: float | None
    lower: float
    upper: float
    phi_scale: float | None
    lower_tag: str
    upper_tag: str


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    slope_witness: float | None
    slope_estimate: float | None


def _fit_slope(xs: list[float], ys: list[float]) -> float | None:
    if len(xs) < 2 or len(set(xs)) < 2:
        return None
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def bound_sweep(
    space: _sp.SpaceSpec,
    n_grid,
    r_grid,
    budget: int = 16,
    estimate_cap: int = 0,
    seed: int = 0,
    tol: float = 1e-6,
    workers: int = 1,
) -> SweepResult:
    """Witness bounds, optional constant estimates and formulas on a grid.

    Rows are ordered n-major then r; grid cells are independent and may be
    mapped over a thread pool, the merge by index keeps output
    deterministic.  The log-log slope of the witness (and estimate, when
    present on at least two cells) against n/(1-r) is fitted at the end.
    """
    cells = [(int(n), float(r)) for n in n_grid for r in r_grid]
    if not cells:
        raise ValueError("empty sweep grid")

    def make_row(cell: tuple[int, float]) -> SweepRow:
        n, r = cell
        report = theorem_bounds(space, n, r)
        try:
            witness = witness_lower_bound(space, complex(r), n)
        except UnsupportedSpace:
            witness = None
        estimate = None
        if space.is_hilbert and 0 < n <= estimate_cap:
            estimate = interp_constant(
                space, SigmaSet((complex(r),) * n), budget=budget, tol=tol, seed=seed
            )
        return SweepRow(
            n=n,
            r=r,
            x=n / (1.0 - r),
            witness=witness,
            estimate=estimate,
            lower=report.lower,
            upper=report.upper,
            phi_scale=report.phi_scale,
            lower_tag=report.lower_tag,
            upper_tag=report.upper_tag,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(make_row, cells))
    else:
        rows = tuple(make_row(c) for c in cells)

    wit = [(row.x, row.witness) for row in rows if row.witness]
    est = [(row.x, row.estimate) for row in rows if row.estimate]
    return SweepResult(
        rows=rows,
        slope_witness=_fit_slope([x for x, _ in wit], [y for _, y in wit]),
        slope_estimate=_fit_slope([x for x, _ in est], [y for _, y in est]),
    )
