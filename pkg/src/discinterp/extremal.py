"""Exact minimal-norm bounded interpolation on finite node sets.

Distinct nodes go through the Pick matrix: the least c for which
[(c^2 - w_i conj(w_j)) / (1 - lam_i conj(lam_j))] is positive
semidefinite, found by bisection with an eigenvalue feasibility test.
A single node of multiplicity n is the Taylor-jet problem, solved exactly
as the spectral norm of the lower-triangular Toeplitz matrix of the jet.
The quotient norm dispatches between the two after transplanting jets to
the origin with the involution b_lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.linalg import toeplitz
from scipy.optimize import minimize

from .errors import DegenerateNodes, MixedMultiplicity
from .series import CoeffSeries, SigmaSet, compose_with_blaschke, eval_series

__all__ = [
    "PickProblem",
    "ExtremalResult",
    "pick_min_norm",
    "cs_min_norm",
    "quotient_norm",
    "carleson_constant",
]

_MIN_SEPARATION = 1e-10
_EIG_FLOOR = 1e-12


@dataclass(frozen=True)
class PickProblem:
    """Distinct nodes in the disc with target values."""

    nodes: tuple[complex, ...]
    values: tuple[complex, ...]

    def __post_init__(self):
        nodes = tuple(complex(x) for x in self.nodes)
        values = tuple(complex(x) for x in self.values)
        if len(nodes) != len(values) or not nodes:
            raise ValueError("need equally many nodes and values, at least one")
        for lam in nodes:
            if abs(lam) >= 1.0:
                raise DegenerateNodes(f"node |{lam}| >= 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class ExtremalResult:
    """Optimal value of a minimal-norm problem plus its certificate.

    For Pick problems the certificate is the smallest eigenvalue of the
    Pick matrix at the optimum (close to the feasibility boundary); for
    Toeplitz problems it is the residual ||T v - s u|| of the leading
    singular triplet.
    """

    value: float
    certificate: float
    mode: str


def _pick_eigmin(c: float, cauchy: np.ndarray, wmat: np.ndarray) -> float:
    pick = c * c * cauchy - wmat
    return float(np.linalg.eigvalsh(pick)[0])


def pick_min_norm(problem: PickProblem, tol: float = 1e-8) -> ExtremalResult:
    """Least sup-norm of a bounded interpolant through the given data.

    Bisects on the norm level c; feasibility at level c is positive
    semidefiniteness of the Pick matrix.  The upper bracket starts at the
    crude seed max|w| * prod (1+|lam|)/(1-|lam|) and doubles until
    feasible, which always terminates for separated nodes.
    """
    nodes = np.array(problem.nodes)
    values = np.array(problem.values)
    n = nodes.size
    if n > 1:
        sep = min(
            abs(nodes[i] - nodes[j]) for i in range(n) for j in range(i + 1, n)
        )
        if sep < _MIN_SEPARATION:
            raise DegenerateNodes(f"node separation {sep:.2e} < {_MIN_SEPARATION}")

    cauchy = 1.0 / (1.0 - np.outer(nodes, nodes.conj()))
    wmat = np.outer(values, values.conj()) * cauchy
    wmax = float(np.max(np.abs(values)))
    if wmax == 0.0:
        return ExtremalResult(0.0, 0.0, "pick")

    scale = max(1.0, float(np.linalg.norm(wmat)))
    floor = -_EIG_FLOOR * scale

    lo = wmax  # necessary from the diagonal entries
    if _pick_eigmin(lo, cauchy, wmat) >= floor:
        return ExtremalResult(lo, _pick_eigmin(lo, cauchy, wmat), "pick")
    hi = wmax * float(np.prod((1.0 + np.abs(nodes)) / (1.0 - np.abs(nodes))))
    hi = max(hi, lo * 2.0)
    for _ in range(200):
        if _pick_eigmin(hi, cauchy, wmat) >= floor:
            break
        lo = hi
        hi *= 2.0
    else:
        raise DegenerateNodes("no feasible norm level found; nodes too close")

    for _ in range(200):
        width_ok = (hi - lo) <= tol * max(1.0, hi)
        cert = _pick_eigmin(hi, cauchy, wmat)
        if width_ok and cert <= 10.0 * tol * scale:
            break
        mid = 0.5 * (lo + hi)
        if _pick_eigmin(mid, cauchy, wmat) >= floor:
            hi = mid
        else:
            lo = mid
    return ExtremalResult(hi, _pick_eigmin(hi, cauchy, wmat), "pick")


def cs_min_norm(coeffs) -> ExtremalResult:
    """Least sup-norm over analytic functions with the given leading jet.

    Equals the spectral norm of the lower-triangular Toeplitz matrix
    T[i, j] = c_{i-j}; exact up to dense SVD accuracy.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need a nonempty 1-d coefficient vector")
    first_row = np.zeros_like(c)
    first_row[0] = c[0]
    T = toeplitz(c, first_row)
    U, s, Vh = np.linalg.svd(T)
    value = float(s[0])
    residual = float(np.linalg.norm(T @ Vh[0].conj() - value * U[:, 0]))
    return ExtremalResult(value, residual, "toeplitz")


def quotient_norm(f: CoeffSeries, sigma: SigmaSet, tol: float = 1e-8) -> ExtremalResult:
    """Distance-to-ideal norm: least sup-norm matching the jet of f on sigma.

    Distinct sigma reduces to a Pick problem on the point values; a single
    point of multiplicity n transplants the jet to the origin through
    b_lam (an isometry of H^inf) and solves the Taylor-jet problem on the
    first n coefficients of f o b_lam.
    """
    if sigma.is_distinct(_MIN_SEPARATION):
        values = [eval_series(f, lam) for lam in sigma.points]
        return pick_min_norm(PickProblem(sigma.points, tuple(values)), tol=tol)
    lam = sigma.single_point()
    if lam is None:
        raise MixedMultiplicity(
            "sigma must be pairwise distinct or a single repeated point"
        )
    composed = compose_with_blaschke(f, lam, n_out=sigma.n - 1)
    return cs_min_norm(composed.coeffs)


def _pick_value_for_data(sigma: SigmaSet, data: np.ndarray, tol: float) -> float:
    return pick_min_norm(PickProblem(sigma.points, tuple(data)), tol=tol).value


def carleson_constant(
    sigma: SigmaSet,
    tol: float = 1e-6,
    budget: int = 64,
    seed: int = 0,
) -> float:
    """Lower estimate of the worst minimal-norm interpolation of unit data.

    Maximises the Pick value over unimodular data (the sup over the unit
    polydisc is attained there) by multistart Nelder-Mead on the phase
    angles.  Deterministic under a fixed seed; the returned value is a
    certified lower bound of the supremum, not the supremum itself.
    """
    if not sigma.is_distinct(_MIN_SEPARATION):
        raise DegenerateNodes("Carleson constant needs pairwise distinct nodes")
    n = sigma.n
    inner_tol = min(tol, 1e-8)

    def value_of(phases: np.ndarray) -> float:
        data = np.exp(1j * np.concatenate(([0.0], phases)))
        return _pick_value_for_data(sigma, data, inner_tol)

    if n == 1:
        return value_of(np.zeros(0))

    starts: list[np.ndarray] = []
    quarter = {1.0: 0.0, -1.0: np.pi, 1.0j: np.pi / 2, -1.0j: -np.pi / 2}
    for combo in product((1.0, -1.0, 1.0j, -1.0j), repeat=n - 1):
        starts.append(np.array([quarter[q] for q in combo]))
        if len(starts) >= max(budget // 2, 1):
            break
    rng = np.random.default_rng(seed)
    while len(starts) < budget:
        starts.append(rng.uniform(-np.pi, np.pi, size=n - 1))

    best = 0.0
    for x0 in starts[:budget]:
        best = max(best, value_of(x0))
        res = minimize(
            lambda x: -value_of(x),
            x0,
            method="Nelder-Mead",
            options={"maxfev": 120 * (n - 1) + 40, "xatol": 1e-4, "fatol": tol / 4},
        )
        best = max(best, -float(res.fun))
    return best
