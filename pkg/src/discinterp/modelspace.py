"""Malmquist basis of the model space and the induced linear interpolation.

For a Blaschke product B with zero multiset sigma, the model space
K_B = H^2 (-) B H^2 carries the orthonormal Malmquist basis

    e_k(z) = sqrt(1 - |lam_k|^2) / (1 - conj(lam_k) z) * prod_{j<k} b_{lam_j}(z),

with b_lam(z) = (lam - z)/(1 - conj(lam) z).  The interpolation operator
projects onto span(e_k) through the coefficient pairing
<h, g> = sum_k h_k conj(g_k); its image matches the jet of the input on
sigma.  Derivative operator norms on K_B are read off Gram matrices of
differentiated basis series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .series import CoeffSeries, SigmaSet
from .spaces import SpaceSpec, kernel_diagonal
from . import series as _s

__all__ = [
    "MalmquistBasis",
    "malmquist_basis",
    "cauchy_pairing",
    "project",
    "bernstein_ratio",
    "projection_operator_norm",
]

_TRUNC_CAP = 1 << 16


@dataclass(frozen=True)
class MalmquistBasis:
    """Orthonormal basis of K_B, truncated to a common degree."""

    sigma: SigmaSet
    series: tuple[CoeffSeries, ...]

    @property
    def n(self) -> int:
        return len(self.series)

    @property
    def degree(self) -> int:
        return self.series[0].degree

    def coeff_matrix(self) -> np.ndarray:
        """(n, degree+1) array of basis coefficients."""
        return np.vstack([e.coeffs for e in self.series])

    def eval(self, z) -> np.ndarray:
        """Exact rational values e_k(z); shape (n, len(z))."""
        zs = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty((self.n, zs.size), dtype=complex)
        running = np.ones_like(zs)
        for k, lam in enumerate(self.sigma.points):
            cl = np.conj(lam)
            out[k] = np.sqrt(1.0 - abs(lam) ** 2) / (1.0 - cl * zs) * running
            running = running * (lam - zs) / (1.0 - cl * zs)
        return out


def _initial_degree(sigma: SigmaSet, tol: float) -> int:
    r = max(sigma.r, 0.1)
    est = int((-np.log(tol) + 3.0 * sigma.n) / (1.0 - r)) + 16
    m = 64
    while m < est:
        m <<= 1
    return m


def malmquist_basis(
    sigma: SigmaSet, n_trunc: int | None = None, tol: float = 1e-11
) -> MalmquistBasis:
    """Construct the Malmquist basis, truncated so each ||e_k||_2 = 1 - O(tol).

    The truncation degree doubles until the coefficient mass lost in the
    tail (measured through the unit-norm deficit of the last basis
    element) drops below tol.
    """
    pinned = n_trunc is not None
    deg = int(n_trunc) if pinned else _initial_degree(sigma, tol)
    while True:
        basis = _build(sigma, deg)
        deficit = max(
            abs(1.0 - float(np.sum(np.abs(e.coeffs) ** 2))) for e in basis.series
        )
        if deficit <= tol:
            return basis
        if pinned or deg >= _TRUNC_CAP:
            raise TruncationError(
                f"Malmquist truncation at degree {deg} misses unit norm by "
                f"{deficit:.3e} (r={sigma.r:.3f}); tolerance {tol}"
            )
        deg *= 2


def _build(sigma: SigmaSet, deg: int) -> MalmquistBasis:
    n_len = deg + 1
    out = []
    running = np.zeros(n_len, dtype=complex)
    running[0] = 1.0
    for lam in sigma.points:
        cl = np.conj(lam)
        e = np.sqrt(1.0 - abs(lam) ** 2) * _s._div_geometric(running, cl)
        out.append(CoeffSeries(e))
        running = _s._div_geometric(_s._mul_linear(running, lam), cl)
    return MalmquistBasis(sigma, tuple(out))


def cauchy_pairing(h: CoeffSeries, g: CoeffSeries) -> complex:
    """Coefficient pairing sum_k h_k conj(g_k) over the common range."""
    m = min(len(h), len(g))
    return complex(np.vdot(g.coeffs[:m], h.coeffs[:m]))


def project(basis: MalmquistBasis, f: CoeffSeries) -> CoeffSeries:
    """Image of f under the interpolation operator sum_k <f, e_k> e_k."""
    E = basis.coeff_matrix()
    m = min(E.shape[1], len(f))
    coords = E[:, :m].conj() @ f.coeffs[:m]
    return CoeffSeries(coords @ E)


def bernstein_ratio(
    sigma: SigmaSet, order: int = 1, basis: MalmquistBasis | None = None
) -> float:
    """Operator norm of order-fold differentiation K_B -> H^2.

    Builds the Hermitian Gram matrix of the differentiated basis series
    and returns sqrt of its largest eigenvalue.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if basis is None:
        basis = malmquist_basis(sigma)
    ders = []
    for e in basis.series:
        d = e
        for _ in range(order):
            d = d.derivative()
        ders.append(d.coeffs)
    D = np.vstack(ders)
    M = D @ D.conj().T
    eig = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    return float(np.sqrt(max(eig[-1], 0.0)))


def projection_operator_norm(
    space: SpaceSpec,
    sigma: SigmaSet,
    coarse: int = 4096,
    top: int = 8,
    basis: MalmquistBasis | None = None,
) -> float:
    """Exact norm of the interpolation operator from the space into H^inf.

    For fixed z the functional f |-> (Tf)(z) has dual norm
    sqrt(conj(e(z))^H S conj(e(z))) with S the kernel-weighted Gram of the
    basis coefficients; the sup over the closed disc sits on the circle
    and is located on a coarse grid, then polished by golden section.
    Every value returned bounds the interpolation constant of sigma from
    above, because Tf interpolates f.
    """
    if basis is None:
        basis = malmquist_basis(sigma)
    E = basis.coeff_matrix()  # (n, N+1)
    kap = kernel_diagonal(space, np.arange(E.shape[1]))
    S = (E.conj() * kap) @ E.T  # S_kl = sum_m kappa_m conj(E_km) E_lm

    def dual_sq(zs: np.ndarray) -> np.ndarray:
        vals = basis.eval(zs)  # (n, M)
        return np.real(np.einsum("km,kl,lm->m", vals, S, vals.conj()))

    thetas = 2.0 * np.pi * np.arange(coarse) / coarse
    grid = dual_sq(np.exp(1j * thetas))
    best = float(np.max(grid))
    is_peak = (grid >= np.roll(grid, 1)) & (grid >= np.roll(grid, -1))
    peaks = np.nonzero(is_peak)[0]
    order_idx = peaks[np.argsort(grid[peaks])][-top:]
    h = 2.0 * np.pi / coarse

    def fn(theta: float) -> float:
        return float(dual_sq(np.array([np.exp(1j * theta)]))[0])

    from .spaces import _golden_max

    for idx in order_idx:
        theta0 = thetas[idx]
        best = max(best, _golden_max(fn, theta0 - h, theta0 + h))
    return float(np.sqrt(best))
