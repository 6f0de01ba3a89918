"""Banach-space descriptors: norms, reproducing kernels, Gram matrices.

Three families are implemented:

* ``hardy(p)``          boundary L^p means, 1 <= p <= inf,
* ``seq_weighted(p, alpha)``   coefficient norms with weight (k+1)^-(alpha-1),
* ``bergman_radial(p, beta)``  area integrals against (1-|z|^2)^beta dx dy
  (no 1/pi normalisation).

The p = 2 members are Hilbert spaces with a diagonal reproducing kernel
sum_k kappa_k (lambda conj(mu))^k; everything kernel-based (evaluation
functional norms, Gram matrices, minimal-norm interpolants) runs off the
kappa_k diagonal, summed in blocks to a fixed tail tolerance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import gammaln, roots_jacobi

from .errors import (
    Divergence,
    IllConditionedWarning,
    NotHilbert,
    UnsupportedSpace,
)
from .series import CoeffSeries, SigmaSet, series_power

__all__ = [
    "SpaceSpec",
    "hardy",
    "seq_weighted",
    "bergman_radial",
    "norm",
    "eval_functional_norm",
    "kernel_diagonal",
    "gram_matrix",
    "MinNormResult",
    "min_norm_trace",
    "power_inequality_check",
]

_SERIES_TOL = 1e-14
_SERIES_BLOCK = 256
_SERIES_KMAX = 1 << 21
_COND_FLOOR = 1e-13


@dataclass(frozen=True)
class SpaceSpec:
    """Descriptor of one Banach space of analytic functions on the disc."""

    family: str  # "hardy" | "seq" | "bergman"
    p: float
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.family not in ("hardy", "seq", "bergman"):
            raise UnsupportedSpace(f"unknown family {self.family!r}")
        if not (1.0 <= self.p):
            raise UnsupportedSpace("p must satisfy 1 <= p <= inf")
        if self.family == "seq":
            if self.alpha is None or self.alpha < 1.0:
                raise UnsupportedSpace("sequence-space weight needs alpha >= 1")
        if self.family == "bergman":
            if self.beta is None or self.beta <= -1.0:
                raise UnsupportedSpace("radial Bergman weight needs beta > -1")

    @property
    def is_hilbert(self) -> bool:
        return self.p == 2

    def label(self) -> str:
        if self.family == "hardy":
            return f"H^{self.p:g}"
        if self.family == "seq":
            return f"l^{self.p:g}_a(alpha={self.alpha:g})"
        return f"L^{self.p:g}_a(beta={self.beta:g})"


def hardy(p: float) -> SpaceSpec:
    return SpaceSpec("hardy", float(p))


def seq_weighted(p: float, alpha: float) -> SpaceSpec:
    return SpaceSpec("seq", float(p), alpha=float(alpha))


def bergman_radial(p: float, beta: float) -> SpaceSpec:
    return SpaceSpec("bergman", float(p), beta=float(beta))


# ---------------------------------------------------------------------------
# kernel diagonal kappa_k (Hilbert cases): ||f||^2 = sum |f_k|^2 / kappa_k
# ---------------------------------------------------------------------------


def kernel_diagonal(space: SpaceSpec, ks: np.ndarray) -> np.ndarray:
    """kappa_k for the requested indices; requires a Hilbert-case space."""
    if not space.is_hilbert:
        raise NotHilbert(f"{space.label()} has no diagonal reproducing kernel here")
    ks = np.asarray(ks, dtype=float)
    if space.family == "hardy":
        return np.ones_like(ks)
    if space.family == "seq":
        return (ks + 1.0) ** (2.0 * (space.alpha - 1.0))
    # bergman: ||z^k||^2 = pi * B(k+1, beta+1)
    b = space.beta
    logw = np.log(np.pi) + gammaln(ks + 1.0) + gammaln(b + 1.0) - gammaln(ks + b + 2.0)
    return np.exp(-logw)


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------


def _next_pow2(n: int) -> int:
    m = 1
    while m < n:
        m <<= 1
    return m


def _hardy_norm(p: float, f: CoeffSeries) -> float:
    deg = f.degree
    if p == np.inf:
        return _circle_max(f)
    if p == int(p) and int(p) % 2 == 0:
        m = _next_pow2(max(64, int(p) * deg + 2))
    else:
        # |f|^p is not a trigonometric polynomial; dense grid, spectral decay
        m = _next_pow2(max(8192, 4 * deg + 4))
    vals = np.abs(np.fft.fft(f.padded(m)))
    return float(np.mean(vals**p) ** (1.0 / p))


def _circle_max(f: CoeffSeries, coarse: int = 4096, top: int = 8) -> float:
    """Max modulus on the unit circle: coarse grid + golden-section polish."""
    m = _next_pow2(max(coarse, 2 * f.degree + 2))
    vals = np.abs(np.fft.fft(f.padded(m)))

    def fn(theta: float) -> float:
        return abs(complex(np.polyval(f.coeffs[::-1], np.exp(1j * theta))))

    best = float(np.max(vals))
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    peaks = np.nonzero(is_peak)[0]
    order = peaks[np.argsort(vals[peaks])][-top:]
    h = 2.0 * np.pi / m
    for idx in order:
        theta0 = -2.0 * np.pi * idx / m  # fft grid runs clockwise
        best = max(best, _golden_max(fn, theta0 - h, theta0 + h))
    return best


def _golden_max(fn, a: float, b: float, iters: int = 60) -> float:
    """Golden-section maximisation of a smooth function on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
        else:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
    return max(fc, fd)


def _bergman_norm(space: SpaceSpec, f: CoeffSeries) -> float:
    if space.p == np.inf:
        raise UnsupportedSpace("sup-norm Bergman spaces are not implemented")
    p, beta, deg = space.p, space.beta, f.degree
    # radial Gauss-Jacobi in u = s^2 handles the (1-u)^beta endpoint weight
    k_rad = max(24, deg // 2 + 8)
    x, w = roots_jacobi(k_rad, beta, 0.0)
    u = (x + 1.0) / 2.0
    radii = np.sqrt(u)
    if p == int(p) and int(p) % 2 == 0:
        m_ang = _next_pow2(max(64, int(p) * deg // 2 + 2))
    else:
        m_ang = _next_pow2(max(1024, 2 * deg + 2))
    # f on each sampling circle via one FFT per radius
    ks = np.arange(deg + 1)
    vals = np.abs(
        np.fft.fft(f.coeffs[None, :] * radii[:, None] ** ks[None, :], n=m_ang, axis=1)
    )
    angular = np.mean(vals**p, axis=1) * 2.0 * np.pi
    integral = 2.0 ** (-beta - 2.0) * float(np.dot(w, angular))
    return float(integral ** (1.0 / p))


def norm(space: SpaceSpec, f: CoeffSeries) -> float:
    """Norm of a truncated series in the given space."""
    if space.family == "hardy":
        return _hardy_norm(space.p, f)
    if space.family == "seq":
        k = np.arange(len(f), dtype=float)
        weights = (k + 1.0) ** (-(space.alpha - 1.0))
        terms = np.abs(f.coeffs) * weights
        if space.p == np.inf:
            return float(np.max(terms))
        return float(np.sum(terms**space.p) ** (1.0 / space.p))
    return _bergman_norm(space, f)


# ---------------------------------------------------------------------------
# evaluation functionals
# ---------------------------------------------------------------------------


def eval_functional_norm(space: SpaceSpec, t: float) -> float:
    """Norm of f |-> f(t) on the space, 0 <= t < 1.

    Hilbert cases sum the kernel diagonal; hardy(p) uses the classical
    sharp value (1-t^2)^(-1/p); general sequence spaces use the Hoelder
    dual of the weighted coefficient norm.  Bergman with p != 2 is out.
    """
    t = float(t)
    if t < 0.0 or t >= 1.0:
        raise Divergence(f"evaluation norm needs 0 <= t < 1, got {t}")
    if space.family == "hardy":
        if space.p == np.inf:
            return 1.0
        return float((1.0 - t * t) ** (-1.0 / space.p))
    if space.is_hilbert:
        return float(np.sqrt(_kernel_diag_sum(space, t * t)))
    if space.family == "seq":
        q = np.inf if space.p == 1.0 else space.p / (space.p - 1.0)
        return float(_weighted_power_sum(space.alpha, t, q))
    raise UnsupportedSpace("evaluation norm for Bergman p != 2 is not implemented")


def _kernel_diag_sum(space: SpaceSpec, x: float) -> float:
    """sum_k kappa_k x^k for 0 <= x < 1, summed in blocks to _SERIES_TOL."""
    total = 0.0
    k0 = 0
    while True:
        ks = np.arange(k0, k0 + _SERIES_BLOCK, dtype=float)
        block = float(np.sum(kernel_diagonal(space, ks) * x**ks))
        total += block
        k0 += _SERIES_BLOCK
        if block <= _SERIES_TOL * max(total, 1.0) or x == 0.0:
            return total
        if k0 > _SERIES_KMAX:
            raise Divergence("kernel diagonal sum did not converge")


def _weighted_power_sum(alpha: float, t: float, q: float) -> float:
    """l^q norm of ((k+1)^(alpha-1) t^k)_k, q possibly inf."""
    if t == 0.0:
        return 1.0
    if q == np.inf:
        # terms rise then decay; peak index (alpha-1)/(-log t)
        k_peak = int(np.ceil((alpha - 1.0) / (-np.log(t)))) + 2
        ks = np.arange(0, k_peak + 2, dtype=float)
        return float(np.max((ks + 1.0) ** (alpha - 1.0) * t**ks))
    total = 0.0
    k0 = 0
    while True:
        ks = np.arange(k0, k0 + _SERIES_BLOCK, dtype=float)
        block = float(np.sum(((ks + 1.0) ** (alpha - 1.0) * t**ks) ** q))
        total += block
        k0 += _SERIES_BLOCK
        if block <= _SERIES_TOL * max(total, 1.0):
            return total ** (1.0 / q)
        if k0 > _SERIES_KMAX:
            raise Divergence("dual weight sum did not converge")


# ---------------------------------------------------------------------------
# Gram matrices and minimal-norm interpolation
# ---------------------------------------------------------------------------


def _falling(ks: np.ndarray, d: int) -> np.ndarray:
    """Falling factorial (k)_d = k (k-1) ... (k-d+1)."""
    out = np.ones_like(ks, dtype=float)
    for i in range(d):
        out *= ks - i
    return out


def _functional_block(funcs, ks: np.ndarray) -> np.ndarray:
    """P[i, j] = (k_j)_{d_i} lam_i^(k_j - d_i), zero where k_j < d_i."""
    P = np.zeros((len(funcs), ks.size), dtype=complex)
    for i, (lam, d) in enumerate(funcs):
        mask = ks >= d
        kk = ks[mask].astype(float)
        P[i, mask] = _falling(kk, d) * np.power(complex(lam), kk - d)
    return P


def gram_matrix(space: SpaceSpec, sigma: SigmaSet) -> np.ndarray:
    """Gram matrix of the evaluation (and derivative) functionals on sigma.

    Entry (i, j) is sum_k kappa_k (k)_{d_i} (k)_{d_j}
    lam_i^(k-d_i) conj(lam_j)^(k-d_j), the pairing of the Riesz
    representers; repeated points contribute derivative functionals in
    order of appearance.  Warns IllConditionedWarning when the spectrum
    spans more than 1e13.
    """
    if not space.is_hilbert:
        raise NotHilbert("Gram matrices need a Hilbert-case space")
    funcs = sigma.functionals()
    n = len(funcs)
    G = np.zeros((n, n), dtype=complex)
    max_d = max(d for _, d in funcs)
    k0 = 0
    block = max(_SERIES_BLOCK, 2 * max_d + 2)
    while True:
        ks = np.arange(k0, k0 + block)
        kap = kernel_diagonal(space, ks)
        P = _functional_block(funcs, ks)
        piece = (P * kap) @ P.conj().T
        G += piece
        contrib = float(np.linalg.norm(piece))
        k0 += block
        if k0 > 2 * max_d + 2 and contrib <= _SERIES_TOL * max(np.linalg.norm(G), 1.0):
            break
        if k0 > _SERIES_KMAX:
            raise Divergence("Gram series did not converge (r too close to 1?)")
    G = 0.5 * (G + G.conj().T)
    eig = np.linalg.eigvalsh(G)
    if eig[0] < _COND_FLOOR * eig[-1]:
        warnings.warn(
            f"Gram matrix nearly singular: eig range [{eig[0]:.3e}, {eig[-1]:.3e}]",
            IllConditionedWarning,
            stacklevel=2,
        )
    return G


@dataclass(frozen=True)
class MinNormResult:
    norm: float
    interpolant: CoeffSeries
    multipliers: np.ndarray


def _solve_hermitian(G: np.ndarray, a: np.ndarray) -> np.ndarray:
    try:
        return cho_solve(cho_factor(G, lower=True), a)
    except np.linalg.LinAlgError:
        pass
    except ValueError:
        pass
    # eigendecomposition fallback for near-singular Gram matrices
    w, V = np.linalg.eigh(G)
    w = np.where(w > _COND_FLOOR * max(w[-1], 0.0), w, np.inf)
    return V @ ((V.conj().T @ a) / w)


def min_norm_trace(space: SpaceSpec, sigma: SigmaSet, a) -> MinNormResult:
    """Minimal-norm element of the space with the prescribed jet on sigma.

    Solves G c = a and returns sqrt(Re <c, a>) together with the truncated
    representer combination sum_i c_i k_i.
    """
    a = np.asarray(a, dtype=complex)
    funcs = sigma.functionals()
    if a.shape != (len(funcs),):
        raise ValueError(f"trace vector must have length {len(funcs)}")
    G = gram_matrix(space, sigma)
    c = _solve_hermitian(G, a)
    norm_sq = float(np.real(np.vdot(c, a)))
    value = float(np.sqrt(max(norm_sq, 0.0)))

    coeffs: list[np.ndarray] = []
    max_d = max(d for _, d in funcs)
    total = 0.0
    k0 = 0
    block = max(_SERIES_BLOCK, 2 * max_d + 2)
    while True:
        ks = np.arange(k0, k0 + block)
        kap = kernel_diagonal(space, ks)
        P = _functional_block(funcs, ks)
        piece = kap * (P.conj().T @ c)
        coeffs.append(piece)
        contrib = float(np.linalg.norm(piece))
        total = float(np.hypot(total, contrib))
        k0 += block
        if k0 > 2 * max_d + 2 and contrib <= 1e-13 * max(total, 1e-300):
            break
        if k0 > _SERIES_KMAX:
            raise Divergence("representer series did not converge")
    interpolant = CoeffSeries(np.concatenate(coeffs)).trimmed(tol=0.0)
    return MinNormResult(value, interpolant, c)


def power_inequality_check(alpha: float, f: CoeffSeries) -> tuple[float, float]:
    """Evaluate both sides of the kernel power inequality.

    Returns (lhs, rhs) with lhs = ||f^(2 alpha - 1)||^2 in the weighted
    sequence space and rhs = (||f||_2^2)^(2 alpha - 1); lhs <= rhs for
    polynomials whenever 2 alpha - 1 is a positive integer.
    """
    m = 2.0 * alpha - 1.0
    m_int = int(round(m))
    if abs(m - m_int) > 1e-9 or m_int < 1:
        raise ValueError("2*alpha - 1 must be a positive integer")
    lhs = norm(seq_weighted(2.0, alpha), series_power(f, m_int)) ** 2
    rhs = float(np.sum(np.abs(f.coeffs) ** 2)) ** m_int
    return lhs, rhs
