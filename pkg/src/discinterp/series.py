"""Truncated Taylor series on the unit disc and Blaschke arithmetic.

A series is its coefficient vector c_0..c_N; all operations are pure and
return new objects.  Compositions with disc automorphisms are recovered by
sampling on a circle of radius rho < 1 and inverting the DFT with a radius
correction, so the only approximation anywhere is a controlled truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.signal import lfilter

from .errors import PoleOnDomain, TruncationError

__all__ = [
    "CoeffSeries",
    "SigmaSet",
    "eval_series",
    "blaschke_factor",
    "blaschke_eval",
    "blaschke_coeffs",
    "geometric_coeffs",
    "compose_with_blaschke",
    "hadamard_product",
    "series_product",
    "series_power",
    "dirichlet_kernel",
    "fejer_kernel",
    "derivative",
    "jet_values",
    "circle_values",
]

#: default truncation degree for adaptive compositions
TRUNC_DEFAULT = 1024
#: hard cap on adaptive truncation degrees
TRUNC_MAX = 1 << 17
#: sampling-radius floor; rho = (1 + max(|lambda|, this)) / 2
DECAY_RADIUS = 0.9


class CoeffSeries:
    """Finite Taylor series sum_k c_k z^k with immutable coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        arr = np.asarray(coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d sequence")
        arr = arr.copy()
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __call__(self, z):
        return eval_series(self, z)

    def derivative(self) -> "CoeffSeries":
        return derivative(self)

    def trimmed(self, tol: float = 0.0) -> "CoeffSeries":
        """Drop trailing coefficients of magnitude <= tol (keeps c_0)."""
        mags = np.abs(self.coeffs)
        keep = np.nonzero(mags > tol)[0]
        last = keep[-1] if keep.size else 0
        return CoeffSeries(self.coeffs[: last + 1])

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=complex)
        out[: min(length, self.coeffs.size)] = self.coeffs[:length]
        return out

    def __repr__(self) -> str:
        head = np.array2string(self.coeffs[:4], precision=6)
        return f"CoeffSeries(degree={self.degree}, coeffs={head}...)"


def eval_series(f: CoeffSeries, z) -> complex | np.ndarray:
    """Evaluate f at z (scalar or array) by Horner summation."""
    zs = np.asarray(z, dtype=complex)
    acc = np.zeros_like(zs)
    for c in f.coeffs[::-1]:
        acc = acc * zs + c
    if np.isscalar(z) or zs.ndim == 0:
        return complex(acc)
    return acc


def circle_values(f: CoeffSeries, m: int) -> np.ndarray:
    """Values of f on the m-point uniform grid of the unit circle (via FFT)."""
    return np.fft.fft(f.padded(m))


def blaschke_factor(lam: complex, z):
    """b_lam(z) = (lam - z) / (1 - conj(lam) z)."""
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise PoleOnDomain(f"Blaschke zero |{lam}| >= 1")
    zs = np.asarray(z, dtype=complex)
    out = (lam - zs) / (1.0 - np.conj(lam) * zs)
    if np.isscalar(z) or zs.ndim == 0:
        return complex(out)
    return out


def blaschke_eval(zeros: Sequence[complex], z):
    """Product of Blaschke factors with the given zeros, evaluated at z."""
    zs = np.asarray(z, dtype=complex)
    out = np.ones_like(zs)
    for lam in zeros:
        out = out * blaschke_factor(lam, zs)
    if np.isscalar(z) or zs.ndim == 0:
        return complex(out)
    return out


def geometric_coeffs(a: complex, n_trunc: int) -> CoeffSeries:
    """Taylor coefficients of 1 / (1 - a z) up to degree n_trunc."""
    return CoeffSeries(np.power(complex(a), np.arange(n_trunc + 1)))


def _mul_linear(coeffs: np.ndarray, lam: complex) -> np.ndarray:
    """Multiply a coefficient vector by (lam - z), same length."""
    out = lam * coeffs.astype(complex)
    out[1:] -= coeffs[:-1]
    return out


def _div_geometric(coeffs: np.ndarray, a: complex) -> np.ndarray:
    """Multiply a coefficient vector by 1 / (1 - a z), same length."""
    if a == 0:
        return coeffs.astype(complex)
    # recurrence out_k = c_k + a * out_{k-1}
    return lfilter([1.0], [1.0, -complex(a)], coeffs.astype(complex))


def blaschke_coeffs(zeros: Sequence[complex], n_trunc: int) -> CoeffSeries:
    """Truncated Taylor series of the Blaschke product with the given zeros."""
    coeffs = np.zeros(n_trunc + 1, dtype=complex)
    coeffs[0] = 1.0
    for lam in zeros:
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise PoleOnDomain(f"Blaschke zero |{lam}| >= 1")
        coeffs = _div_geometric(_mul_linear(coeffs, lam), np.conj(lam))
    return CoeffSeries(coeffs)


def _next_pow2(n: int) -> int:
    m = 1
    while m < n:
        m <<= 1
    return m


#: cap on the 1/rho^k roundoff amplification of the radius correction
_RHO_AMP = 1e3
_EPS = 2.3e-16


def compose_with_blaschke(
    f: CoeffSeries,
    lam: complex,
    n_out: int | None = None,
    tol: float = 1e-12,
) -> CoeffSeries:
    """Taylor coefficients of f(b_lam(z)) up to degree n_out.

    Samples f(b_lam(.)) on an M-point circle of radius rho < 1 and inverts
    the DFT with the 1/rho^k correction.  rho starts at
    (1 + max(|lam|, DECAY_RADIUS)) / 2 but is pushed toward 1 for long
    truncations so the correction never amplifies roundoff by more than
    _RHO_AMP; the grid size M is enlarged until the geometric aliasing
    bound max|f| * rho^(M - n_out) sits at the noise floor.  Recovered
    coefficients below that floor are clipped to zero.

    With n_out=None the degree starts at TRUNC_DEFAULT and doubles until
    the tail (top half) carries less than tol of the coefficient mass.
    """
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise PoleOnDomain(f"Blaschke zero |{lam}| >= 1")

    adaptive = n_out is None
    n_cur = TRUNC_DEFAULT if adaptive else int(n_out)
    if n_cur < 0:
        raise ValueError("n_out must be nonnegative")

    scale = float(np.sum(np.abs(f.coeffs)))  # bounds max|f| on the closed disc
    if scale == 0.0:
        return CoeffSeries(np.zeros(n_cur + 1))

    while True:
        rho = max(
            0.5 * (1.0 + max(abs(lam), DECAY_RADIUS)),
            _RHO_AMP ** (-1.0 / max(n_cur, 1)),
        )
        extra = int(np.ceil(np.log(_EPS) / np.log(rho)))
        m = _next_pow2(max(8 * (n_cur + 1), n_cur + 1 + extra, 64))
        grid = rho * np.exp(2j * np.pi * np.arange(m) / m)
        vals = eval_series(f, blaschke_eval([lam], grid))
        hatted = np.fft.fft(vals) / m
        ks = np.arange(n_cur + 1)
        correction = rho**ks
        coeffs = hatted[: n_cur + 1] / correction
        floor = 64.0 * _EPS * scale / correction
        coeffs[np.abs(coeffs) < floor] = 0.0

        if not adaptive:
            return CoeffSeries(coeffs)

        head = np.linalg.norm(coeffs[: (n_cur + 1) // 2])
        tail = np.linalg.norm(coeffs[(n_cur + 1) // 2 :])
        if tail <= max(tol, 1e-12) * max(head, 1e-300):
            return CoeffSeries(coeffs).trimmed(tol=0.0)
        n_cur *= 2
        if n_cur > TRUNC_MAX:
            raise TruncationError(
                f"composition with b_{lam} does not reach tail tolerance "
                f"{tol} below degree {TRUNC_MAX}"
            )


def hadamard_product(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Coefficientwise product; length is the shorter of the two."""
    n = min(len(f), len(g))
    return CoeffSeries(f.coeffs[:n] * g.coeffs[:n])


def series_product(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """Full polynomial product (convolution of coefficients)."""
    return CoeffSeries(np.convolve(f.coeffs, g.coeffs))


def series_power(f: CoeffSeries, m: int) -> CoeffSeries:
    """f**m by repeated squaring on coefficient vectors."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    result = np.array([1.0 + 0j])
    base = f.coeffs
    e = m
    while e > 0:
        if e & 1:
            result = np.convolve(result, base)
        e >>= 1
        if e:
            base = np.convolve(base, base)
    return CoeffSeries(result)


def dirichlet_kernel(n: int) -> CoeffSeries:
    """1 + z + ... + z^(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return CoeffSeries(np.ones(n))


def fejer_kernel(n: int) -> CoeffSeries:
    """Analytic-part Fejer kernel: coefficients (1 - k/n) for k < n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return CoeffSeries(1.0 - np.arange(n) / n)


def derivative(f: CoeffSeries) -> CoeffSeries:
    """Coefficients of f', one degree lower."""
    if len(f) == 1:
        return CoeffSeries([0.0])
    ks = np.arange(1, len(f))
    return CoeffSeries(f.coeffs[1:] * ks)


@dataclass(frozen=True)
class SigmaSet:
    """Finite multiset of interpolation points in the open unit disc.

    The ordering is the caller's and is preserved; repeated points are
    interpreted as derivative (jet) conditions in order of appearance.
    """

    points: tuple[complex, ...]

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        if not pts:
            raise ValueError("sigma must contain at least one point")
        for p in pts:
            if abs(p) >= 1.0:
                raise PoleOnDomain(f"sigma point |{p}| >= 1")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def r(self) -> float:
        return max(abs(p) for p in self.points)

    def functionals(self) -> tuple[tuple[complex, int], ...]:
        """(point, derivative order) for each entry, in input order."""
        seen: dict[complex, int] = {}
        out = []
        for p in self.points:
            d = seen.get(p, 0)
            out.append((p, d))
            seen[p] = d + 1
        return tuple(out)

    def groups(self) -> tuple[tuple[complex, int], ...]:
        """(point, multiplicity) in first-occurrence order."""
        mult: dict[complex, int] = {}
        order = []
        for p in self.points:
            if p not in mult:
                order.append(p)
            mult[p] = mult.get(p, 0) + 1
        return tuple((p, mult[p]) for p in order)

    def min_separation(self) -> float:
        pts = self.points
        if len(pts) == 1:
            return np.inf
        return min(
            abs(pts[i] - pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))
        )

    def is_distinct(self, sep: float = 1e-10) -> bool:
        return self.min_separation() >= sep

    def single_point(self) -> complex | None:
        """The common point if all entries coincide exactly, else None."""
        first = self.points[0]
        return first if all(p == first for p in self.points) else None

    def rotated(self, theta: float) -> "SigmaSet":
        w = np.exp(1j * theta)
        return SigmaSet(tuple(w * p for p in self.points))


def jet_values(f: CoeffSeries, sigma: SigmaSet) -> np.ndarray:
    """Jet of f on sigma: f^(d)(lam) for each (lam, d) functional."""
    max_order = max(d for _, d in sigma.functionals())
    derivs = [f]
    for _ in range(max_order):
        derivs.append(derivs[-1].derivative())
    return np.array([eval_series(derivs[d], lam) for lam, d in sigma.functionals()])
