import numpy as np
import pytest

from discinterp import CoeffSeries, SigmaSet


def random_sigma(rng, n_max=8, r_max=0.9, n=None, distinct=False, min_sep=5e-2):
    """Random node multiset with max modulus <= r_max."""
    count = int(n) if n is not None else int(rng.integers(1, n_max + 1))
    while True:
        moduli = r_max * np.sqrt(rng.uniform(size=count))
        angles = rng.uniform(0.0, 2.0 * np.pi, size=count)
        sigma = SigmaSet(tuple(moduli * np.exp(1j * angles)))
        if not distinct or sigma.min_separation() >= min_sep:
            return sigma


def random_poly(rng, deg, scale=1.0):
    coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    return CoeffSeries(scale * coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
