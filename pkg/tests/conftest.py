"""Shared fixtures: prime-power tables, zero sets, hypothesis profile."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from prime_bias_lab import characters, sieve, zeros

settings.register_profile(
    "lab",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lab")


@pytest.fixture(scope="session")
def table_e4() -> sieve.MangoldtTable:
    return sieve.build_mangoldt_table(10**4)


@pytest.fixture(scope="session")
def table_e6() -> sieve.MangoldtTable:
    return sieve.build_mangoldt_table(10**6)


@pytest.fixture(scope="session")
def table_e7() -> sieve.MangoldtTable:
    """Covers x = 1e7 directly and x = 1e6 for the shifted sums (x * e^2)."""
    return sieve.build_mangoldt_table(10**7)


@pytest.fixture(scope="session")
def zeros2000() -> zeros.ZeroSet:
    return zeros.load_bundled_zeta_zeros()


@pytest.fixture(scope="session")
def chi4_zeros_t500() -> zeros.ZeroSet:
    return zeros.compute_dirichlet_zeros(characters.chi4(), 500.0)


@pytest.fixture(scope="session")
def sigma0_e6() -> np.ndarray:
    return sieve.divisor_count_table(10**6)
