from fractions import Fraction

import pytest

from csndss import RepairParams, SystemParams


@pytest.fixture
def fig5_system():
    return SystemParams(n=12, k=8, L=3, R=4, S=0)


@pytest.fixture
def fig5_repair():
    return RepairParams(alpha=4, d_I=3, beta_I=4, d_C=8, beta_C=2)


@pytest.fixture
def fig6_system():
    return SystemParams(n=6, k=4, L=2, R=3, S=0)


@pytest.fixture
def fig6_repair():
    return RepairParams(alpha=2, d_I=2, beta_I=2, d_C=3, beta_C=1)


def small_systems(max_n: int = 8, max_k: int = 5):
    """Deterministic list of valid small systems for exhaustive sweeps."""
    out = []
    for L in range(1, max_n + 1):
        for R in range(1, max_n + 1):
            for S in range(0, max_n + 1):
                n = L * R + S
                if not 2 <= n <= max_n:
                    continue
                for k in range(2, min(max_k, n - 1) + 1):
                    out.append(SystemParams(n=n, k=k, L=L, R=R, S=S))
    return out


def unclipped_alpha(weights) -> Fraction:
    """An alpha above every part weight, so no clipping occurs."""
    return sum(weights, start=Fraction(0)) + 1
