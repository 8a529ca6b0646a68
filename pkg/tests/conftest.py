"""Shared fixtures: the standard parameter battery used across the suite."""

import pytest

from xtcs import ModelParams

# (N, lambda, r, s, omega); crossed with m in {0,1,2,3} where relevant
BATTERY_BASE = [
    (2, 1.0, 1, 0, 1.0),
    (3, 1.0, 1, 0, 1.0),
    (3, 1.5, 2, 0, 1.0),
    (4, 0.5, 3, 0, 2.0),
    (3, 2.0, 1, 1, 1.0),
]

M_VALUES = (0, 1, 2, 3)


def make_params(base, m):
    n, lam, r, s, w = base
    return ModelParams(n_particles=n, coupling=lam, trunc_range=r,
                       omega=w, degree=s, ext_index=m)


def battery():
    return [make_params(base, m) for base in BATTERY_BASE for m in M_VALUES]


@pytest.fixture(scope="session")
def battery_params():
    return battery()
