"""Many-body local-energy oracle: constancy, negative controls, determinism."""

import dataclasses

import numpy as np
import pytest

from xtcs import (Configuration, ModelParams, ValidationError, constancy_scan,
                  energy_level, local_energy, sample_configurations)

from conftest import BATTERY_BASE, M_VALUES, make_params


def test_two_particle_ground_state_energy():
    p = ModelParams(2, 1.0, 1, 1.0)
    c = Configuration((-0.4, 0.3))
    assert local_energy(c, p) == pytest.approx(2.0, abs=1e-6)


def test_two_particle_extended_same_energy():
    p = ModelParams(2, 1.0, 1, 1.0, ext_index=1)
    c = Configuration((-0.4, 0.3))
    assert local_energy(c, p) == pytest.approx(2.0, abs=1e-6)


def test_three_particle_nearest_neighbor_case():
    # exercises the three-body term directly
    p = ModelParams(3, 1.0, 1, 1.0)  # alpha = 2.5, E0 = 3.5
    c = Configuration((-1.0, 0.1, 1.3))
    assert local_energy(c, p) == pytest.approx(energy_level(0, p), abs=1e-6)


def test_local_energy_deterministic():
    p = ModelParams(3, 1.5, 2, 1.0, ext_index=2)
    c = Configuration((-0.9, 0.05, 1.1))
    assert local_energy(c, p) == local_energy(c, p)


def test_separation_guard():
    p = ModelParams(2, 1.0, 1, 1.0)
    c = Configuration((0.0, 0.005))  # above eps_sep but below 10 * fd_step
    with pytest.raises(ValidationError, match="fd_step"):
        local_energy(c, p)


def test_s_nonzero_rejected():
    p = make_params((3, 2.0, 1, 1, 1.0), 0)
    with pytest.raises(ValidationError):
        local_energy(Configuration((-1.0, 0.0, 1.0)), p)


def test_sampler_is_seeded_and_separated():
    p = ModelParams(4, 0.5, 3, 2.0)
    a = sample_configurations(p, 25, seed=9)
    b = sample_configurations(p, 25, seed=9)
    assert [c.positions for c in a] == [c.positions for c in b]
    for c in a:
        assert np.min(np.diff(c.positions)) >= 10 * 1e-3


def test_constancy_across_battery():
    for base in BATTERY_BASE:
        if base[3] != 0:
            continue  # s = 0 sector only
        for m in M_VALUES:
            p = make_params(base, m)
            stats = constancy_scan(p, n_samples=60, seed=3)
            assert stats.relative_spread <= 1e-5, (base, m, stats)
            assert stats.relative_mean_error <= 1e-5, (base, m, stats)
            assert stats.passed()


def test_means_agree_across_m():
    base = BATTERY_BASE[1]
    means = [constancy_scan(make_params(base, m), n_samples=40, seed=5).mean
             for m in (0, 2)]
    assert abs(means[0] - means[1]) <= 1e-6 * abs(means[0])


def test_negative_control_perturbed_wavefunction():
    p = ModelParams(3, 1.0, 1, 1.0, ext_index=2)
    wrong = dataclasses.replace(p, coupling=p.coupling + 0.1)
    stats = constancy_scan(p, n_samples=60, seed=3, wavefunction_params=wrong)
    assert stats.relative_spread > 1e-2


def test_negative_control_scaled_extension():
    p = ModelParams(3, 1.0, 1, 1.0, ext_index=2)
    stats = constancy_scan(p, n_samples=60, seed=3, v_new_scale=1.01)
    assert not stats.passed()


def test_scan_json_schema():
    stats = constancy_scan(ModelParams(2, 1.0, 1, 1.0), n_samples=10, seed=2)
    doc = stats.to_json_dict()
    assert set(doc) == {"params", "n_samples", "seed", "mean", "stddev",
                        "max_dev", "E_analytic", "pass"}
    assert doc["pass"] is True


def test_scan_deterministic_for_seed():
    p = ModelParams(3, 1.5, 2, 1.0, ext_index=1)
    s1 = constancy_scan(p, n_samples=20, seed=11)
    s2 = constancy_scan(p, n_samples=20, seed=11)
    assert (s1.mean, s1.stddev, s1.max_dev) == (s2.mean, s2.stddev, s2.max_dev)
