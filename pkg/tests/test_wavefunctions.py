"""Eigenfunctions, pair product, norms under the rho^tau measure, node counts."""

import dataclasses
import math

import numpy as np
import pytest

from xtcs import (Configuration, ModelParams, QuadratureError, ResolutionError,
                  ValidationError, count_nodes, default_quadrature, jastrow, laguerre,
                  manybody_groundstate, norm, radial_eigenfunction,
                  radial_inner_product)
from xtcs.quadrature import QuadratureSpec
from xtcs.solver import RadialGrid

from conftest import BATTERY_BASE, M_VALUES, make_params


def high_precision_phi(n, m, alpha, omega, rho):
    """50-digit recomputation of the extended radial eigenfunction."""
    from mpmath import binomial, exp, factorial, mp, mpf

    mp.dps = 50

    def lag(k, a, x):
        if k < 0:
            return mpf(0)
        return sum((-1) ** j * binomial(k + a, k - j) * x ** j / factorial(j)
                   for j in range(k + 1))

    a, w, r = mpf(str(alpha)), mpf(str(omega)), mpf(str(rho))
    g = w * r ** 2
    poly = lag(m, a, -g) * lag(n, a - 1, g) + lag(m, a - 1, -g) * lag(n - 1, a, g)
    return float(exp(-g / 2) * poly / lag(m, a - 1, -g))


def test_ground_state_conventional():
    p = ModelParams(2, 1.0, 1, 1.0)
    for rho in (0.0, 0.7, 2.0):
        assert radial_eigenfunction(0, p, rho) == pytest.approx(
            math.exp(-rho ** 2 / 2), rel=1e-15)


def test_m0_path_is_the_classical_expression():
    p = make_params((3, 1.5, 2, 0, 1.0), 0)
    rho = np.linspace(0.0, 6.0, 61)
    g = p.omega * rho ** 2
    for n in range(4):
        assert np.all(radial_eigenfunction(n, p, rho) == np.exp(-g / 2) * laguerre(n, p.alpha, g))


def test_x1_ground_state_value():
    # n = 0, m = 1, alpha = 1, omega = 1, rho = 1: |Phi| = e^{-1/2} (g+a+1)/(g+a)
    p = ModelParams(2, 1.0, 1, 1.0, ext_index=1)
    got = radial_eigenfunction(0, p, 1.0)
    assert abs(got) == pytest.approx(math.exp(-0.5) * 1.5, rel=1e-14)


def test_extended_value_against_high_precision():
    # n = 1, m = 2, alpha = 4, omega = 1, rho = 1.3
    p = ModelParams(4, 0.5, 3, 1.0, ext_index=2)
    want = high_precision_phi(1, 2, 4.0, 1.0, 1.3)
    assert want == pytest.approx(1.7557879576192834, rel=1e-15)
    assert radial_eigenfunction(1, p, 1.3) == pytest.approx(want, rel=1e-13)


def test_broken_denominator_variant_guarded():
    p = ModelParams(2, 1.0, 1, 1.0, ext_index=2)
    with pytest.raises(ValidationError):
        radial_eigenfunction(0, p, 1.0, x1_denominator="2g_plus_alpha")
    with pytest.raises(ValidationError):
        radial_eigenfunction(0, p, 1.0, x1_denominator="bogus")


def test_exponential_tail_decay():
    # |Phi_n| e^{+g/4} decreasing beyond the classical turning point
    for base in BATTERY_BASE:
        for m in (0, 2):
            p = make_params(base, m)
            for n in (0, 3):
                g_turn = 2 * n + p.alpha + 1
                rho = np.sqrt(np.linspace(2 * g_turn + 4, 4 * g_turn + 30, 80) / p.omega)
                damped = np.abs(radial_eigenfunction(n, p, rho)) * np.exp(p.omega * rho ** 2 / 4)
                assert np.all(np.diff(damped) < 0)


# -- pair product and composite ground state ----------------------------------

def test_jastrow_examples():
    assert jastrow(Configuration((0.0, 1.0)), ModelParams(2, 2.0, 1, 1.0)) == 1.0
    c = Configuration((-1.0, 0.0, 2.0))
    assert jastrow(c, ModelParams(3, 1.0, 1, 1.0)) == pytest.approx(2.0, rel=1e-15)
    assert jastrow(c, ModelParams(3, 1.0, 2, 1.0)) == pytest.approx(6.0, rel=1e-15)


def test_groundstate_composition():
    p = ModelParams(2, 1.0, 1, 1.0)
    c = Configuration((-0.5, 0.5))
    assert manybody_groundstate(c, p) == pytest.approx(math.exp(-0.25), rel=1e-14)


def test_groundstate_m_dependence_is_radial_only():
    c = Configuration((-0.6, 0.1, 0.9))
    p0 = ModelParams(3, 1.5, 2, 1.0, ext_index=0)
    p2 = dataclasses.replace(p0, ext_index=2)
    ratio = manybody_groundstate(c, p2) / manybody_groundstate(c, p0)
    want = radial_eigenfunction(0, p2, c.hyperradius) / radial_eigenfunction(0, p0, c.hyperradius)
    assert ratio == pytest.approx(want, rel=1e-14)


def test_groundstate_not_translation_invariant():
    p = ModelParams(2, 1.0, 1, 1.0)
    a = manybody_groundstate(Configuration((-0.5, 0.5)), p)
    b = manybody_groundstate(Configuration((0.5, 1.5)), p)
    assert a != b


def test_groundstate_requires_s0():
    p = make_params((3, 2.0, 1, 1, 1.0), 0)
    with pytest.raises(ValidationError):
        manybody_groundstate(Configuration((-1.0, 0.0, 1.0)), p)


# -- norms --------------------------------------------------------------------

def test_norm_closed_form():
    # m = 0, n = 0: Gamma(alpha+1) / (2 omega^(alpha+1))
    for base in BATTERY_BASE:
        p = make_params(base, 0)
        want = math.gamma(p.alpha + 1) / (2 * p.omega ** (p.alpha + 1))
        assert norm(0, p) == pytest.approx(want, rel=1e-13)


def test_norm_positive_and_panel_converged():
    for base in BATTERY_BASE[:3]:
        for m in M_VALUES:
            p = make_params(base, m)
            quad = default_quadrature(p, 2)
            val = norm(2, p, quad)
            assert val > 0
            doubled = norm(2, p, quad.with_panels(2 * quad.n_panels))
            assert abs(doubled - val) <= 1e-10 * val


def test_norm_rejects_short_domain():
    p = ModelParams(2, 1.0, 1, 1.0)
    with pytest.raises(ValidationError):
        norm(3, p, QuadratureSpec(rho_max=2.0, omega=p.omega))


def test_norm_tail_error_reported():
    p = ModelParams(3, 2.0, 1, 1.0, degree=1)  # tau = 12: heavy measure growth
    g_need = 2 * (0 + p.alpha + 1) + 20
    quad = QuadratureSpec(rho_max=float(np.sqrt(g_need / p.omega)), omega=p.omega, n_panels=12)
    with pytest.raises(QuadratureError):
        norm(0, p, quad)


def test_orthogonality_m0_classical():
    p = make_params((3, 1.0, 1, 0, 1.0), 0)
    quad = default_quadrature(p, 4)
    norms = [norm(n, p, quad) for n in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            inner = radial_inner_product(i, j, p, quad)
            assert abs(inner) / math.sqrt(norms[i] * norms[j]) <= 1e-8


# -- node counts ----------------------------------------------------------------

def test_ground_state_nodeless():
    assert count_nodes(0, ModelParams(2, 1.0, 1, 1.0)) == 0


def test_node_counts_match_level():
    for base in BATTERY_BASE:
        for m in M_VALUES:
            p = make_params(base, m)
            for n in range(5):
                assert count_nodes(n, p) == n


def test_node_count_rejects_coarse_grid():
    p = ModelParams(2, 1.0, 1, 1.0)
    with pytest.raises(ResolutionError):
        count_nodes(2, p, RadialGrid(0.05, 5.0, 200))
