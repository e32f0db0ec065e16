from fractions import Fraction as F

import pytest

from nilcalc.lp import InputError
from nilcalc.oracle import (CONVERGES, DIVERGES, OracleConfig,
                            adjoint_weighted_integral, orthant_exp_integral,
                            polydisk_mc, radial_power_integral)
from nilcalc.toric import power_product, pwl_min

G_23 = pwl_min([((2, 0), 0), ((0, 3), 0)])
G_M6 = pwl_min([((6, 0), 0), ((0, 6), 0)])
ZERO_2 = pwl_min([((0, 0), 0)])

FAST = OracleConfig(quadrature_points_per_axis=192, mc_samples=120_000)


def test_config_validation():
    with pytest.raises(InputError):
        OracleConfig(truncation_schedule=(10, 20))
    with pytest.raises(InputError):
        OracleConfig(truncation_schedule=(10, 10, 20))
    with pytest.raises(InputError):
        OracleConfig(convergence_ratio_threshold=0)
    with pytest.raises(InputError):
        OracleConfig(mc_samples=0)


def test_orthant_trivial_closed_form():
    g0 = pwl_min([((0,), 0)])
    v = orthant_exp_integral(g0, (1,), FAST)
    assert v.verdict == CONVERGES
    # integral of e^{-2x} over [0, inf) is 1/2
    assert abs(v.partial_values[-1][1] - 0.5) < 1e-3


def test_orthant_exact_agreement():
    assert orthant_exp_integral(G_23, (1, 1), FAST).verdict == DIVERGES
    assert orthant_exp_integral(G_23, (2, 1), FAST).verdict == CONVERGES


def test_orthant_monotone_partials():
    v = orthant_exp_integral(G_23, (2, 1), FAST)
    vals = [p for _, p in v.partial_values]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_weighted_integral_examples():
    # boundary case rescued by the 1/t_1^2 weight
    assert adjoint_weighted_integral(G_M6, (2, 4), 0, FAST).verdict == \
        CONVERGES
    # any eps > 0 tips the same integral into divergence
    assert adjoint_weighted_integral(G_M6, (2, 4), F(1, 10), FAST).verdict \
        == DIVERGES
    assert adjoint_weighted_integral(ZERO_2, (0, 1), 0, FAST).verdict == \
        CONVERGES


def test_polydisk_examples():
    assert polydisk_mc(ZERO_2, (0, 0), "plain", FAST).verdict == CONVERGES
    assert polydisk_mc(G_23, (0, 0), "plain", FAST).verdict == DIVERGES
    assert polydisk_mc(G_23, (1, 0), "plain", FAST).verdict == CONVERGES


def test_polydisk_agrees_with_orthant():
    for beta in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        A = tuple(b + 1 for b in beta)
        a = orthant_exp_integral(G_23, A, FAST).verdict
        b = polydisk_mc(G_23, beta, "plain", FAST).verdict
        assert a == b


def test_poincare_weight_matches_weighted_quadrature():
    # m^6 boundary member: both independent routes say Converges
    assert polydisk_mc(G_M6, (2, 3), "poincare_axis_1", FAST).verdict == \
        CONVERGES
    assert polydisk_mc(G_M6, (0, 5), "poincare_axis_1", FAST).verdict == \
        DIVERGES


def test_determinism():
    cfg = OracleConfig(mc_samples=50_000, seed=42)
    a = polydisk_mc(G_23, (1, 0), "plain", cfg)
    b = polydisk_mc(G_23, (1, 0), "plain", cfg)
    assert a == b
    assert orthant_exp_integral(G_23, (2, 1), cfg) == \
        orthant_exp_integral(G_23, (2, 1), cfg)


def test_power_product_oracle():
    g = power_product(2, (F(1, 2), F(1, 2)))
    assert orthant_exp_integral(g, (2, 2), FAST).verdict == CONVERGES
    assert orthant_exp_integral(g, (1, 1), FAST).verdict != CONVERGES


def test_radial_power_integral():
    assert radial_power_integral(F(5, 2), 2, FAST).verdict == CONVERGES
    assert radial_power_integral(F(5, 2), 1, FAST).verdict == DIVERGES
    v = radial_power_integral(F(5, 2), 2, FAST)
    # exact value of the 1-d integral is 1/2
    assert abs(v.partial_values[-1][1] - 0.5) < 1e-3


def test_input_validation():
    with pytest.raises(InputError):
        orthant_exp_integral(G_23, (1,), FAST)
    with pytest.raises(InputError):
        orthant_exp_integral(G_23, (-1, 1), FAST)
    with pytest.raises(InputError):
        adjoint_weighted_integral(G_23, (1, 1), -1, FAST)
    with pytest.raises(InputError):
        polydisk_mc(G_23, (F(1, 2), 0), "plain", FAST)
    with pytest.raises(InputError):
        polydisk_mc(G_23, (0, 0), "exotic", FAST)
