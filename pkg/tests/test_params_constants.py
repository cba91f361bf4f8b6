import math

import numpy as np
import pytest

from src.params_constants import (
    INVERSE_RADIUS_THRESHOLD,
    PSEUDONORM_LOWER_BOUND,
    InequalityParams,
    ParameterRegimeError,
    alpha_condition_for_divergence,
    comparison_bound_M,
    constants_report,
    constants_table,
    divergence_bound_M,
    eq20_bound,
    eta_window,
    gamma_star,
    inverse_radii,
    kappa_n,
    kappa_n_quadrature,
    ode_bound_M,
    pseudo_disk,
    pseudohyperbolic_distance,
    pseudonorm_bounds,
    salpha,
    salpha_branches,
    schwarz_pick_radius,
)


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (0.5, 0.25),
        (0.75, 0.0225),
        (2.0 / 3.0, (2.0 / 9.0) ** 1.5),
    ],
)
def test_salpha_values(alpha, expected):
    assert salpha(alpha) == pytest.approx(expected, rel=1e-12)


def test_salpha_branches_meet_at_two_thirds():
    first, second = salpha_branches(2.0 / 3.0)
    assert first == pytest.approx(second, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.6, 2.0 / 3.0, 0.7, 0.9])
def test_eq20_bound_at_gamma_star_is_salpha(alpha):
    assert eq20_bound(alpha, gamma_star(alpha)) == pytest.approx(salpha(alpha), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_larger_gamma_gives_smaller_bound(alpha):
    assert eq20_bound(alpha, gamma_star(alpha) + 1.0) < salpha(alpha)


def test_eq20_bound_rejects_small_gamma():
    with pytest.raises(ParameterRegimeError, match="gamma >="):
        eq20_bound(0.75, 2.0)


@pytest.mark.parametrize("alpha, expected", [(0.25, 2.0), (0.5, 2.0), (0.75, 2.5), (0.9, 5.5)])
def test_gamma_star(alpha, expected):
    assert gamma_star(alpha) == pytest.approx(expected)


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 1.5])
def test_alpha_outside_unit_interval_is_rejected(alpha):
    with pytest.raises(ParameterRegimeError) as error:
        salpha(alpha)
    assert error.value.constraint == "0 < alpha < 1"


@pytest.mark.parametrize(
    "B, epsilon, n, expected",
    [
        (1.0, 0.0, 2, 0.25),
        (1.0, 0.0, 1, 0.5),
        (1.0, 0.5, 2, 1.0 / 256.0),
        (1.0, 0.5, 1, 1.0 / 144.0),
    ],
)
def test_comparison_bound(B, epsilon, n, expected):
    p = InequalityParams(B=B, epsilon=epsilon, n=n)
    assert comparison_bound_M(p) == pytest.approx(expected, rel=1e-12)


def test_comparison_bound_needs_nonnegative_epsilon():
    with pytest.raises(ParameterRegimeError):
        comparison_bound_M(InequalityParams(epsilon=-0.5))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kappa_n_matches_quadrature(n):
    assert kappa_n(n) == pytest.approx(1.0 / (n * (n + 1)))
    assert kappa_n_quadrature(n) == pytest.approx(kappa_n(n), rel=1e-10)


def test_divergence_bound():
    assert divergence_bound_M(InequalityParams(B=1.0, n=2)) == pytest.approx(1.0 / 6.0)
    with pytest.raises(ParameterRegimeError, match="epsilon <= C"):
        divergence_bound_M(InequalityParams(epsilon=0.5, C=0.0))


@pytest.mark.parametrize(
    "B, C, epsilon, expected",
    [
        (2.0, 0.0, 0.0, 1.0),
        (2.0, 0.5, 0.5, 0.25),
        (2.0, -1.0, -1.0, math.sqrt(2.0)),
    ],
)
def test_ode_bound(B, C, epsilon, expected):
    p = InequalityParams(B=B, C=C, epsilon=epsilon, n=1)
    assert ode_bound_M(p) == pytest.approx(expected, rel=1e-12)


def test_alpha_condition_for_divergence():
    assert alpha_condition_for_divergence(0.5)
    assert alpha_condition_for_divergence(2.0 / 3.0)
    assert not alpha_condition_for_divergence(0.75)


def test_inverse_radii_at_two():
    eta, s = inverse_radii(2.0)
    assert eta == pytest.approx(0.75)
    assert s == pytest.approx(0.75)
    low, high = eta_window(2.0)
    assert (low, high) == pytest.approx((0.5, 1.0))
    assert low < eta < high


def test_inverse_radii_cover_half_disk():
    eta, s = inverse_radii(1.9)
    assert eta == pytest.approx(0.7125)
    assert s > 0.5
    assert schwarz_pick_radius(1.9 / 2.0, eta) == pytest.approx(s)


@pytest.mark.parametrize("r", [1.0, INVERSE_RADIUS_THRESHOLD, 2.1])
def test_inverse_radii_regime(r):
    with pytest.raises(ParameterRegimeError):
        inverse_radii(r)


def test_pseudo_disk_and_distance():
    center, radius = pseudo_disk(0j, 0.5)
    assert center == 0j
    assert radius == pytest.approx(0.5)
    assert pseudohyperbolic_distance(0j, 0.5) == pytest.approx(0.5)
    center, radius = pseudo_disk(0.5 + 0j, 0.5)
    # The pseudo-hyperbolic circle passes through the points at distance 0.5 from 0.5
    for z in (center + radius, center - radius):
        assert pseudohyperbolic_distance(z, 0.5 + 0j) == pytest.approx(0.5)


def test_pseudonorm_bounds():
    lower, upper = pseudonorm_bounds()
    assert lower == pytest.approx(3.0 / (4.0 * math.sqrt(2.0)))
    assert lower == PSEUDONORM_LOWER_BOUND
    assert upper == 0.5
    assert lower > upper


def test_inequality_params_defaults_and_validation():
    p = InequalityParams(alpha=0.75)
    assert p.gamma == pytest.approx(2.5)
    with pytest.raises(ParameterRegimeError):
        InequalityParams(n=0)
    with pytest.raises(ParameterRegimeError):
        InequalityParams(B=0.0)
    with pytest.raises(ParameterRegimeError):
        InequalityParams(epsilon=1.0)


def test_constants_report_notes_regime_violations():
    report = constants_report(InequalityParams(epsilon=0.5, C=0.0), r=1.8)
    assert report.divergence_M is None
    assert report.ode_M is None
    assert report.comparison_M is not None
    assert report.eta is None
    assert any(note.startswith("divergence_bound_M") for note in report.notes)
    assert any(note.startswith("inverse_radii") for note in report.notes)


def test_constants_table_shape():
    table = constants_table(r=1.9)
    assert len(table) == 12
    assert {"salpha", "gamma_star", "eq20_bound", "kappa_n", "eta", "s"} <= set(table.columns)
    assert np.allclose(table["eq20_bound"], table["salpha"])
