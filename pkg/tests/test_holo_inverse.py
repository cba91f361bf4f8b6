import numpy as np
import pytest

from src.holo_inverse import (
    ContourError,
    ContourSpec,
    OutsideGuaranteedRangeError,
    PowerSeries,
    QuantitativeInverse,
    closed_disk_samples,
    injective_inverse,
    lemma33_inverse,
    newton_inverse,
    schwarz_pick_lower,
    winding_certificate,
    winding_zero_count,
)
from src.params_constants import ParameterRegimeError


def test_power_series_evaluation_and_algebra():
    f = PowerSeries([1.0, 2.0, 3.0])
    assert f(2.0) == pytest.approx(17.0)
    assert f.degree == 2
    assert np.allclose(f.derivative().coefficients, [2.0, 6.0])
    assert np.allclose((f + 1.0).coefficients, [2.0, 2.0, 3.0])
    assert np.allclose((2.0 * f).coefficients, [2.0, 4.0, 6.0])
    square = PowerSeries([0.0, 0.0, 1.0])
    assert np.allclose(square.compose(PowerSeries([1.0, 1.0])).coefficients, [1.0, 2.0, 1.0])
    assert np.allclose(f.scale_argument(0.5).coefficients, [1.0, 1.0, 0.75])


def test_reversion_by_lagrange_inversion():
    f = PowerSeries([0.0, 1.0, 1.0])
    inverse = f.reversion(4)
    assert np.allclose(inverse.coefficients, [0.0, 1.0, -1.0, 2.0, -5.0])
    w = 1e-3
    assert f(inverse(w)) == pytest.approx(w, abs=1e-12)


def test_reversion_needs_a_simple_zero_at_the_origin():
    with pytest.raises(ParameterRegimeError):
        PowerSeries([1.0, 1.0]).reversion(3)
    with pytest.raises(ParameterRegimeError):
        PowerSeries([0.0, 0.0, 1.0]).reversion(3)


@pytest.mark.parametrize(
    "roots, radius, expected",
    [
        ([0.1, 0.5, 2.0], 1.0, 2),
        ([0.1, 0.5, 2.0], 0.3, 1),
        ([0.5j, -0.5j, 0.2 + 0.2j], 0.8, 3),
        ([3.0], 1.0, 0),
    ],
)
def test_winding_zero_count(roots, radius, expected):
    f = PowerSeries.from_roots(roots)
    assert winding_zero_count(f, ContourSpec(0j, radius)) == expected


def test_double_root_counts_twice():
    f = PowerSeries.from_roots([0.2, 0.2])
    certificate = winding_certificate(f, ContourSpec(0j, 0.5))
    assert certificate.count == 2
    assert certificate.raw_value == pytest.approx(2.0, abs=1e-8)


def test_root_on_the_contour_is_rejected():
    with pytest.raises(ContourError):
        winding_zero_count(PowerSeries.from_roots([1.0]), ContourSpec(0j, 1.0))


def test_contour_spec_validation():
    with pytest.raises(ParameterRegimeError):
        ContourSpec(0j, 1.0, 16)
    with pytest.raises(ParameterRegimeError):
        ContourSpec(0j, -1.0)


@pytest.mark.parametrize(
    "coefficients, delta, eta",
    [
        ([0.0, 0.95], 0.95, 0.7125),
        ([0.0, 0.5, 0.25], 0.5, 0.25),
        ([0.0, 0.95, 0.0095], 0.95, 0.7125),
    ],
)
def test_schwarz_pick_lower_bounds(coefficients, delta, eta):
    report = schwarz_pick_lower(PowerSeries(coefficients), delta, eta)
    assert report.passed
    assert report.details["linear_margin"] > 0


def test_schwarz_pick_rejects_broken_hypotheses():
    with pytest.raises(ParameterRegimeError, match="delta"):
        schwarz_pick_lower(PowerSeries([0.0, 0.95]), 0.5, 0.25)
    with pytest.raises(ParameterRegimeError, match="f\\(0\\) = 0"):
        schwarz_pick_lower(PowerSeries([0.1, 0.5]), 0.5, 0.25)
    with pytest.raises(ParameterRegimeError, match="D_1 into D_1"):
        schwarz_pick_lower(PowerSeries([0.0, 0.5, 0.9]), 0.5, 0.25)


def test_newton_inverse_of_a_quadratic():
    f = PowerSeries([0.0, 0.5, 0.25])
    z = newton_inverse(f, [0.05, -0.03j])
    assert np.allclose(f(z), [0.05, -0.03j], atol=1e-14)
    assert z[0] == pytest.approx(-1.0 + np.sqrt(1.2))


def test_injective_inverse_is_certified():
    f = PowerSeries([0.0, 0.5, 0.25])
    psi = injective_inverse(f, 0.5, 0.25)
    assert psi.s == pytest.approx(0.25 * 0.25 / 0.875)
    z = psi(0.05)
    assert abs(complex(f(z)) - 0.05) < 1e-12
    assert abs(z) < psi.eta
    assert len(psi.certificates) == 1
    assert psi.certificates[0].count == 1
    with pytest.raises(OutsideGuaranteedRangeError):
        psi(0.1)


def test_closed_disk_samples_include_the_boundary():
    samples = closed_disk_samples(4, 64)
    assert samples.size == 256
    assert np.abs(samples).max() == pytest.approx(1.0)


@pytest.mark.parametrize("coefficients", [[0.0, 1.0], [0.0, 1.0, 0.01], [0.0, 1.0, -0.01j]])
def test_quantitative_inverse_on_the_closed_disk(coefficients):
    Z1 = PowerSeries(coefficients)
    phi = lemma33_inverse(Z1, 1.9)
    assert isinstance(phi, QuantitativeInverse)
    assert phi.report.passed
    assert phi.report.details["s"] > 0.5
    z = np.array([0.0, 0.5, 1.0, -1.0j])
    assert np.allclose(Z1(phi(z)), z, atol=1e-10)
    with pytest.raises(OutsideGuaranteedRangeError):
        phi(1.5)


def test_identity_is_its_own_inverse():
    phi = lemma33_inverse(PowerSeries.identity(), 2.0)
    assert np.allclose(phi(np.array([0.3, -0.7j])), [0.3, -0.7j])


@pytest.mark.parametrize(
    "coefficients, r",
    [
        ([0.0, 1.0], 1.8),
        ([0.1, 1.0], 1.9),
        ([0.0, 2.0], 1.9),
        ([0.0, 1.0, 0.5], 1.9),
    ],
)
def test_quantitative_inverse_hypotheses(coefficients, r):
    with pytest.raises(ParameterRegimeError):
        lemma33_inverse(PowerSeries(coefficients), r)
