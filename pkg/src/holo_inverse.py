# -*- coding: utf-8 -*-
"""
Quantitative inverses of holomorphic polynomials

Root counting by the argument principle, Schwarz–Pick type lower bounds for
self-maps of the unit disk, and inverse evaluators with a guaranteed domain: if
f(0) = 0, |f'(0)| = δ and f maps D_1 into D_1, then f takes every value of D_s,
s = ((δ−η)/(1−ηδ))η, exactly once on D_η. Inverses are computed by damped Newton
and each value is certified by a winding count on a circle just inside ∂D_η.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

try:
    from src.params_constants import (
        INVERSE_RADIUS_THRESHOLD,
        ParameterRegimeError,
        _require,
        inverse_radii,
        schwarz_pick_radius,
    )
    from src.reports import VerificationReport
except ImportError:
    from .params_constants import (
        INVERSE_RADIUS_THRESHOLD,
        ParameterRegimeError,
        _require,
        inverse_radii,
        schwarz_pick_radius,
    )
    from .reports import VerificationReport

logger = logging.getLogger(__name__)

MIN_CONTOUR_SAMPLES = 64
BOUNDARY_SAMPLES = 1024

# Certificate contours sit at this fraction of η
CERTIFICATE_SHRINK = 0.999

NEWTON_MAX_ITER = 60
NEWTON_MAX_HALVINGS = 40
ROUND_TRIP_TOL = 1e-12
HYPOTHESIS_TOL = 1e-12


class ContourError(ParameterRegimeError):
    """A root lies (numerically) on the contour."""


class QuadratureResolutionError(ParameterRegimeError):
    """The winding quadrature is not close to an integer."""


class OutsideGuaranteedRangeError(ParameterRegimeError):
    """The requested value lies outside the disk where the inverse is guaranteed."""


class NewtonConvergenceError(RuntimeError):
    """Damped Newton failed to reach the requested residual."""


class CertificateContradictionError(RuntimeError):
    """A winding certificate disagrees with the uniqueness guarantee."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Polynomial (or truncated series) a₀ + a₁z + … + a_d z^d with a nominal domain radius."""

    coefficients: np.ndarray
    radius: float = 1.0

    def __post_init__(self) -> None:
        coefficients = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        assert coefficients.ndim == 1 and coefficients.size >= 1, "Coefficients must be a 1-D array"
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def identity(cls, radius: float = 1.0) -> "PowerSeries":
        return cls(np.array([0.0, 1.0]), radius)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "PowerSeries":
        return cls(leading * P.polyfromroots(roots))

    @property
    def degree(self) -> int:
        nonzero = np.flatnonzero(self.coefficients)
        return int(nonzero[-1]) if nonzero.size else 0

    def __call__(self, z):
        """Horner evaluation."""
        z = np.asarray(z, dtype=complex)
        result = np.zeros_like(z)
        for coefficient in self.coefficients[::-1]:
            result = result * z + coefficient
        return result

    def derivative(self) -> "PowerSeries":
        if self.coefficients.size == 1:
            return PowerSeries(np.zeros(1), self.radius)
        return PowerSeries(P.polyder(self.coefficients), self.radius)

    def _coefficients_of(self, other) -> np.ndarray:
        if isinstance(other, PowerSeries):
            return other.coefficients
        return np.array([other], dtype=complex)

    def __add__(self, other) -> "PowerSeries":
        return PowerSeries(P.polyadd(self.coefficients, self._coefficients_of(other)), self.radius)

    __radd__ = __add__

    def __sub__(self, other) -> "PowerSeries":
        return PowerSeries(P.polysub(self.coefficients, self._coefficients_of(other)), self.radius)

    def __mul__(self, other) -> "PowerSeries":
        return PowerSeries(P.polymul(self.coefficients, self._coefficients_of(other)), self.radius)

    __rmul__ = __mul__

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self ∘ inner by Horner's scheme on coefficient arrays."""
        result = np.array([self.coefficients[-1]])
        for coefficient in self.coefficients[-2::-1]:
            result = P.polyadd(P.polymul(result, inner.coefficients), [coefficient])
        return PowerSeries(result, inner.radius)

    def scale_argument(self, c: complex) -> "PowerSeries":
        """z ↦ self(c·z)."""
        powers = c ** np.arange(self.coefficients.size)
        return PowerSeries(self.coefficients * powers, self.radius / abs(c))

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coefficients[: order + 1], self.radius)

    def reversion(self, order: int) -> "PowerSeries":
        """
        Compositional inverse truncated at `order`, by Lagrange inversion.

        [w^k] f⁻¹ = (1/k)·[z^{k−1}] (z/f(z))^k, which needs a₀ = 0 and a₁ ≠ 0.
        """
        a = np.zeros(order + 2, dtype=complex)
        a[: min(order + 2, self.coefficients.size)] = self.coefficients[: order + 2]
        if abs(a[0]) > 0 or a[1] == 0:
            raise ParameterRegimeError("f(0) = 0 and f'(0) != 0")

        # z/f(z) = 1/(a₁ + a₂z + …) as a truncated series
        quotient = a[1:]
        reciprocal = np.zeros(order, dtype=complex)
        reciprocal[0] = 1.0 / quotient[0]
        for k in range(1, order):
            reciprocal[k] = -np.dot(quotient[1 : k + 1], reciprocal[k - 1 :: -1]) / quotient[0]

        inverse = np.zeros(order + 1, dtype=complex)
        power = np.array([1.0 + 0j])
        for k in range(1, order + 1):
            power = P.polymul(power, reciprocal)[:order]
            inverse[k] = power[k - 1] / k
        return PowerSeries(inverse, self.radius)


@dataclass(frozen=True)
class ContourSpec:
    """Circle |z − center| = radius sampled at n_samples uniform points."""

    center: complex = 0j
    radius: float = 1.0
    n_samples: int = 256

    def __post_init__(self) -> None:
        _require(self.radius > 0, "radius > 0", radius=self.radius)
        _require(
            self.n_samples >= MIN_CONTOUR_SAMPLES,
            f"n_samples >= {MIN_CONTOUR_SAMPLES}",
            n_samples=self.n_samples,
        )

    def samples(self) -> tuple[np.ndarray, np.ndarray]:
        """Sample points and the unit phases e^{iθ_k}."""
        phases = np.exp(2j * np.pi * np.arange(self.n_samples) / self.n_samples)
        return self.center + self.radius * phases, phases

    def as_dict(self) -> dict:
        return {"center": self.center, "radius": self.radius, "n_samples": self.n_samples}


@dataclass(frozen=True)
class WindingCertificate:
    """Argument-principle root count of f inside a contour."""

    contour: ContourSpec
    count: int
    min_abs_on_contour: float
    raw_value: complex

    def as_dict(self) -> dict:
        return {
            "contour": self.contour.as_dict(),
            "count": self.count,
            "min_abs_on_contour": self.min_abs_on_contour,
        }


def winding_certificate(
    f: PowerSeries, gamma: ContourSpec, threshold: float = 1e-10
) -> WindingCertificate:
    """(1/2πi)∮ f'/f dz by the trapezoid rule, rounded to the nearest integer."""
    points, phases = gamma.samples()
    values = f(points)
    smallest = float(np.min(np.abs(values)))
    if smallest <= threshold:
        raise ContourError(
            "min |f| on the contour > threshold", min_abs=smallest, threshold=threshold
        )
    ratio = f.derivative()(points) / values
    raw = complex(gamma.radius * np.mean(ratio * phases))
    count = int(round(raw.real))
    if abs(raw - count) > 0.1:
        raise QuadratureResolutionError(
            "winding quadrature within 0.1 of an integer",
            real=raw.real,
            imag=raw.imag,
            n_samples=gamma.n_samples,
        )
    return WindingCertificate(gamma, count, smallest, raw)


def winding_zero_count(f: PowerSeries, gamma: ContourSpec, threshold: float = 1e-10) -> int:
    """Number of zeros of f inside the contour, with multiplicity."""
    return winding_certificate(f, gamma, threshold).count


# Schwarz–Pick bounds ########################################################


def _self_map_hypotheses(f: PowerSeries, delta: float, eta: float) -> dict:
    """Check f(0) = 0, |f'(0)| = δ, 0 < η < δ ≤ 1 and |f| ≤ 1 on sampled ∂D_1."""
    _require(0.0 < delta <= 1.0, "0 < delta <= 1", delta=delta)
    _require(0.0 < eta < delta, "0 < eta < delta", eta=eta, delta=delta)
    value_at_zero = abs(complex(f(0.0)))
    _require(value_at_zero <= HYPOTHESIS_TOL, "f(0) = 0", f0=value_at_zero)
    slope = abs(complex(f.derivative()(0.0)))
    _require(math.isclose(slope, delta, rel_tol=1e-9, abs_tol=1e-12), "|f'(0)| = delta", slope=slope, delta=delta)
    boundary = np.exp(2j * np.pi * np.arange(BOUNDARY_SAMPLES) / BOUNDARY_SAMPLES)
    top = float(np.max(np.abs(f(boundary))))
    _require(top <= 1.0 + HYPOTHESIS_TOL, "f maps D_1 into D_1 (sampled)", max_abs=top)
    return {"f0": value_at_zero, "slope": slope, "sampled_boundary_max": top}


def schwarz_pick_lower(
    f: PowerSeries, delta: float, eta: float, n_radii: int = 32, n_angles: int = 64
) -> VerificationReport:
    """Check |f(z)| > ((δ−η)/(1−ηδ))|z| and |f(z)| ≥ ((δ−|z|)/(1−|z|δ))|z| on sampled 0 < |z| < η."""
    hypotheses = _self_map_hypotheses(f, delta, eta)
    radii = eta * np.arange(1, n_radii + 1) / (n_radii + 1)
    angles = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    z = (radii[:, None] * angles[None, :]).ravel()
    modulus = np.abs(f(z)) / np.abs(z)

    linear = (delta - eta) / (1.0 - eta * delta)
    nonlinear = (delta - np.abs(z)) / (1.0 - np.abs(z) * delta)
    linear_margin = modulus - linear
    nonlinear_margin = modulus - nonlinear
    tolerance = 1e-10

    violating = z[(linear_margin <= 0) | (nonlinear_margin < -tolerance)]
    margin = min(float(np.min(linear_margin)), float(np.min(nonlinear_margin)))
    index = int(np.argmin(np.minimum(linear_margin, nonlinear_margin)))
    return VerificationReport.from_margin(
        "schwarz_pick_lower",
        margin=margin,
        tolerance=tolerance,
        witness=z[index],
        params={"delta": delta, "eta": eta, "coefficients": f.coefficients},
        notes=f"{violating.size} violating samples" if violating.size else "",
        details={
            "linear_margin": float(np.min(linear_margin)),
            "nonlinear_margin": float(np.min(nonlinear_margin)),
            "violating_samples": violating[:20],
            **hypotheses,
        },
    )


# Inverse evaluators #########################################################


def newton_inverse(
    f: PowerSeries, w, z0=None, tol: float = 1e-15, max_iter: int = NEWTON_MAX_ITER
) -> np.ndarray:
    """Damped Newton for f(z) = w, vectorized over w; starts from w/f'(0) by default."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    derivative = f.derivative()
    z = w / complex(derivative(0.0)) if z0 is None else np.asarray(z0, dtype=complex).copy()
    residual = np.abs(f(z) - w)

    for iteration in range(max_iter):
        active = residual > tol * (1.0 + np.abs(w))
        if not active.any():
            break
        step = np.zeros_like(z)
        step[active] = (f(z[active]) - w[active]) / derivative(z[active])

        # Halve the step until the residual decreases
        damping = np.ones(z.shape)
        candidate = z - step
        candidate_residual = np.abs(f(candidate) - w)
        for _ in range(NEWTON_MAX_HALVINGS):
            worse = active & (candidate_residual >= residual)
            if not worse.any():
                break
            damping[worse] *= 0.5
            candidate[worse] = z[worse] - damping[worse] * step[worse]
            candidate_residual[worse] = np.abs(f(candidate[worse]) - w[worse])
        stalled = active & (candidate_residual >= residual)
        z = np.where(stalled, z, candidate)
        residual = np.where(stalled, residual, candidate_residual)
        if stalled.all():
            break
        logger.debug("Newton iteration %d: max residual %.3e", iteration, residual.max())
    return z


@dataclass
class HolomorphicInverse:
    """
    Inverse ψ of f on D_s with values in D_η.

    Every evaluation is certified: f − w has exactly one zero inside the circle
    of radius η' ≥ 0.999η, and the Newton root lies inside that circle.
    """

    f: PowerSeries
    delta: float
    eta: float
    s: float
    hypotheses: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)

    def certificate_radius(self, w: complex) -> float:
        """η' = max(0.999η, midpoint of |w|/c and η), c = (δ−η)/(1−ηδ)."""
        c = self.s / self.eta
        return max(CERTIFICATE_SHRINK * self.eta, 0.5 * (abs(w) / c + self.eta))

    def certify(self, w: complex, z: complex) -> WindingCertificate:
        radius = self.certificate_radius(w)
        n_samples = max(256, 16 * self.f.degree)
        certificate = winding_certificate(self.f - w, ContourSpec(0j, radius, n_samples))
        if certificate.count != 1 or abs(z) >= radius:
            raise CertificateContradictionError(
                f"Certificate for w={w!r} counts {certificate.count} roots inside "
                + f"radius {radius:.6g}; Newton root has modulus {abs(z):.6g}"
            )
        return certificate

    def __call__(self, w) -> np.ndarray:
        scalar = np.ndim(w) == 0
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        outside = np.abs(w) >= self.s
        if outside.any():
            raise OutsideGuaranteedRangeError(
                "|w| < s", w=float(np.max(np.abs(w))), s=self.s
            )
        z = newton_inverse(self.f, w)
        error = np.abs(self.f(z) - w)
        if np.any(error > ROUND_TRIP_TOL):
            worst = int(np.argmax(error))
            raise NewtonConvergenceError(
                f"Newton residual {error[worst]:.3e} at w={w[worst]!r} "
                + f"(z={z[worst]!r}, |f'(z)|={abs(complex(self.f.derivative()(z[worst]))):.3e})"
            )
        self.certificates = [self.certify(wk, zk) for wk, zk in zip(w, z)]
        return z[0] if scalar else z


def injective_inverse(f: PowerSeries, delta: float, eta: float) -> HolomorphicInverse:
    """Inverse of f on D_s, s = schwarz_pick_radius(δ, η), with values in D_η."""
    hypotheses = _self_map_hypotheses(f, delta, eta)
    s = schwarz_pick_radius(delta, eta)
    logger.debug("Injective inverse: delta=%g eta=%g s=%g", delta, eta, s)
    return HolomorphicInverse(f, delta, eta, s, hypotheses)


@dataclass
class QuantitativeInverse:
    """φ(z) = r·ψ(z/2) on the closed unit disk, with Z1(φ(z)) = z."""

    Z1: PowerSeries
    r: float
    inner: HolomorphicInverse
    report: Optional[VerificationReport] = None

    def __call__(self, z) -> Union[complex, np.ndarray]:
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1.0 + 1e-12):
            raise OutsideGuaranteedRangeError("|z| <= 1", z=float(np.max(np.abs(z))))
        return self.r * self.inner(z / 2.0)


def closed_disk_samples(n_rings: int = 4, n_angles: int = 64) -> np.ndarray:
    """Boundary-inclusive samples of the closed unit disk."""
    radii = np.arange(1, n_rings + 1) / n_rings
    angles = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    return (radii[:, None] * angles[None, :]).ravel()


def lemma33_inverse(Z1: PowerSeries, r: float, tol: float = 1e-10) -> QuantitativeInverse:
    """
    Inverse φ of Z1 on the closed unit disk, for Z1(0) = 0, Z1'(0) = 1, Z1(D_r) ⊂ D_2.

    f(z) = ½Z1(rz) satisfies the self-map hypotheses with δ = r/2 and η = 3r/8,
    whose inverse ψ covers D_s with s > ½; then φ(z) = r·ψ(z/2).
    """
    if r <= INVERSE_RADIUS_THRESHOLD:
        raise ParameterRegimeError(f"r > 4*sqrt(2)/3 = {INVERSE_RADIUS_THRESHOLD:.12g}", r=r)
    eta, s = inverse_radii(r)
    _require(abs(complex(Z1(0.0))) <= HYPOTHESIS_TOL, "Z1(0) = 0")
    _require(
        abs(complex(Z1.derivative()(0.0)) - 1.0) <= 1e-12, "Z1'(0) = 1"
    )
    circle = r * np.exp(2j * np.pi * np.arange(BOUNDARY_SAMPLES) / BOUNDARY_SAMPLES)
    top = float(np.max(np.abs(Z1(circle))))
    _require(top <= 2.0 + HYPOTHESIS_TOL, "Z1 maps D_r into D_2 (sampled)", max_abs=top)

    f = 0.5 * Z1.scale_argument(r)
    inner = injective_inverse(f, r / 2.0, eta)
    phi = QuantitativeInverse(Z1, r, inner)

    # Certificate on a boundary-inclusive sample of the closed disk
    samples = closed_disk_samples()
    images = phi(samples)
    round_trip = np.abs(Z1(images) - samples)
    worst = int(np.argmax(round_trip))
    margin = min(tol - float(round_trip[worst]), r * eta - float(np.max(np.abs(images))))
    phi.report = VerificationReport.from_margin(
        "lemma33_inverse",
        margin=margin,
        tolerance=0.0,
        witness=samples[worst],
        params={"r": r, "coefficients": Z1.coefficients},
        notes="maps-into-disk hypotheses checked on sampled circles",
        details={
            "eta": eta,
            "s": s,
            "round_trip_max": float(round_trip[worst]),
            "max_abs_phi": float(np.max(np.abs(images))),
            "samples": int(samples.size),
            "certificates": len(inner.certificates),
            **inner.hypotheses,
        },
    )
    logger.info("Quantitative inverse for r=%g: round trip %.3e", r, round_trip[worst])
    return phi
