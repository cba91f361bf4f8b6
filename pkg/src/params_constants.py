# -*- coding: utf-8 -*-
"""
Closed-form constants of the Hölder-nonlinear inequalities

This module holds the parameter bundle shared by every check of the laboratory
and the closed-form thresholds derived from it: the comparison bound of the
radial no-small-solutions lemma, the bidisk height S_α for ∂f/∂z̄ = |f|^α, the
divergence and ODE bounds, and the radii of the quantitative inverse function
construction. Every function validates its regime and raises a
ParameterRegimeError naming the violated constraint verbatim.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
import pandas as pd
from scipy import integrate, special

logger = logging.getLogger(__name__)

# The quantitative inverse needs r > 4√2/3
INVERSE_RADIUS_THRESHOLD = 4.0 * math.sqrt(2.0) / 3.0

# Pseudonorm bounds at (0, b) in the direction (1, 0)
PSEUDONORM_LOWER_BOUND = 3.0 / (4.0 * math.sqrt(2.0))
PSEUDONORM_UPPER_BOUND_AT_ZERO = 0.5


class ParameterRegimeError(ValueError):
    """Rejected input: a parameter lies outside the regime of a statement."""

    def __init__(self, constraint: str, **values: float) -> None:
        self.constraint = constraint
        self.values = values
        got = ", ".join(f"{name}={value!r}" for name, value in values.items())
        message = f"violated constraint: {constraint}"
        if got:
            message += f" (got {got})"
        super().__init__(message)


def _require(condition: bool, constraint: str, **values: float) -> None:
    if not condition:
        raise ParameterRegimeError(constraint, **values)


def _positive_power(base: float, exponent: float) -> float:
    """base**exponent for a strictly positive base, computed through the logarithm."""
    assert base > 0, f"Power base must be positive, got {base}"
    return math.exp(exponent * math.log(base))


@dataclass(frozen=True)
class InequalityParams:
    """
    Parameter bundle of the differential inequalities.

    Attributes:
        alpha: Hölder exponent of ∂f/∂z̄ = |f|^α, strictly inside (0, 1).
        gamma: Exponent of ζ = ρ^γ. Defaults to gamma_star(alpha).
        B: Coefficient of the nonlinear term, B > 0.
        C: Gradient coefficient of the quasilinear inequalities.
        epsilon: Exponent of the nonlinear term.
        n: Dimension of the ball D_1 ⊂ ℝⁿ.
    """

    alpha: float = 0.5
    gamma: Optional[float] = None
    B: float = 1.0
    C: float = 0.0
    epsilon: float = 0.0
    n: int = 2

    def __post_init__(self) -> None:
        _require(0.0 < self.alpha < 1.0, "0 < alpha < 1", alpha=self.alpha)
        _require(self.B > 0.0, "B > 0", B=self.B)
        _require(self.epsilon < 1.0, "epsilon < 1", epsilon=self.epsilon)
        _require(
            isinstance(self.n, (int, np.integer)) and self.n >= 1,
            "n >= 1 (integer)",
            n=self.n,
        )
        if self.gamma is None:
            object.__setattr__(self, "gamma", gamma_star(self.alpha))
        _require(self.gamma > 0.0, "gamma > 0", gamma=self.gamma)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ConstantsReport:
    """Every constant derived from one InequalityParams (plus an optional radius r)."""

    params: InequalityParams
    salpha: float
    gamma_star: float
    eq20_bound: float
    comparison_M: Optional[float]
    kappa_n: float
    divergence_M: Optional[float]
    ode_M: Optional[float]
    r: Optional[float] = None
    eta: Optional[float] = None
    s: Optional[float] = None
    notes: list = field(default_factory=list)

    def as_row(self) -> dict:
        """Flat row for tabular output."""
        row = self.params.as_dict()
        row.update(
            {
                "salpha": self.salpha,
                "gamma_star": self.gamma_star,
                "eq20_bound": self.eq20_bound,
                "comparison_M": self.comparison_M,
                "kappa_n": self.kappa_n,
                "divergence_M": self.divergence_M,
                "ode_M": self.ode_M,
                "r": self.r,
                "eta": self.eta,
                "s": self.s,
                "notes": "; ".join(self.notes),
            }
        )
        return row


def comparison_bound_M(p: InequalityParams) -> float:
    """Height M of the radial comparison function for Δu ≥ B u^ε on D_1 ⊂ ℝⁿ."""
    _require(0.0 <= p.epsilon < 1.0, "0 <= epsilon < 1", epsilon=p.epsilon)
    eps, n = p.epsilon, p.n
    base = p.B * (1.0 - eps) ** 2 / (2.0 * (2.0 * eps + n * (1.0 - eps)))
    return _positive_power(base, 1.0 / (1.0 - eps))


def salpha_branches(alpha: float) -> tuple[float, float]:
    """Both branch formulas of S_α, evaluated regardless of which one applies."""
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    exponent = 1.0 / (2.0 - 2.0 * alpha)
    first = _positive_power(alpha * (1.0 - alpha), exponent)
    second = _positive_power(
        4.0 * alpha * (1.0 - alpha) ** 2 / (2.0 - alpha), exponent
    )
    return first, second


def salpha(alpha: float) -> float:
    """Bidisk height S_α below which ∂f/∂z̄ = |f|^α has no solution with f(0) ≠ 0."""
    first, second = salpha_branches(alpha)
    return first if alpha <= 2.0 / 3.0 else second


def gamma_star(alpha: float) -> float:
    """Optimal exponent max{2, (2−α)/(2−2α)} of the inequality chain."""
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    return max(2.0, (2.0 - alpha) / (2.0 - 2.0 * alpha))


def eq20_bound(alpha: float, gamma: float) -> float:
    """General bound (2α(1−α)/γ)^{1/(2(1−α))} for an admissible exponent γ."""
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    _require(
        gamma >= gamma_star(alpha) - 1e-15,
        "gamma >= max(2, (2 - alpha) / (2 - 2 * alpha))",
        alpha=alpha,
        gamma=gamma,
    )
    return _positive_power(
        2.0 * alpha * (1.0 - alpha) / gamma, 1.0 / (2.0 * (1.0 - alpha))
    )


def alpha_condition_for_divergence(alpha: float, gamma: Optional[float] = None) -> bool:
    """Whether the constants of the ζ-inequality satisfy ε ≤ C (it holds iff α ≤ 2/3)."""
    gamma = gamma_star(alpha) if gamma is None else gamma
    epsilon = 1.0 - 2.0 / gamma
    C = (2.0 * (gamma - 1.0) - alpha / (1.0 - alpha)) / (2.0 * gamma)
    return epsilon <= C + 1e-15


def ball_volume(n: int, r: float = 1.0) -> float:
    """Volume β_n(r) of the ball of radius r in ℝⁿ."""
    _require(n >= 1, "n >= 1", n=n)
    return math.pi ** (n / 2.0) / special.gamma(n / 2.0 + 1.0) * r**n


def sphere_area(n: int, r: float = 1.0) -> float:
    """Surface measure σ_n(r) = d β_n / dr of the sphere of radius r in ℝⁿ."""
    return n * ball_volume(n, 1.0) * r ** (n - 1)


def kappa_n(n: int) -> float:
    """κ_n = 1/(n(n+1)), the ratio ∫₀¹ β_n / σ_n(1)."""
    _require(isinstance(n, (int, np.integer)) and n >= 1, "n >= 1 (integer)", n=n)
    return 1.0 / (n * (n + 1))


def kappa_n_quadrature(n: int) -> float:
    """κ_n evaluated from its defining ratio by adaptive quadrature."""
    numerator, _ = integrate.quad(lambda r: ball_volume(n, r), 0.0, 1.0)
    return numerator / sphere_area(n, 1.0)


def divergence_bound_M(p: InequalityParams) -> float:
    """Lower bound ((1−C)Bκ_n)^{1/(1−ε)} on sup u for positive solutions of the quasilinear inequality."""
    _require(p.C < 1.0, "C < 1", C=p.C)
    _require(p.epsilon <= p.C, "epsilon <= C", epsilon=p.epsilon, C=p.C)
    base = (1.0 - p.C) * p.B * kappa_n(p.n)
    return _positive_power(base, 1.0 / (1.0 - p.epsilon))


def ode_bound_M(p: InequalityParams) -> float:
    """Lower bound (½(1−C)B)^{1/(1−ε)} on sup u over [0,1) for the one-dimensional inequality."""
    _require(-1.0 <= p.C < 1.0, "-1 <= C < 1", C=p.C)
    _require(p.epsilon <= p.C, "epsilon <= C", epsilon=p.epsilon, C=p.C)
    base = 0.5 * (1.0 - p.C) * p.B
    return _positive_power(base, 1.0 / (1.0 - p.epsilon))


def eta_window(r: float) -> tuple[float, float]:
    """Roots of 4η² − 3rη + 2; η = 3r/8 sits midway between them."""
    _require(
        r > INVERSE_RADIUS_THRESHOLD, "r > 4*sqrt(2)/3", r=r
    )
    root = math.sqrt(9.0 * r**2 - 32.0)
    return (3.0 * r - root) / 8.0, (3.0 * r + root) / 8.0


def inverse_radii(r: float) -> tuple[float, float]:
    """Radii (η, s) = (3r/8, 3r²/(64 − 12r²)) of the quantitative inverse on D_r."""
    _require(r > INVERSE_RADIUS_THRESHOLD, "r > 4*sqrt(2)/3", r=r)
    _require(r <= 2.0, "r <= 2", r=r)
    eta = 3.0 * r / 8.0
    s = 3.0 * r**2 / (64.0 - 12.0 * r**2)
    return eta, s


def schwarz_pick_radius(delta: float, eta: float) -> float:
    """Radius s = ((δ−η)/(1−ηδ))η of the disk covered by f(D_η)."""
    _require(0.0 < delta <= 1.0, "0 < delta <= 1", delta=delta)
    _require(0.0 < eta < delta, "0 < eta < delta", eta=eta, delta=delta)
    return (delta - eta) / (1.0 - eta * delta) * eta


def pseudo_disk(z0: complex, r: float) -> tuple[complex, float]:
    """Euclidean center and radius of the pseudo-hyperbolic disk {z : |φ_{z0}(z)| < r}."""
    _require(abs(z0) < 1.0, "|z0| < 1", z0=abs(z0))
    _require(0.0 < r < 1.0, "0 < r < 1", r=r)
    denominator = 1.0 - r**2 * abs(z0) ** 2
    center = (1.0 - r**2) * complex(z0) / denominator
    radius = r * (1.0 - abs(z0) ** 2) / denominator
    return center, radius


def pseudohyperbolic_distance(z: complex, w: complex) -> float:
    """Distance |z − w| / |1 − w̄z| on the unit disk."""
    _require(abs(z) < 1.0 and abs(w) < 1.0, "|z| < 1 and |w| < 1", z=abs(z), w=abs(w))
    return abs(z - w) / abs(1.0 - complex(w).conjugate() * z)


def pseudonorm_bounds() -> tuple[float, float]:
    """Lower bound 3/(4√2) off the zero section and the upper bound ½ at b = 0."""
    return PSEUDONORM_LOWER_BOUND, PSEUDONORM_UPPER_BOUND_AT_ZERO


def constants_report(p: InequalityParams, r: Optional[float] = None) -> ConstantsReport:
    """Evaluate every constant for p; bounds outside their regime are left empty with a note."""
    notes = []

    def attempt(name, func):
        try:
            return func(p)
        except ParameterRegimeError as error:
            notes.append(f"{name}: {error.constraint}")
            return None

    eta = s = None
    if r is not None:
        try:
            eta, s = inverse_radii(r)
        except ParameterRegimeError as error:
            notes.append(f"inverse_radii: {error.constraint}")

    return ConstantsReport(
        params=p,
        salpha=salpha(p.alpha),
        gamma_star=gamma_star(p.alpha),
        eq20_bound=eq20_bound(p.alpha, max(p.gamma, gamma_star(p.alpha))),
        comparison_M=attempt("comparison_bound_M", comparison_bound_M),
        kappa_n=kappa_n(p.n),
        divergence_M=attempt("divergence_bound_M", divergence_bound_M),
        ode_M=attempt("ode_bound_M", ode_bound_M),
        r=r,
        eta=eta,
        s=s,
        notes=notes,
    )


def constants_table(
    alphas=(0.25, 0.5, 2.0 / 3.0, 0.75),
    ns=(1, 2, 3),
    B: float = 1.0,
    C: float = 0.0,
    epsilon: float = 0.0,
    r: Optional[float] = None,
) -> pd.DataFrame:
    """Constants for a sweep over α and n as a DataFrame, one ConstantsReport per row."""
    rows = [
        constants_report(InequalityParams(alpha=a, B=B, C=C, epsilon=epsilon, n=n), r)
        for a in alphas
        for n in ns
    ]
    logger.debug("Evaluated %d constant reports", len(rows))
    return pd.DataFrame([row.as_row() for row in rows])
