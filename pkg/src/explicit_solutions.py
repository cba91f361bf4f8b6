# -*- coding: utf-8 -*-
"""
Explicit solution families

Closed-form solutions of u'' = B|u|^ε, u' = B|u|^α and of the radial comparison
problem Δv = B v^ε, together with the real profile of the explicit J-holomorphic
disks for λ(z₁, z₂) = −2|z₂|^α. Values and derivatives are exact formulas, so
residual checks need no quadrature; grid sampling is only used by the other
modules.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

try:
    from src.grid_field import ComplexField, PolarGrid, ScalarFieldND
    from src.params_constants import (
        InequalityParams,
        ParameterRegimeError,
        _require,
        comparison_bound_M,
    )
except ImportError:
    from .grid_field import ComplexField, PolarGrid, ScalarFieldND
    from .params_constants import (
        InequalityParams,
        ParameterRegimeError,
        _require,
        comparison_bound_M,
    )

logger = logging.getLogger(__name__)


class EscapeError(ParameterRegimeError):
    """The explicit disk leaves D_S inside the requested domain."""

    def __init__(self, abscissa: float, S: float) -> None:
        self.abscissa = abscissa
        super().__init__("|u(x)| < S on the domain", x=abscissa, S=S)


def _falling_factorial(p: float, m: int) -> float:
    return math.prod(p - k for k in range(m))


def _abs_power(u: np.ndarray, exponent: float) -> np.ndarray:
    """|u|^exponent with 0^exponent read as 0 (the zero set lies outside the inequality's domain)."""
    magnitude = np.abs(u)
    safe = np.where(magnitude > 0, magnitude, 1.0)
    return np.where(magnitude > 0, safe**exponent, 0.0)


@dataclass(frozen=True)
class PiecewisePower:
    """
    u(x) = right_sign·A·(k·x − c₂)^p for k·x ≥ c₂, 0 for c₁ ≤ k·x ≤ c₂ and
    left_sign·A·(c₁ − k·x)^p for k·x ≤ c₁.

    Attributes:
        c1, c2: Breakpoints of the flat piece, expressed in the variable k·x.
        amplitude: A.
        exponent: p.
        slope: k (1 for the second order family, B for the first order one).
        left_sign, right_sign: Signs of the outer pieces.
        coefficient, power, order: The ODE u^(order) = coefficient·|u|^power solved by the family.
        smoothness: Number of derivatives matched at the breakpoints.
    """

    c1: float
    c2: float
    amplitude: float
    exponent: float
    slope: float = 1.0
    left_sign: float = 1.0
    right_sign: float = 1.0
    coefficient: float = 1.0
    power: float = 0.0
    order: int = 2
    smoothness: int = 2

    @property
    def breakpoints(self) -> tuple[float, float]:
        """Breakpoints in the variable x."""
        return self.c1 / self.slope, self.c2 / self.slope

    def derivative(self, x, m: int = 0) -> np.ndarray:
        """Exact m-th derivative (m = 0 gives the values)."""
        x = np.asarray(x, dtype=float)
        s = self.slope * x
        p, A = self.exponent, self.amplitude
        factor = A * _falling_factorial(p, m) * self.slope**m
        right = np.where(s > self.c2, s - self.c2, 1.0)
        left = np.where(s < self.c1, self.c1 - s, 1.0)
        result = np.zeros_like(x)
        result = np.where(
            s > self.c2, self.right_sign * factor * right ** (p - m), result
        )
        result = np.where(
            s < self.c1, self.left_sign * (-1) ** m * factor * left ** (p - m), result
        )
        return result

    def __call__(self, x) -> np.ndarray:
        return self.derivative(x, 0)

    def ode_residual(self, x) -> np.ndarray:
        """u^(order) − coefficient·|u|^power."""
        u = self(x)
        return self.derivative(x, self.order) - self.coefficient * _abs_power(u, self.power)

    def one_sided_derivatives(self, breakpoint: float, m: int) -> tuple[float, float]:
        """Left and right limits of u^(m) at a breakpoint, from the adjacent pieces' formulas."""
        s = self.slope * breakpoint
        p, A = self.exponent, self.amplitude
        factor = A * _falling_factorial(p, m) * self.slope**m

        def outer(sign, mirrored):
            # Limit of the outer piece at its own breakpoint
            if p - m == 0:
                value = 1.0
            else:
                value = 0.0 if p - m > 0 else math.inf
            return sign * (-1) ** (m if mirrored else 0) * factor * value

        if math.isclose(s, self.c2) and self.c1 < self.c2:
            return 0.0, outer(self.right_sign, False)
        if math.isclose(s, self.c1) and self.c1 < self.c2:
            return outer(self.left_sign, True), 0.0
        if math.isclose(s, self.c1) and math.isclose(s, self.c2):
            return outer(self.left_sign, True), outer(self.right_sign, False)
        raise ValueError(f"{breakpoint} is not a breakpoint of the family")

    def sample(self, points_per_axis: int, radius: float = 1.0, center: float = 0.0) -> ScalarFieldND:
        """One-dimensional lattice sampling on (center − radius, center + radius)."""
        return ScalarFieldND.sample(lambda x: self(x[0]), 1, points_per_axis, radius, [center])


@dataclass(frozen=True)
class RadialComparison:
    """v(x) = M|x|^q in ℝⁿ with q = 2/(1 − ε)."""

    M: float
    exponent: float
    n: int
    B: float
    epsilon: float

    def value(self, x: np.ndarray) -> np.ndarray:
        """x has shape (n, ...)."""
        return self.M * np.sqrt((np.asarray(x) ** 2).sum(axis=0)) ** self.exponent

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.sqrt((x**2).sum(axis=0))
        return self.M * self.exponent * r ** (self.exponent - 2.0) * x

    def laplacian(self, x: np.ndarray) -> np.ndarray:
        q = self.exponent
        r = np.sqrt((np.asarray(x) ** 2).sum(axis=0))
        return self.M * q * (q + self.n - 2.0) * r ** (q - 2.0)

    def residual(self, x: np.ndarray) -> np.ndarray:
        """Δv − B v^ε."""
        return self.laplacian(x) - self.B * self.value(x) ** self.epsilon

    def coefficient_identity(self) -> tuple[float, float]:
        """Both sides of q(q + n − 2)·M = B·M^ε."""
        q = self.exponent
        return q * (q + self.n - 2.0) * self.M, self.B * self.M**self.epsilon

    def sample(self, points_per_axis: int, radius: float = 1.0) -> ScalarFieldND:
        return ScalarFieldND.sample(self.value, self.n, points_per_axis, radius)


def example22_family(B: float, epsilon: float, c1: float, c2: float) -> PiecewisePower:
    """C² family of u'' = B|u|^ε vanishing exactly on [c₁, c₂]."""
    _require(B > 0, "B > 0", B=B)
    _require(0.0 <= epsilon < 1.0, "0 <= epsilon < 1", epsilon=epsilon)
    _require(c1 <= c2, "c1 <= c2", c1=c1, c2=c2)
    M = (B * (1.0 - epsilon) ** 2 / (2.0 * (1.0 + epsilon))) ** (1.0 / (1.0 - epsilon))
    return PiecewisePower(
        c1=c1,
        c2=c2,
        amplitude=M,
        exponent=2.0 / (1.0 - epsilon),
        coefficient=B,
        power=epsilon,
        order=2,
        smoothness=2,
    )


def example25_family(B: float, alpha: float, c1: float, c2: float) -> PiecewisePower:
    """C¹ family of u' = B|u|^α: ((1−α)(Bx − c₂))^{1/(1−α)} on the right, odd-shaped on the left."""
    _require(B > 0, "B > 0", B=B)
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    _require(c1 <= c2, "c1 <= c2", c1=c1, c2=c2)
    p = 1.0 / (1.0 - alpha)
    return PiecewisePower(
        c1=c1,
        c2=c2,
        amplitude=(1.0 - alpha) ** p,
        exponent=p,
        slope=B,
        left_sign=-1.0,
        right_sign=1.0,
        coefficient=B,
        power=alpha,
        order=1,
        smoothness=1,
    )


def radial_comparison(p: InequalityParams) -> RadialComparison:
    """Comparison function v = M|x|^{2/(1−ε)} with M = comparison_bound_M(p)."""
    return RadialComparison(
        M=comparison_bound_M(p),
        exponent=2.0 / (1.0 - p.epsilon),
        n=p.n,
        B=p.B,
        epsilon=p.epsilon,
    )


def example44_profile(b: float, alpha: float) -> PiecewisePower:
    """u with u' = 2|u|^α, u(0) = b, and u ≡ 0 left of its zero."""
    _require(b > 0, "b > 0", b=b)
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    c2 = -(b ** (1.0 - alpha)) / (1.0 - alpha)
    family = example25_family(2.0, alpha, -math.inf, c2)
    return family


def example44_eq25_residual(b: float, alpha: float, z) -> tuple[np.ndarray, np.ndarray]:
    """Analytic residuals (u_y + v_x, u_x + λ − v_y) of the disk z ↦ (z, u(Re z))."""
    profile = example44_profile(b, alpha)
    x = np.real(np.asarray(z))
    u = profile(x)
    u_x = profile.derivative(x, 1)
    lam = -2.0 * _abs_power(u, alpha)
    return np.zeros_like(x), u_x + lam


def example44_disk(
    b: float,
    alpha: float,
    domain_radius: float = 1.0,
    S: Optional[float] = None,
    n_r: int = 64,
    n_t: int = 128,
) -> tuple[ComplexField, ComplexField]:
    """
    Explicit disk Z(z) = (z, u(x)) on D_domain_radius.

    u(x) = (2(1−α)x + b^{1−α})^{1/(1−α)} right of x₀ = −b^{1−α}/(2(1−α)) and 0
    left of it. When S is given, the disk must stay in D_S on the domain.
    """
    profile = example44_profile(b, alpha)
    if S is not None:
        top = float(profile(domain_radius))
        if top >= S:
            # First abscissa where u reaches S
            escape = (S ** (1.0 - alpha) - b ** (1.0 - alpha)) / (2.0 * (1.0 - alpha))
            logger.warning("Explicit disk leaves D_S at x = %.6g", escape)
            raise EscapeError(escape, S)
    grid = PolarGrid(domain_radius, n_r, n_t)
    Z1 = ComplexField.sample(grid, lambda z: z)
    Z2 = ComplexField.sample(grid, lambda z: profile(np.real(z)).astype(complex))
    return Z1, Z2
