# -*- coding: utf-8 -*-
"""
Solver for ∂f/∂z̄ = |f|^α on the unit disk

The equation is solved by Picard iteration over the solid Cauchy transform
Tg(z) = (1/π)∫ g(w)/(z − w) dA(w), a right inverse of ∂/∂z̄, with the value at
the origin pinned to b. Solutions become J-holomorphic disks z ↦ (z, f(z)) for
the structure with λ(z₁, z₂) = −2|z₂|^α, and membership of such a disk in the
bidisk D_2 × D_S is checked directly.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy import fft

try:
    from src.grid_field import (
        ComplexField,
        PolarGrid,
        partial_x,
        partial_y,
        sup_abs,
        wirtinger_dbar,
    )
    from src.params_constants import ParameterRegimeError, _require
    from src.reports import VerificationReport, to_serializable
except ImportError:
    from .grid_field import (
        ComplexField,
        PolarGrid,
        partial_x,
        partial_y,
        sup_abs,
        wirtinger_dbar,
    )
    from .params_constants import ParameterRegimeError, _require
    from .reports import VerificationReport, to_serializable

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 500
DEFAULT_BURN_IN = 10
DIVERGENCE_CAP = 10.0

# Relative growth of the successive change tolerated after burn-in (rounding only)
MONOTONE_SLACK = 1e-6

# Relaxations tried in turn when an undamped run stalls or oscillates
DAMPING_SCHEDULE = (0.5, 0.25)

# Nodes with |f| below this multiple of tol are reported separately
NEAR_ZERO_FACTOR = 10.0

# Z1 must stay inside D_2
JDISK_FIRST_FACTOR_RADIUS = 2.0


@dataclass(frozen=True)
class PicardConfig:
    """
    Configuration of a Picard solve.

    Attributes:
        alpha: Exponent of |f|^α, in (0, 1).
        b: Value pinned at the origin.
        max_iter: Iteration budget.
        tol: Threshold on the sup-norm of successive changes.
        grid: Polar grid of the unit disk.
        relaxation: ω in f ← (1 − ω)f + ωF(f).
        burn_in: Iterations before the successive change must stop increasing.
        divergence_cap: Iteration stops as divergent once sup|f| exceeds it.
    """

    alpha: float
    b: complex = 0j
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL
    grid: PolarGrid = field(default_factory=PolarGrid)
    relaxation: float = 1.0
    burn_in: int = DEFAULT_BURN_IN
    divergence_cap: float = DIVERGENCE_CAP

    def __post_init__(self) -> None:
        _require(0.0 < self.alpha < 1.0, "0 < alpha < 1", alpha=self.alpha)
        _require(self.tol > 0, "tol > 0", tol=self.tol)
        _require(self.max_iter >= 1, "max_iter >= 1", max_iter=self.max_iter)
        _require(0.0 < self.relaxation <= 1.0, "0 < relaxation <= 1", relaxation=self.relaxation)
        _require(self.burn_in >= 0, "burn_in >= 0", burn_in=self.burn_in)
        _require(self.divergence_cap > 0, "divergence_cap > 0", divergence_cap=self.divergence_cap)
        object.__setattr__(self, "b", complex(self.b))

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "b": self.b,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "radius": self.grid.radius,
            "n_r": self.grid.n_r,
            "n_t": self.grid.n_t,
            "relaxation": self.relaxation,
            "burn_in": self.burn_in,
            "divergence_cap": self.divergence_cap,
        }


@dataclass
class DbarSolution:
    """Outcome of a Picard solve; residual_sup is sup over interior nodes of |∂̄f − |f|^α|."""

    field: ComplexField
    residual_sup: float
    iterations: int
    converged: bool
    config: PicardConfig
    reason: str = ""
    trace: list = field(default_factory=list)
    near_zero_nodes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    @property
    def alpha(self) -> float:
        return self.config.alpha

    @property
    def sup(self) -> float:
        return sup_abs(self.field)[0]

    def trace_to_jsonl(self, path: Union[str, Path]) -> None:
        """Write the convergence trace, one JSON object per iteration."""
        lines = [json.dumps(to_serializable(entry), sort_keys=True) for entry in self.trace]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))

    def summary(self) -> dict:
        return {
            "converged": self.converged,
            "reason": self.reason,
            "iterations": self.iterations,
            "residual_sup": self.residual_sup,
            "sup_abs": self.sup,
            "pinned_value": self.field.center,
            "near_zero_nodes": int(self.near_zero_nodes.size),
            "config": self.config.as_dict(),
        }


@dataclass
class JDisk:
    """J-holomorphic disk Z = (Z1, Z2) inside the bidisk D_2 × D_S."""

    Z1: ComplexField
    Z2: ComplexField
    S: float
    alpha: float
    eq25_residual: float
    holomorphy_residual: float

    def __post_init__(self) -> None:
        assert sup_abs(self.Z1)[0] < JDISK_FIRST_FACTOR_RADIUS, "Z1 leaves D_2"
        assert sup_abs(self.Z2)[0] < self.S, "Z2 leaves D_S"


# Cauchy transform ##########################################################


@dataclass(frozen=True)
class _RadialWeights:
    """
    Cell weights of the mode-by-mode Cauchy transform.

    A mode g_k(ρ)e^{ikθ} is carried to the mode k − 1 of Tg. For k <= 0 it
    needs ∫_0^r g_k(ρ)(ρ/r)^{1−k} dρ, for k >= 1 it needs ∫_r^R g_k(ρ)(r/ρ)^{k−1} dρ.
    Both are accumulated cell by cell with g_k linear on each cell, so the
    cell integrals are exact against the power weights. Arrays are indexed
    (ring, mode).
    """

    inner: np.ndarray
    outer: np.ndarray
    inner_decay: np.ndarray
    inner_lower: np.ndarray
    inner_upper: np.ndarray
    outer_decay: np.ndarray
    outer_lower: np.ndarray
    outer_upper: np.ndarray


def _power_integral(exponent: np.ndarray, log_end: np.ndarray) -> np.ndarray:
    """∫_1^{exp(log_end)} t^exponent dt, elementwise."""
    shifted = exponent + 1.0
    safe = np.where(shifted == 0.0, 1.0, shifted)
    value = np.expm1(shifted * log_end) / safe
    return np.where(shifted == 0.0, log_end, value)


@lru_cache(maxsize=8)
def _radial_weights(grid: PolarGrid) -> _RadialWeights:
    modes = np.rint(fft.fftfreq(grid.n_t, 1.0 / grid.n_t)).astype(int)
    # The Nyquist mode would land outside the resolved band
    inner = np.flatnonzero((modes <= 0) & (2 * modes > -grid.n_t))
    outer = np.flatnonzero(modes >= 1)
    index = np.arange(1, grid.n_r + 1, dtype=float)[:, None]
    radii = grid.h * index

    # Cell [r_{i−1}, r_i] against (ρ/r_i)^p
    p = (1 - modes[inner]).astype(float)[None, :]
    with np.errstate(divide="ignore"):
        log_q = np.log((index - 1.0) / index)
    m0 = -_power_integral(p, log_q)
    m1 = -_power_integral(p + 1.0, log_q)

    # Cell [r_i, r_{i+1}] against (r_i/ρ)^m; the outermost ring has none
    m = (modes[outer] - 1).astype(float)[None, :]
    below = index[:-1]
    log_q_out = np.log((below + 1.0) / below)
    n0 = _power_integral(-m, log_q_out)
    n1 = _power_integral(1.0 - m, log_q_out)

    weights = _RadialWeights(
        inner=inner,
        outer=outer,
        inner_decay=np.exp(p * log_q),
        inner_lower=radii * index * (m0 - m1),
        inner_upper=radii * (index * m1 - (index - 1.0) * m0),
        outer_decay=np.exp(-m * log_q_out),
        outer_lower=radii[:-1] * ((below + 1.0) * n0 - below * n1),
        outer_upper=radii[:-1] * below * (n1 - n0),
    )
    logger.debug("Built Cauchy transform weights for %s", grid)
    return weights


def cauchy_transform(g: ComplexField) -> ComplexField:
    """
    Tg(z) = (1/π)∫_D g(w)/(z − w) dA(w), mode by mode in the angle.

    Angular modes come from the FFT of each ring; the origin carries only the
    mode 0. Each mode is linear in ρ between rings, so Tg is exact for data
    of that form, g ≡ 1 included.
    """
    grid = g.grid
    weights = _radial_weights(grid)
    n_r, n_t = grid.n_r, grid.n_t

    origin = np.zeros((1, n_t), dtype=complex)
    origin[0, 0] = g.center
    profile = np.vstack([origin, fft.fft(g.values.astype(complex), axis=1) / n_t])
    spectrum = np.zeros((n_r, n_t), dtype=complex)

    modes = profile[:, weights.inner]
    running = np.zeros(weights.inner.size, dtype=complex)
    for i in range(n_r):
        running = (
            weights.inner_decay[i] * running
            + weights.inner_lower[i] * modes[i]
            + weights.inner_upper[i] * modes[i + 1]
        )
        spectrum[i, weights.inner] = 2.0 * running

    modes = profile[:, weights.outer]
    running = np.zeros(weights.outer.size, dtype=complex)
    for i in range(n_r - 2, -1, -1):
        running = (
            weights.outer_decay[i] * running
            + weights.outer_lower[i] * modes[i + 1]
            + weights.outer_upper[i] * modes[i + 2]
        )
        spectrum[i, weights.outer] = -2.0 * running

    # Tg(0) = −2∫_0^R g_1(ρ) dρ; outer column 0 is the mode 1, which vanishes at ρ = 0
    center = -2.0 * (running[0] + 0.5 * grid.h * modes[1, 0])
    values = fft.ifft(np.roll(spectrum, -1, axis=1), axis=1) * n_t
    return ComplexField(grid, values, center)


# Picard iteration ##########################################################


def _interior_flat(field_: ComplexField) -> np.ndarray:
    """Origin plus all rings but the outermost, flattened."""
    return np.concatenate([[field_.center], field_.values[:-1].ravel()])


def dbar_residual(f: ComplexField, alpha: float) -> ComplexField:
    """∂̄f − |f|^α at every node."""
    return wirtinger_dbar(f) - f.abs().map(lambda v: v**alpha)


def residual_sup(f: ComplexField, alpha: float) -> float:
    return float(np.max(np.abs(_interior_flat(dbar_residual(f, alpha)))))


def solve_picard(cfg: PicardConfig) -> DbarSolution:
    """Iterate f ← b + T(|f|^α) − T(|f|^α)(0) from f ≡ b."""
    grid, alpha, b = cfg.grid, cfg.alpha, cfg.b
    f = ComplexField(grid, np.full((grid.n_r, grid.n_t), b, dtype=complex), b)
    trace = []
    converged, reason = False, "max_iter"
    monotone = True
    previous_change = np.inf
    iteration = 0

    for iteration in range(1, cfg.max_iter + 1):
        transformed = cauchy_transform(f.abs().map(lambda v: v**alpha))
        update = (transformed - transformed.center) + b
        if cfg.relaxation == 1.0:
            candidate = update
        else:
            candidate = f + cfg.relaxation * (update - f)

        change = float(np.max(np.abs(candidate.flat() - f.flat())))
        residual = residual_sup(candidate, alpha)
        trace.append({"iteration": iteration, "sup_change": change, "residual": residual})
        logger.debug("Picard iteration %d: change=%.3e residual=%.3e", iteration, change, residual)
        f = candidate

        if not np.isfinite(change) or sup_abs(f)[0] > cfg.divergence_cap:
            reason = "divergence"
            logger.warning("Picard iteration diverged at iteration %d", iteration)
            break
        if iteration > cfg.burn_in and change > previous_change * (1.0 + MONOTONE_SLACK):
            if monotone:
                logger.warning("Successive change increased at iteration %d", iteration)
            monotone = False
        previous_change = change
        if change < cfg.tol:
            converged = monotone
            reason = "tolerance" if monotone else "non-monotone"
            break

    magnitudes = np.abs(f.flat())
    near_zero = np.flatnonzero(magnitudes < NEAR_ZERO_FACTOR * cfg.tol)
    solution = DbarSolution(
        field=f,
        residual_sup=residual_sup(f, alpha),
        iterations=iteration,
        converged=converged,
        config=cfg,
        reason=reason,
        trace=trace,
        near_zero_nodes=near_zero,
    )
    logger.info(
        "Picard solve alpha=%g b=%s: converged=%s after %d iterations, residual %.3e",
        alpha,
        b,
        converged,
        iteration,
        solution.residual_sup,
    )
    return solution


def solve_damped(cfg: PicardConfig, schedule: Sequence[float] = DAMPING_SCHEDULE) -> DbarSolution:
    """
    solve_picard, retried with each smaller relaxation of `schedule` until a run converges.

    The returned solution is the first converged run, or the last attempt; its
    config records the relaxation that was used.
    """
    solution = solve_picard(cfg)
    for relaxation in schedule:
        if solution.converged:
            break
        if relaxation >= solution.config.relaxation:
            continue
        logger.info(
            "Retrying alpha=%g b=%s with relaxation %g (%s)",
            cfg.alpha,
            cfg.b,
            relaxation,
            solution.reason,
        )
        solution = solve_picard(replace(cfg, relaxation=relaxation))
    return solution


# J-holomorphic disks #######################################################


def eq25_residual(f: ComplexField, alpha: float) -> tuple[ComplexField, ComplexField]:
    """Residuals u_y + v_x and u_x + λ − v_y of the nonlinear Cauchy–Riemann system, λ = −2|f|^α."""
    u, v = f.real, f.imag
    u_x, u_y = partial_x(u), partial_y(u)
    v_x, v_y = partial_x(v), partial_y(v)
    lam = -2.0 * f.abs().map(lambda m: m**alpha)
    return u_y + v_x, u_x + lam - v_y


def build_jdisk(
    f: Union[DbarSolution, ComplexField], S: float, alpha: Optional[float] = None
) -> Union[JDisk, VerificationReport]:
    """Z(z) = (z, f(z)), or a flagged report when the disk does not fit in D_2 × D_S."""
    if isinstance(f, DbarSolution):
        solution, field_ = f, f.field
        alpha = f.alpha if alpha is None else alpha
        if not solution.converged:
            return VerificationReport.inconclusive(
                "jdisk_membership",
                f"Picard solve did not converge ({solution.reason})",
                params={"S": S, **solution.config.as_dict()},
            )
    else:
        field_ = f
    if alpha is None:
        raise ParameterRegimeError("alpha given for a bare field")

    sup, witness = sup_abs(field_)
    Z1 = ComplexField.sample(field_.grid, lambda z: z)
    if sup >= S or sup_abs(Z1)[0] >= JDISK_FIRST_FACTOR_RADIUS:
        logger.info("Disk leaves the bidisk: sup|f| = %.6g >= S = %.6g", sup, S)
        return VerificationReport.from_margin(
            "jdisk_membership",
            margin=S - sup,
            tolerance=0.0,
            witness=witness,
            params={"S": S, "alpha": alpha},
            notes="sup|f| >= S: the disk z -> (z, f(z)) does not fit in D_2 x D_S",
            details={"sup_abs": sup},
        )

    r1, r2 = eq25_residual(field_, alpha)
    eq25 = float(max(np.max(np.abs(_interior_flat(r1))), np.max(np.abs(_interior_flat(r2)))))
    holomorphy = float(np.max(np.abs(_interior_flat(wirtinger_dbar(Z1)))))
    return JDisk(Z1, field_, S, alpha, eq25, holomorphy)


def check_eq9_equivalence(f: ComplexField, alpha: float) -> VerificationReport:
    """The ∂̄-equation residual equals ½(r₂ + i·r₁) node-wise, r₁, r₂ the real-system residuals."""
    r1, r2 = eq25_residual(f, alpha)
    dbar = dbar_residual(f, alpha)
    discrepancy = np.abs(dbar.flat() - 0.5 * (r2.flat() + 1j * r1.flat()))
    index = int(np.argmax(discrepancy))
    scale = max(1.0, float(np.max(np.abs(dbar.flat()))))
    point = f.grid.points_flat()[index]
    return VerificationReport.from_margin(
        "eq9_equivalence",
        margin=-float(discrepancy[index]),
        tolerance=1e-9 * scale,
        witness={"index": index, "position": [point.real, point.imag]},
        params={"alpha": alpha, "n_r": f.grid.n_r, "n_t": f.grid.n_t},
        details={
            "dbar_residual_sup": float(np.max(np.abs(dbar.flat()))),
            "system_residual_sup": float(
                max(np.max(np.abs(r1.flat())), np.max(np.abs(r2.flat())))
            ),
        },
    )
