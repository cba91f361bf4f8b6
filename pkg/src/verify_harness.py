# -*- coding: utf-8 -*-
"""
Executable checks of the no-small-solutions theorems

Every check takes a constructed witness (an exact solution sampled on a grid, a
Picard solution, an ODE trajectory or a polynomial disk), first verifies the
hypotheses of the statement on the discrete object and only then judges its
conclusion. A hypothesis that does not hold yields a hypotheses-not-met report,
never a pass. Pass/fail margins are judged against tol(h) = TOLERANCE_SLOPE·h,
calibrated on the exact explicit disk z ↦ (z, u(Re z)).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.interpolate import CubicHermiteSpline

try:
    from src.dbar_solver import (
        DAMPING_SCHEDULE,
        PicardConfig,
        cauchy_transform,
        check_eq9_equivalence,
        dbar_residual,
        solve_damped,
    )
    from src.explicit_solutions import (
        _abs_power,
        example22_family,
        example44_disk,
        radial_comparison,
    )
    from src.grid_field import (
        CSV_FLOAT_FORMAT,
        ComplexField,
        Node,
        PolarGrid,
        ScalarFieldND,
        gradient_norm_sq,
        lattice_support,
        laplacian,
        observed_order,
        partial_x,
        partial_y,
        stencil_support,
        sup_abs,
        wirtinger_dbar,
    )
    from src.holo_inverse import (
        CertificateContradictionError,
        PowerSeries,
        injective_inverse,
        lemma33_inverse,
        schwarz_pick_lower,
    )
    from src.params_constants import (
        INVERSE_RADIUS_THRESHOLD,
        InequalityParams,
        ParameterRegimeError,
        _require,
        comparison_bound_M,
        divergence_bound_M,
        gamma_star,
        inverse_radii,
        ode_bound_M,
        pseudonorm_bounds,
        salpha,
    )
    from src.reports import VerificationReport
except ImportError:
    from .dbar_solver import (
        DAMPING_SCHEDULE,
        PicardConfig,
        cauchy_transform,
        check_eq9_equivalence,
        dbar_residual,
        solve_damped,
    )
    from .explicit_solutions import (
        _abs_power,
        example22_family,
        example44_disk,
        radial_comparison,
    )
    from .grid_field import (
        CSV_FLOAT_FORMAT,
        ComplexField,
        Node,
        PolarGrid,
        ScalarFieldND,
        gradient_norm_sq,
        lattice_support,
        laplacian,
        observed_order,
        partial_x,
        partial_y,
        stencil_support,
        sup_abs,
        wirtinger_dbar,
    )
    from .holo_inverse import (
        CertificateContradictionError,
        PowerSeries,
        injective_inverse,
        lemma33_inverse,
        schwarz_pick_lower,
    )
    from .params_constants import (
        INVERSE_RADIUS_THRESHOLD,
        InequalityParams,
        ParameterRegimeError,
        _require,
        comparison_bound_M,
        divergence_bound_M,
        gamma_star,
        inverse_radii,
        ode_bound_M,
        pseudonorm_bounds,
        salpha,
    )
    from .reports import VerificationReport

logger = logging.getLogger(__name__)

# tol(h) = TOLERANCE_SLOPE·h
TOLERANCE_SLOPE = 0.5

# Input residuals count towards the tolerance up to RESIDUAL_CAP_SLOPE·h
RESIDUAL_CAP_SLOPE = 10.0

# Lattice nodes closer than this many nodes to {u <= 0} are not tested
SUPPORT_WIDTH = 4
POLAR_STENCIL_WIDTH = 2

NONVANISHING_FLOOR = 1e-3
MIN_VALID_FRACTION = 0.05

DELTA_END = 1e-3
ODE_STEP = 1e-3
MARGIN_MODE_FACTOR = 0.1

CONVERGENCE_ORDER_MIN = 0.9
ROUNDING_FLOOR = 1e-10
RIGHT_INVERSE_LEVELS = (64, 128, 256)

KOBAYASHI_GAP_NOTE = (
    "the pseudonorm lower bound quantifies over all J-holomorphic disks; "
    + "this run reproduces the contradiction for one constructed candidate only"
)


def tolerance_for(h: float) -> float:
    """Pass/fail tolerance tol(h) of a grid with step h."""
    return TOLERANCE_SLOPE * h


# Lattice helpers ###########################################################


def _first_node(u: ScalarFieldND, where: np.ndarray, scores: np.ndarray) -> Node:
    """Node of `where` with the smallest score."""
    flat = np.where(where, scores, np.inf).ravel()
    return u.node_at(int(np.argmin(flat)))


def _quasilinear_residual(
    u: ScalarFieldND, p: InequalityParams, width: int
) -> tuple[np.ndarray, np.ndarray]:
    """u·Δu − B|u|^{1+ε} − C|∇u|² and the nodes where it is tested."""
    lap = laplacian(u)
    grad = gradient_norm_sq(u)
    positive = u.mask & (u.values > 0)
    valid = lap.mask & grad.mask & lattice_support(positive, width)
    residual = (
        u.values * lap.values
        - p.B * _abs_power(u.values, 1.0 + p.epsilon)
        - p.C * grad.values
    )
    return residual, valid


def _hypothesis_failure(
    check_id: str,
    u: ScalarFieldND,
    residual: np.ndarray,
    valid: np.ndarray,
    tol: float,
    params: dict,
    statement: str,
) -> Optional[VerificationReport]:
    if not valid.any():
        return None
    worst = float(np.min(residual[valid]))
    if worst >= -tol:
        return None
    witness = _first_node(u, valid, residual)
    logger.warning("%s: %s violated by %.3e at %s", check_id, statement, -worst, witness)
    return VerificationReport.hypotheses_not_met(
        check_id,
        f"{statement} violated by {-worst:.6g}",
        tolerance=tol,
        witness=witness,
        params=params,
        details={"hypothesis_residual_min": worst},
    )


# Lattice checks ############################################################


def check_no_small_solutions(
    u: ScalarFieldND, p: InequalityParams, support_width: int = SUPPORT_WIDTH
) -> VerificationReport:
    """u(0) = 0 or sup u > comparison_bound_M(p), for u >= 0 with Δu − B u^ε >= 0 on {u > 0}."""
    check_id = "no_small_solutions"
    M = comparison_bound_M(p)
    tol = tolerance_for(u.spacing)
    params = {**p.as_dict(), "h": u.spacing, "M": M}

    negative = u.mask & (u.values < -tol)
    if negative.any():
        return VerificationReport.hypotheses_not_met(
            check_id,
            f"u < 0 at {int(negative.sum())} nodes",
            tolerance=tol,
            witness=_first_node(u, negative, u.values),
            params=params,
        )

    lap = laplacian(u)
    valid = lap.mask & lattice_support(u.mask & (u.values > 0), support_width)
    residual = lap.values - p.B * _abs_power(u.values, p.epsilon)
    failure = _hypothesis_failure(
        check_id, u, residual, valid, tol, params, "Δu − B u^ε >= 0 on {u > 0}"
    )
    if failure is not None:
        return failure

    sup, witness = sup_abs(u)
    origin_value = u.value_at_center()
    details = {"sup": sup, "u_at_origin": origin_value, "tested_nodes": int(valid.sum())}
    if origin_value <= 0.0:
        return VerificationReport.from_margin(
            check_id,
            margin=math.inf,
            tolerance=tol,
            witness=witness,
            params=params,
            notes="u(0) = 0: the statement holds vacuously",
            details=details,
        )
    return VerificationReport.from_margin(
        check_id,
        margin=sup - M,
        tolerance=tol,
        witness=witness,
        params=params,
        notes="margin = sup u − M",
        details=details,
    )


def probe_maximum_principle(
    u: ScalarFieldND, p: InequalityParams, support_width: int = SUPPORT_WIDTH
) -> VerificationReport:
    """The maximum of u over the lattice is attained on its boundary layer."""
    check_id = "maximum_principle"
    tol = tolerance_for(u.spacing)
    params = {**p.as_dict(), "h": u.spacing}

    if not (u.mask & (u.values > 0)).any():
        return VerificationReport.hypotheses_not_met(
            check_id, "no node with u > 0", tolerance=tol, params=params
        )
    residual, valid = _quasilinear_residual(u, p, support_width)
    failure = _hypothesis_failure(
        check_id, u, residual, valid, tol, params, "uΔu − B|u|^{1+ε} − C|∇u|² >= 0 on {u > 0}"
    )
    if failure is not None:
        return failure

    boundary = u.mask & ~lattice_support(u.mask, 1)
    interior = u.mask & ~boundary
    boundary_max = float(np.max(u.values[boundary]))
    interior_max = float(np.max(u.values[interior])) if interior.any() else -math.inf
    witness = _first_node(u, u.mask, -u.values)
    return VerificationReport.from_margin(
        check_id,
        margin=boundary_max - interior_max,
        tolerance=tol,
        witness=witness,
        params=params,
        notes="margin = boundary-layer max − interior max",
        details={"boundary_max": boundary_max, "interior_max": interior_max},
    )


def check_divergence_bound(
    u: ScalarFieldND, p: InequalityParams, support_width: int = SUPPORT_WIDTH
) -> VerificationReport:
    """u > 0 everywhere implies sup u > divergence_bound_M(p); equivalently sup u <= M forces a node with u <= 0."""
    check_id = "divergence_bound"
    M = divergence_bound_M(p)
    tol = tolerance_for(u.spacing)
    params = {**p.as_dict(), "h": u.spacing, "M": M}

    residual, valid = _quasilinear_residual(u, p, support_width)
    failure = _hypothesis_failure(
        check_id, u, residual, valid, tol, params, "uΔu − B|u|^{1+ε} − C|∇u|² >= 0"
    )
    if failure is not None:
        return failure

    sup, witness = sup_abs(u)
    nonpositive = u.mask & (u.values <= 0)
    if nonpositive.any():
        return VerificationReport.from_margin(
            check_id,
            margin=math.inf,
            tolerance=tol,
            witness=_first_node(u, nonpositive, u.values),
            params=params,
            notes="u <= 0 at some node: the corollary form holds",
            details={"sup": sup, "nonpositive_nodes": int(nonpositive.sum())},
        )
    return VerificationReport.from_margin(
        check_id,
        margin=sup - M,
        tolerance=tol,
        witness=witness,
        params=params,
        notes="margin = sup u − M",
        details={"sup": sup, "tested_nodes": int(valid.sum())},
    )


def _default_points_per_axis(n: int) -> int:
    return {1: 201, 2: 61, 3: 17}.get(n, 4 * n + 3)


def _random_positive_field(
    rng: np.random.Generator, n: int, points_per_axis: int, top: float, modes: int = 4
) -> ScalarFieldND:
    """Smooth random field rescaled to [floor·top, top] on the ball."""
    frequencies = rng.uniform(-3.0, 3.0, size=(modes, n))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=modes)
    amplitudes = rng.normal(size=modes)

    def func(x):
        return sum(
            a * np.cos(np.tensordot(w, x, axes=1) + phase)
            for a, w, phase in zip(amplitudes, frequencies, phases)
        )

    raw = ScalarFieldND.sample(func, n, points_per_axis)
    inside = raw.values[raw.mask]
    low, high = float(inside.min()), float(inside.max())
    floor = rng.uniform(0.05, 0.95)
    spread = high - low if high > low else 1.0
    scaled = top * (floor + (1.0 - floor) * (raw.values - low) / spread)
    return raw.with_values(scaled)


def adversarial_divergence_search(
    p: InequalityParams,
    trials: int = 20,
    seed: int = 0,
    points_per_axis: Optional[int] = None,
) -> VerificationReport:
    """Random positive fields with sup u = M must all violate uΔu >= B|u|^{1+ε} + C|∇u|²."""
    check_id = "adversarial_divergence_search"
    M = divergence_bound_M(p)
    points_per_axis = points_per_axis or _default_points_per_axis(p.n)
    rng = np.random.default_rng(seed)
    violations = []
    tol = math.nan

    for trial in range(trials):
        u = _random_positive_field(rng, p.n, points_per_axis, M)
        tol = tolerance_for(u.spacing)
        residual, valid = _quasilinear_residual(u, p, 1)
        violations.append(-float(np.min(residual[valid])))
        logger.debug("Adversarial trial %d: violation %.3e", trial, violations[-1])

    margins = np.array(violations) - tol
    weakest = int(np.argmin(margins))
    counterexamples = np.flatnonzero(margins <= 0).tolist()
    if counterexamples:
        logger.warning("Adversarial search found %d candidate counterexamples", len(counterexamples))
    return VerificationReport.from_margin(
        check_id,
        margin=float(margins[weakest]),
        tolerance=0.0,
        witness={"trial": weakest},
        params={**p.as_dict(), "M": M, "trials": trials, "seed": seed, "points_per_axis": points_per_axis},
        notes=f"randomized search, residual tolerance {tol:.6g}; pass means no counterexample found",
        details={"violations": violations, "counterexamples": counterexamples},
    )


# Polar checks ##############################################################


def _valid_polar_nodes(f: ComplexField, floor: float) -> tuple[np.ndarray, np.ndarray]:
    """Nonvanishing ring mask and the flat (origin first) mask of nodes with a full stencil."""
    grid = f.grid
    nonvanishing = np.abs(f.values) > floor
    rings, center = stencil_support(
        grid, nonvanishing & grid.interior_mask(), abs(f.center) > floor, POLAR_STENCIL_WIDTH
    )
    return nonvanishing, np.concatenate([[center], rings.ravel()])


def _polar_witness(f: ComplexField, index: int) -> Node:
    point = f.grid.points_flat()[index]
    return Node(index, (float(point.real), float(point.imag)))


def _statement_margin(f: ComplexField, values: np.ndarray, valid: np.ndarray) -> tuple[float, Node]:
    scores = np.where(valid, values, np.inf)
    index = int(np.argmin(scores))
    return float(scores[index]), _polar_witness(f, index)


def _scaled_input_residual(f: ComplexField, alpha: float, valid: np.ndarray) -> float:
    """max of 2(1−α)|f|^{−α}·|∂̄f − |f|^α| over the tested nodes."""
    residual = np.abs(dbar_residual(f, alpha).flat())[valid]
    magnitude = np.abs(f.flat())[valid]
    return float(np.max(2.0 * (1.0 - alpha) * magnitude ** (-alpha) * residual))


def check_chain(
    f: ComplexField, alpha: float, gamma: Optional[float] = None, floor: float = NONVANISHING_FLOOR
) -> VerificationReport:
    """
    Inequality chain for ρ = |f|^{1−α} and ζ = ρ^γ on the nodes where f does not vanish.

    (a) Δζ >= 2α(1−α)γρ^{γ−2}, only for γ >= (2−α)/(2−2α);
    (b) (2/γ)ρ^{2−γ}Δζ >= 4α(1−α) + (2(γ−1) − α/(1−α))|∇ρ|²;
    (c) ζΔζ >= 2α(1−α)γζ^{2−2/γ} + ((2(γ−1) − α/(1−α))/(2γ))|∇ζ|².
    """
    check_id = "inequality_chain"
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    gamma = gamma_star(alpha) if gamma is None else gamma
    _require(gamma > 0, "gamma > 0", gamma=gamma)
    grid = f.grid
    tol = tolerance_for(grid.h)
    params = {"alpha": alpha, "gamma": gamma, "n_r": grid.n_r, "n_t": grid.n_t, "floor": floor}

    _, valid = _valid_polar_nodes(f, floor)
    if valid.sum() < MIN_VALID_FRACTION * grid.node_count:
        return VerificationReport.hypotheses_not_met(
            check_id,
            f"f vanishes on too many nodes ({int(valid.sum())} of {grid.node_count} testable)",
            tolerance=tol,
            params=params,
        )
    input_residual = float(np.max(np.abs(dbar_residual(f, alpha).flat())[valid]))
    if input_residual > RESIDUAL_CAP_SLOPE * grid.h:
        return VerificationReport.hypotheses_not_met(
            check_id,
            f"∂f/∂z̄ = |f|^α violated by {input_residual:.6g} on tested nodes",
            tolerance=tol,
            params=params,
            details={"input_residual": input_residual},
        )
    tolerance = tol + input_residual

    rho = f.abs().map(lambda m: m ** (1.0 - alpha))
    zeta = rho.map(lambda v: v**gamma)
    lap_zeta = laplacian(zeta).flat().real
    grad_rho_sq = (partial_x(rho).flat() ** 2 + partial_y(rho).flat() ** 2).real
    grad_zeta_sq = (partial_x(zeta).flat() ** 2 + partial_y(zeta).flat() ** 2).real
    r = np.where(valid, rho.flat().real, 1.0)
    z = np.where(valid, zeta.flat().real, 1.0)
    coefficient = 2.0 * (gamma - 1.0) - alpha / (1.0 - alpha)
    base = 2.0 * alpha * (1.0 - alpha) * gamma

    statements = {
        "rho_form": (2.0 / gamma) * r ** (2.0 - gamma) * lap_zeta
        - 4.0 * alpha * (1.0 - alpha)
        - coefficient * grad_rho_sq,
        "zeta_form": z * lap_zeta
        - base * z ** (2.0 - 2.0 / gamma)
        - coefficient / (2.0 * gamma) * grad_zeta_sq,
    }
    notes = []
    if gamma >= (2.0 - alpha) / (2.0 - 2.0 * alpha) - 1e-15:
        statements = {"power_laplacian": lap_zeta - base * r ** (gamma - 2.0), **statements}
    else:
        notes.append(
            f"gradient coefficient 2(γ−1) − α/(1−α) = {coefficient:.6g} is negative; "
            + "the lower bound on Δζ is skipped"
        )

    details = {"input_residual": input_residual, "tested_nodes": int(valid.sum())}
    margin, witness = math.inf, None
    for name, values in statements.items():
        value, node = _statement_margin(f, values, valid)
        details[name] = {"margin": value, "witness": node}
        if value < margin:
            margin, witness = value, node
    return VerificationReport.from_margin(
        check_id,
        margin=margin,
        tolerance=tolerance,
        witness=witness,
        params=params,
        notes="; ".join(notes),
        details=details,
    )


def _ring_windings(f: ComplexField, nonvanishing: np.ndarray) -> np.ndarray:
    """Winding numbers of f around 0 along the rings that avoid the zero set."""
    full = nonvanishing.all(axis=1)
    values = np.where(nonvanishing, f.values, 1.0)
    increments = np.angle(np.roll(values, -1, axis=1) / values)
    windings = np.rint(increments.sum(axis=1) / (2.0 * np.pi)).astype(int)
    return np.where(full, windings, 0)


def polar_branch(f: ComplexField, alpha: float, floor: float = NONVANISHING_FLOOR) -> ComplexField:
    """g = f^{1−α} on a branch unwrapped ring by ring from the origin; zero where f vanishes."""
    nonvanishing = np.abs(f.values) > floor
    phase = np.unwrap(np.angle(f.values), axis=1)
    previous = np.full(f.grid.n_t, np.angle(f.center))
    previous_valid = np.full(f.grid.n_t, abs(f.center) > floor)
    for i in range(f.grid.n_r):
        joint = previous_valid & nonvanishing[i]
        if joint.any():
            shift = np.rint(np.median(phase[i, joint] - previous[joint]) / (2.0 * np.pi))
            phase[i] -= 2.0 * np.pi * shift
        previous, previous_valid = phase[i], nonvanishing[i]
    exponent = 1.0 - alpha
    values = np.where(
        nonvanishing, np.abs(f.values) ** exponent * np.exp(1j * exponent * phase), 0.0
    )
    center = abs(f.center) ** exponent * np.exp(1j * exponent * np.angle(f.center))
    return f.with_values(values, center)


def check_polar_system(
    f: ComplexField, alpha: float, floor: float = NONVANISHING_FLOOR
) -> VerificationReport:
    """
    Polar form of ∂f/∂z̄ = |f|^α for g = f^{1−α} = ρe^{iφ}.

    ρ_x − ρφ_y = 2(1−α)cos(φ/(1−α)) and ρ_y + ρφ_x = −2(1−α)sin(φ/(1−α)),
    together with the sum-of-squares identity. Phase derivatives come from the
    logarithmic derivative of f, so the branch only has to exist.
    """
    check_id = "polar_system"
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    grid = f.grid
    params = {"alpha": alpha, "n_r": grid.n_r, "n_t": grid.n_t, "floor": floor}
    tol = tolerance_for(grid.h)

    nonvanishing, valid = _valid_polar_nodes(f, floor)
    windings = _ring_windings(f, nonvanishing)
    if np.any(windings != 0):
        ring = int(np.flatnonzero(windings)[0])
        return VerificationReport.hypotheses_not_met(
            check_id,
            f"no single-valued branch of f^(1-alpha): f winds {int(windings[ring])} times "
            + f"around 0 on ring {ring + 1}",
            tolerance=tol,
            params=params,
        )
    if valid.sum() < MIN_VALID_FRACTION * grid.node_count:
        return VerificationReport.hypotheses_not_met(
            check_id, "f vanishes on too many nodes", tolerance=tol, params=params
        )

    input_residual = _scaled_input_residual(f, alpha, valid)
    tolerance = tol + min(input_residual, RESIDUAL_CAP_SLOPE * grid.h)

    g = polar_branch(f, alpha, floor)
    rho = f.abs().map(lambda m: m ** (1.0 - alpha))
    safe = f.map(lambda v: np.where(np.abs(v) > 0, v, 1.0))
    rho_x, rho_y = partial_x(rho).flat().real, partial_y(rho).flat().real
    phi_x = (1.0 - alpha) * (partial_x(f).flat() / safe.flat()).imag
    phi_y = (1.0 - alpha) * (partial_y(f).flat() / safe.flat()).imag
    r = rho.flat().real
    direction = safe.flat() / np.abs(safe.flat())
    cosine, sine = direction.real, direction.imag
    scale = 2.0 * (1.0 - alpha)

    first = rho_x - r * phi_y - scale * cosine
    second = rho_y + r * phi_x + scale * sine
    squares = rho_x**2 + rho_y**2 + (phi_x**2 + phi_y**2) * r**2 + 2.0 * (rho_y * phi_x - rho_x * phi_y) * r
    identity = (np.sqrt(np.maximum(squares, 0.0)) - scale) / math.sqrt(2.0)

    details = {"input_residual": input_residual, "tested_nodes": int(valid.sum())}
    margin, witness = math.inf, None
    for name, values in (("real_part", first), ("imaginary_part", second), ("sum_of_squares", identity)):
        value, node = _statement_margin(f, -np.abs(values), valid)
        details[name] = {"margin": value, "witness": node}
        if value < margin:
            margin, witness = value, node
    details["branch_abs_max"] = float(np.max(np.abs(g.flat())))
    return VerificationReport.from_margin(
        check_id,
        margin=margin,
        tolerance=tolerance,
        witness=witness,
        params=params,
        notes="margin = −max residual of the polar system",
        details=details,
    )


# ODE theorems ##############################################################


@dataclass
class OdeTrajectory:
    """
    Samples (t, u, u', u'') of uu'' = (1 + μ)B|u|^{1+ε} + C(u')², μ = 0 in equality mode.

    Attributes:
        left_limit: u(1⁻), from continuing the integration to t = 1.
        fault: Non-empty when u left (0, ∞) during the integration.
    """

    t: np.ndarray
    u: np.ndarray
    du: np.ndarray
    d2u: np.ndarray
    step: float
    B: float
    C: float
    epsilon: float
    mode: str = "equality"
    left_limit: float = math.nan
    left_limit_du: float = math.nan
    fault: str = ""

    @property
    def sup(self) -> float:
        """sup of u over [0, 1)."""
        return float(np.nanmax(np.append(self.u, self.left_limit)))

    @property
    def params(self) -> dict:
        return {
            "B": self.B,
            "C": self.C,
            "epsilon": self.epsilon,
            "u0": float(self.u[0]),
            "du0": float(self.du[0]),
            "mode": self.mode,
            "step": self.step,
        }

    def residual(self) -> np.ndarray:
        """uu'' − B|u|^{1+ε} − C(u')² at the samples."""
        return self.u * self.d2u - self.B * self.u ** (1.0 + self.epsilon) - self.C * self.du**2

    def spline(self) -> CubicHermiteSpline:
        """C¹ interpolant of u on [0, 1], including the left limit at t = 1."""
        t = np.append(self.t, 1.0)
        return CubicHermiteSpline(
            t, np.append(self.u, self.left_limit), np.append(self.du, self.left_limit_du)
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "u": self.u, "du": self.du, "d2u": self.d2u})

    def to_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)


def _rk4_step(rhs: Callable, y: np.ndarray, step: float) -> np.ndarray:
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * step * k1)
    k3 = rhs(y + 0.5 * step * k2)
    k4 = rhs(y + step * k3)
    return y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_ode_ineq(
    B: float,
    C: float,
    epsilon: float,
    u0: float,
    du0: float = 0.0,
    mode: str = "equality",
    step: float = ODE_STEP,
    delta_end: float = DELTA_END,
) -> OdeTrajectory:
    """
    Integrate uu'' = (1 + μ)B|u|^{1+ε} + C(u')² on [0, 1 − δ_end] by classical RK4.

    μ = 0 in equality mode and MARGIN_MODE_FACTOR in margin mode. The integration
    runs in w = u^{1−C}, where the equation reads w'' = (1−C)(1+μ)B w^{(ε−C)/(1−C)}.
    """
    _require(B > 0, "B > 0", B=B)
    _require(-1.0 <= C < 1.0, "-1 <= C < 1", C=C)
    _require(epsilon <= C, "epsilon <= C", epsilon=epsilon, C=C)
    _require(u0 > 0, "u0 > 0", u0=u0)
    _require(du0 >= 0, "du0 >= 0", du0=du0)
    _require(mode in ("equality", "margin"), "mode in {equality, margin}", mode=mode)
    _require(step > 0 and 0 < delta_end < 1, "step > 0 and 0 < delta_end < 1", step=step, delta_end=delta_end)

    mu = 0.0 if mode == "equality" else MARGIN_MODE_FACTOR
    gain = (1.0 - C) * (1.0 + mu) * B
    exponent = (epsilon - C) / (1.0 - C)

    def rhs(y):
        return np.array([y[1], gain * y[0] ** exponent])

    n_steps = math.ceil((1.0 - delta_end) / step)
    h = (1.0 - delta_end) / n_steps
    states = np.empty((n_steps + 1, 2))
    states[0] = u0 ** (1.0 - C), (1.0 - C) * u0 ** (-C) * du0
    fault = ""
    last = n_steps
    for k in range(n_steps):
        states[k + 1] = _rk4_step(rhs, states[k], h)
        if not np.all(np.isfinite(states[k + 1])) or states[k + 1, 0] <= 0:
            fault = f"w left (0, inf) at t = {(k + 1) * h:.6g}"
            logger.warning("ODE integration fault: %s", fault)
            last = k
            break

    states = states[: last + 1]
    t = h * np.arange(last + 1)

    def to_u(state):
        u = state[..., 0] ** (1.0 / (1.0 - C))
        du = state[..., 1] * u**C / (1.0 - C)
        return u, du

    u, du = to_u(states)
    d2u = ((1.0 + mu) * B * u ** (1.0 + epsilon) + C * du**2) / u

    left_limit = left_limit_du = math.nan
    if not fault:
        end = _rk4_step(rhs, states[-1], 1.0 - t[-1])
        left_limit, left_limit_du = (float(v) for v in to_u(end))
    logger.debug("ODE trajectory B=%g C=%g eps=%g u0=%g: u(1-)=%.6g", B, C, epsilon, u0, left_limit)
    return OdeTrajectory(
        t, u, du, d2u, h, B, C, epsilon, mode, left_limit, left_limit_du, fault
    )


def check_ode_trajectory(traj: OdeTrajectory) -> VerificationReport:
    """Positivity of u on [0, 1) and sup over [0, 1) > ode_bound_M."""
    check_id = "ode_trajectory"
    p = InequalityParams(B=traj.B, C=traj.C, epsilon=traj.epsilon, n=1)
    M = ode_bound_M(p)
    params = {**traj.params, "M": M}
    if traj.fault:
        return VerificationReport.from_margin(
            check_id,
            margin=-math.inf,
            tolerance=0.0,
            params=params,
            notes=f"discretization fault: {traj.fault}",
        )

    residual = traj.residual()
    scale = np.maximum(1.0, traj.B * traj.u ** (1.0 + traj.epsilon))
    if np.min(residual / scale) < -1e-9:
        return VerificationReport.hypotheses_not_met(
            check_id, "trajectory violates the differential inequality", params=params
        )

    positivity = float(np.min(traj.u))
    bound = traj.sup - M
    index = int(np.argmax(traj.u))
    return VerificationReport.from_margin(
        check_id,
        margin=min(positivity, bound),
        tolerance=0.0,
        witness={"t": float(traj.t[index]) if traj.u[index] >= traj.left_limit else 1.0},
        params=params,
        notes="margin = min(min u, sup u − M); sup includes the left limit u(1-)",
        details={
            "min_u": positivity,
            "sup_u": traj.sup,
            "sup_sampled": float(np.max(traj.u)),
            "left_limit": traj.left_limit,
            "residual_min": float(np.min(residual)),
        },
    )


def embed_trajectory(traj: OdeTrajectory, points_per_axis: int = 401) -> ScalarFieldND:
    """Even extension u(|x|) of a trajectory started with u'(0) = 0, sampled on (−1, 1)."""
    _require(traj.du[0] == 0.0, "du0 = 0", du0=float(traj.du[0]))
    spline = traj.spline()
    return ScalarFieldND.sample(lambda x: spline(np.abs(x[0])), 1, points_per_axis)


def lattice_resolves(traj: OdeTrajectory, points_per_axis: int = 401) -> bool:
    """Whether the curvature of u stays below tol(h)/h² on the embedding lattice."""
    h = 2.0 / (points_per_axis - 1)
    return bool(np.max(np.abs(traj.d2u)) * h**2 <= tolerance_for(h))


# ∂̄ machinery ##############################################################


def _interior_nodes(grid: PolarGrid) -> np.ndarray:
    """Flat mask of the origin and every ring but the outermost."""
    return np.concatenate([[True], grid.interior_mask().ravel()])


RIGHT_INVERSE_DENSITIES = {
    "one": lambda z: np.ones_like(z),
    "gaussian": lambda z: np.exp(-np.abs(z) ** 2),
    "quadratic": lambda z: np.abs(z) ** 2,
}


def check_right_inverse(
    levels: Sequence[int] = RIGHT_INVERSE_LEVELS,
    densities: Optional[Mapping[str, Callable]] = None,
) -> VerificationReport:
    """Convergence of T1 → z̄ and of ∂̄(Tg) → g in sup-norm over the interior nodes."""
    check_id = "right_inverse"
    densities = RIGHT_INVERSE_DENSITIES if densities is None else densities
    errors = {"t_one": []}
    errors.update({name: [] for name in densities})

    for n_r in levels:
        grid = PolarGrid(1.0, n_r, n_r)
        interior = _interior_nodes(grid)
        transformed = cauchy_transform(ComplexField.sample(grid, lambda z: np.ones_like(z)))
        conjugate = np.conj(grid.points_flat())
        errors["t_one"].append(float(np.max(np.abs(transformed.flat() - conjugate)[interior])))
        for name, density in densities.items():
            g = ComplexField.sample(grid, density)
            residual = wirtinger_dbar(cauchy_transform(g)) - g
            errors[name].append(float(np.max(np.abs(residual.flat())[interior])))
        logger.debug("Right inverse at n_r=%d: %s", n_r, {k: v[-1] for k, v in errors.items()})

    # Errors at rounding level carry no order
    orders = {
        name: [
            math.inf if fine < ROUNDING_FLOOR else observed_order(coarse, fine)
            for coarse, fine in zip(values, values[1:])
        ]
        for name, values in errors.items()
    }
    worst_name = min(orders, key=lambda name: min(orders[name], default=math.inf))
    worst = min(orders[worst_name], default=math.inf)
    return VerificationReport.from_margin(
        check_id,
        margin=worst - CONVERGENCE_ORDER_MIN,
        tolerance=0.0,
        witness={"quantity": worst_name},
        params={"levels": list(levels)},
        notes=f"margin = min observed order − {CONVERGENCE_ORDER_MIN}",
        details={"errors": errors, "orders": orders},
    )


def _damped_solution(
    alpha: float,
    b: complex,
    grid: PolarGrid,
    max_iter: int,
    tol: float,
    relaxation: float,
    damping: Sequence[float],
):
    return solve_damped(
        PicardConfig(alpha, b, max_iter, tol, grid, relaxation=relaxation), schedule=damping
    )


def theorem11_sweep(
    alphas: Iterable[float] = (0.25, 0.5, 2.0 / 3.0, 0.75),
    bs: Iterable[complex] = (1e-3, 1e-2),
    grid: Optional[PolarGrid] = None,
    max_iter: int = 500,
    tol: float = 1e-8,
    relaxation: float = 1.0,
    damping: Sequence[float] = DAMPING_SCHEDULE,
) -> list[VerificationReport]:
    """
    sup|f| > S_α for every converged Picard solution with f(0) = b ≠ 0.

    Runs that stall or oscillate at `relaxation` are retried with each smaller
    relaxation of `damping` before they are reported inconclusive.
    """
    grid = grid or PolarGrid(1.0, 48, 64)
    reports = []
    for alpha in alphas:
        S = salpha(alpha)
        for b in bs:
            solution = _damped_solution(alpha, b, grid, max_iter, tol, relaxation, damping)
            params = {**solution.config.as_dict(), "S": S}
            if not solution.converged:
                reports.append(
                    VerificationReport.inconclusive(
                        "theorem11",
                        f"Picard solve did not converge ({solution.reason})",
                        params=params,
                        details=solution.summary(),
                    )
                )
                continue
            sup, witness = sup_abs(solution.field)
            reports.append(
                VerificationReport.from_margin(
                    "theorem11",
                    margin=sup - S,
                    tolerance=0.0,
                    witness=witness,
                    params=params,
                    notes="margin = sup|f| − S_alpha",
                    details=solution.summary(),
                )
            )
    return reports


# Kobayashi–Royden experiment ###############################################


def kobayashi_experiment(
    alpha: float,
    b: complex,
    r: float = 1.9,
    Z1: Optional[PowerSeries] = None,
    grid: Optional[PolarGrid] = None,
    max_iter: int = 500,
    tol: float = 1e-8,
    relaxation: float = 1.0,
    damping: Sequence[float] = DAMPING_SCHEDULE,
) -> VerificationReport:
    """
    Try to fit a disk through (0, b) tangent to (1, 0) of radius r into D_2 × D_S.

    The first component is normalized by the quantitative inverse φ, whose image
    radius max|φ| over the closed unit disk is reported next to r·η; the second
    solves ∂f/∂z̄ = |f|^α with f(0) = b, retried with damping as in
    theorem11_sweep. A pass reproduces the contradiction sup|f| > S_α, so no
    such disk fits.
    """
    check_id = "kobayashi"
    _require(0.0 < alpha < 1.0, "0 < alpha < 1", alpha=alpha)
    S = salpha(alpha)
    b = complex(b)
    _require(abs(b) < S, "|b| < S_alpha", b=abs(b), S=S)
    _require(r > INVERSE_RADIUS_THRESHOLD, "r > 4*sqrt(2)/3", r=r)
    lower, upper = pseudonorm_bounds()
    grid = grid or PolarGrid(1.0, 48, 64)
    params = {
        "alpha": alpha,
        "b": b,
        "r": r,
        "S": S,
        "n_r": grid.n_r,
        "n_t": grid.n_t,
        "max_iter": max_iter,
        "relaxation": relaxation,
    }
    bounds = {"lower": lower, "upper_at_zero": upper}

    if b == 0:
        return VerificationReport.from_margin(
            check_id,
            margin=S,
            tolerance=0.0,
            params=params,
            notes="b = 0: Z(z) = (z, 0) lies in D_2 x D_S, so the pseudonorm at b = 0 is at most 1/2; "
            + KOBAYASHI_GAP_NOTE,
            details={"pseudonorm_bounds": bounds, "sup_abs": 0.0},
        )

    Z1 = Z1 or PowerSeries.identity()
    phi = lemma33_inverse(Z1, r)
    eta, _ = inverse_radii(r)
    image = {
        "phi_image_radius": phi.report.details["max_abs_phi"],
        "phi_image_bound": r * eta,
    }
    if not phi.report.passed:
        return VerificationReport.hypotheses_not_met(
            check_id,
            "normalizing inverse of Z1 failed its certificate",
            params=params,
            details={"inverse": phi.report.as_dict(), "pseudonorm_bounds": bounds, **image},
        )

    solution = _damped_solution(alpha, b, grid, max_iter, tol, relaxation, damping)
    params["relaxation"] = solution.config.relaxation
    details = {
        "pseudonorm_bounds": bounds,
        "inverse": phi.report.as_dict(),
        "picard": solution.summary(),
        "candidate_pseudonorm": 1.0 / r,
        **image,
    }
    image_note = "max|phi| = {phi_image_radius:.6g} <= r*eta = {phi_image_bound:.6g}".format(**image)
    if not solution.converged:
        return VerificationReport.inconclusive(
            check_id,
            f"Picard solve did not converge ({solution.reason}); {image_note}; " + KOBAYASHI_GAP_NOTE,
            params=params,
            details=details,
        )
    sup, witness = sup_abs(solution.field)
    details["sup_abs"] = sup
    logger.info(
        "Kobayashi experiment alpha=%g b=%s: sup|f| = %.6g vs S = %.6g, max|phi| = %.6g",
        alpha,
        b,
        sup,
        S,
        image["phi_image_radius"],
    )
    return VerificationReport.from_margin(
        check_id,
        margin=sup - S,
        tolerance=0.0,
        witness=witness,
        params=params,
        notes=f"margin = sup|f| − S_alpha; sup|f| = {sup:.6g}; {image_note}; " + KOBAYASHI_GAP_NOTE,
        details=details,
    )


# Inverse certificates ######################################################


def check_injectivity_certificates(
    f: PowerSeries, delta: float, eta: float, targets: int = 100, seed: int = 0
) -> VerificationReport:
    """Every inversion of a random target in D_s carries a winding count of one."""
    check_id = "injectivity_certificates"
    psi = injective_inverse(f, delta, eta)
    rng = np.random.default_rng(seed)
    w = psi.s * np.sqrt(rng.uniform(0.0, 1.0, targets)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, targets))
    w *= 1.0 - 1e-9
    params = {"delta": delta, "eta": eta, "s": psi.s, "targets": targets, "seed": seed, "coefficients": f.coefficients}
    try:
        z = psi(w)
    except CertificateContradictionError as error:
        return VerificationReport.from_margin(
            check_id, margin=-1.0, tolerance=0.0, params=params, notes=str(error)
        )
    distances = np.array([c.min_abs_on_contour for c in psi.certificates])
    weakest = int(np.argmin(distances))
    return VerificationReport.from_margin(
        check_id,
        margin=float(distances[weakest]),
        tolerance=0.0,
        witness=w[weakest],
        params=params,
        notes="margin = min |f − w| on the certificate contours",
        details={
            "counts": sorted({c.count for c in psi.certificates}),
            "round_trip_max": float(np.max(np.abs(f(z) - w))),
        },
    )


# Suites ####################################################################


def _param(params: Mapping, key: str, default):
    value = params.get(key)
    return default if value is None else value


def _grid(params: Mapping, n_r: int, n_t: int) -> PolarGrid:
    return PolarGrid(1.0, int(_param(params, "n_r", n_r)), int(_param(params, "n_t", n_t)))


def _solver_options(params: Mapping) -> dict:
    return {
        "max_iter": int(_param(params, "max_iter", 500)),
        "relaxation": float(_param(params, "relaxation", 1.0)),
    }


def _chain_jobs(params: Mapping, seed: int) -> list[Callable]:
    alpha = float(_param(params, "alpha", 0.5))
    b = float(abs(complex(_param(params, "b", 0.01))))
    gamma = params.get("gamma")
    grid = _grid(params, 64, 128)

    def job():
        _, f = example44_disk(b, alpha, n_r=grid.n_r, n_t=grid.n_t)
        return [check_chain(f, alpha, gamma), check_polar_system(f, alpha), check_eq9_equivalence(f, alpha)]

    return [job]


def _nss_jobs(params: Mapping, seed: int) -> list[Callable]:
    family = _param(params, "family", "example22")
    p = InequalityParams(
        B=float(_param(params, "B", 1.0)),
        epsilon=float(_param(params, "epsilon", 0.5)),
        n=int(_param(params, "n", 1 if family == "example22" else 2)),
    )
    points = int(_param(params, "points", _default_points_per_axis(p.n) * 2 - 1))

    def job():
        if family == "example22":
            _require(p.n == 1, "n = 1 for the example22 family", n=p.n)
            u = example22_family(
                p.B, p.epsilon, float(_param(params, "c1", 0.2)), float(_param(params, "c2", 0.5))
            ).sample(points)
        elif family == "comparison":
            u = radial_comparison(p).sample(points)
        elif family == "zero":
            u = ScalarFieldND.sample(lambda x: np.zeros(x.shape[1:]), p.n, points)
        else:
            raise ParameterRegimeError("family in {example22, comparison, zero}", family=family)
        return [check_no_small_solutions(u, p)]

    return [job]


def _maxprinciple_jobs(params: Mapping, seed: int) -> list[Callable]:
    B = float(_param(params, "B", 1.0))
    epsilon = float(_param(params, "epsilon", 0.0))

    def comparison():
        p = InequalityParams(B=B, epsilon=epsilon, n=2)
        return [probe_maximum_principle(radial_comparison(p).sample(61), p)]

    def family():
        p = InequalityParams(B=B, epsilon=epsilon, n=1)
        u = example22_family(B, epsilon, -1.0, -0.5)
        return [probe_maximum_principle(ScalarFieldND.sample(lambda x: u(x[0]), 1, 201, 0.5, [0.5]), p)]

    return [comparison, family]


ODE_CASES = ((2.0, 0.0, 0.0), (2.0, 0.5, 0.5), (2.0, -1.0, -1.0))
ODE_INITIAL_VALUES = (1e-3, 1e-2)


def _ode_jobs(params: Mapping, seed: int) -> list[Callable]:
    if params.get("B") is not None:
        cases = [(float(params["B"]), float(_param(params, "C", 0.0)), float(_param(params, "epsilon", 0.0)))]
    else:
        cases = list(ODE_CASES)
    initial = [float(params["u0"])] if params.get("u0") is not None else list(ODE_INITIAL_VALUES)
    mode = _param(params, "mode", "equality")

    def trajectory_job(B, C, epsilon, u0):
        def job():
            traj = integrate_ode_ineq(B, C, epsilon, u0, float(_param(params, "du0", 0.0)), mode)
            reports = [check_ode_trajectory(traj)]
            if traj.du[0] == 0.0 and not traj.fault and lattice_resolves(traj):
                p = InequalityParams(B=B, C=C, epsilon=epsilon, n=1)
                reports.append(check_divergence_bound(embed_trajectory(traj), p))
            return reports

        return job

    def adversarial():
        p = InequalityParams(B=1.0, n=2)
        return [adversarial_divergence_search(p, int(_param(params, "trials", 20)), seed)]

    jobs = [trajectory_job(B, C, eps, u0) for B, C, eps in cases for u0 in initial]
    return jobs + [adversarial]


def _kobayashi_jobs(params: Mapping, seed: int) -> list[Callable]:
    alpha = float(_param(params, "alpha", 0.5))
    b = complex(_param(params, "b", 0.01))
    r = float(_param(params, "r", 1.9))
    solver = _solver_options(params)
    grid = _grid(params, 48, 64)
    return [lambda: [kobayashi_experiment(alpha, b, r, grid=grid, **solver)]]


def _inverse_jobs(params: Mapping, seed: int) -> list[Callable]:
    r = float(_param(params, "r", 1.9))
    if params.get("coefficients") is not None:
        candidates = [params["coefficients"]]
    else:
        candidates = [[0.0, 1.0], [0.0, 1.0, 0.01]]
    targets = int(_param(params, "targets", 100))

    def job(coefficients):
        def run():
            Z1 = PowerSeries(np.asarray(coefficients, dtype=complex))
            phi = lemma33_inverse(Z1, r)
            eta, _ = inverse_radii(r)
            f = 0.5 * Z1.scale_argument(r)
            return [
                phi.report,
                schwarz_pick_lower(f, r / 2.0, eta),
                check_injectivity_certificates(f, r / 2.0, eta, targets, seed),
            ]

        return run

    return [job(c) for c in candidates]


def _dbar_jobs(params: Mapping, seed: int) -> list[Callable]:
    levels = tuple(int(n) for n in _param(params, "levels", RIGHT_INVERSE_LEVELS))
    solver = _solver_options(params)
    grid = _grid(params, 48, 64)
    return [
        lambda: [check_right_inverse(levels)],
        lambda: theorem11_sweep(grid=grid, **solver),
    ]


SUITE_JOBS = {
    "chain": _chain_jobs,
    "nss": _nss_jobs,
    "maxprinciple": _maxprinciple_jobs,
    "ode": _ode_jobs,
    "kobayashi": _kobayashi_jobs,
    "inverse": _inverse_jobs,
    "dbar": _dbar_jobs,
}


def run_suite(
    name: str,
    params: Optional[Mapping] = None,
    seed: int = 0,
    max_workers: Optional[int] = None,
) -> list[VerificationReport]:
    """Run a named suite (or `all`); reports come back in a fixed order whatever the scheduling."""
    params = dict(params or {})
    if name == "all":
        names = list(SUITE_JOBS)
    elif name in SUITE_JOBS:
        names = [name]
    else:
        raise ParameterRegimeError(
            "suite in {" + ", ".join([*SUITE_JOBS, "all"]) + "}", suite=name
        )

    jobs = [job for suite in names for job in SUITE_JOBS[suite](params, seed)]
    logger.info("Running suite %s with %d jobs", name, len(jobs))
    if len(jobs) == 1 or max_workers == 1:
        results = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = [executor.submit(job) for job in jobs]
            results = [future.result() for future in futures]
    return [report for batch in results for report in batch]


__all__ = [
    "OdeTrajectory",
    "VerificationReport",
    "adversarial_divergence_search",
    "check_chain",
    "check_divergence_bound",
    "check_injectivity_certificates",
    "check_no_small_solutions",
    "check_ode_trajectory",
    "check_polar_system",
    "check_right_inverse",
    "embed_trajectory",
    "integrate_ode_ineq",
    "kobayashi_experiment",
    "polar_branch",
    "probe_maximum_principle",
    "run_suite",
    "theorem11_sweep",
    "tolerance_for",
]
