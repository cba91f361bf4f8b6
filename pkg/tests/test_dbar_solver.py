import json

import numpy as np
import pytest

from src.dbar_solver import (
    DbarSolution,
    JDisk,
    PicardConfig,
    build_jdisk,
    cauchy_transform,
    check_eq9_equivalence,
    dbar_residual,
    eq25_residual,
    residual_sup,
    solve_damped,
    solve_picard,
)
from src.grid_field import ComplexField, PolarGrid, observed_order, wirtinger_dbar
from src.params_constants import ParameterRegimeError, salpha


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": 0.0},
        {"alpha": 1.0},
        {"alpha": 0.5, "tol": 0.0},
        {"alpha": 0.5, "max_iter": 0},
        {"alpha": 0.5, "relaxation": 1.5},
    ],
)
def test_picard_config_validation(kwargs):
    with pytest.raises(ParameterRegimeError):
        PicardConfig(**kwargs)


def _interior(grid):
    return np.concatenate([[True], grid.interior_mask().ravel()])


@pytest.mark.parametrize(
    "density, expected",
    [
        (lambda z: np.ones_like(z), lambda z: np.conj(z)),
        (lambda z: z, lambda z: np.abs(z) ** 2 - 1.0),
        (lambda z: np.conj(z), lambda z: 0.5 * np.conj(z) ** 2),
    ],
)
def test_cauchy_transform_is_exact_on_linear_profiles(grid, density, expected):
    transformed = cauchy_transform(ComplexField.sample(grid, density))
    points = grid.points_flat()
    assert np.allclose(transformed.flat(), expected(points), atol=1e-12)


def test_cauchy_transform_of_one_has_an_exact_right_inverse_residual():
    for n_r in (32, 64, 128):
        grid = PolarGrid(1.0, n_r, n_r)
        residual = wirtinger_dbar(cauchy_transform(ComplexField.sample(grid, np.ones_like))) - 1.0
        assert np.abs(residual.flat())[_interior(grid)].max() < 1e-9


def test_right_inverse_residual_converges_up_to_the_boundary():
    errors = []
    for n_r in (32, 64, 128):
        grid = PolarGrid(1.0, n_r, n_r)
        g = ComplexField.sample(grid, lambda z: np.exp(-np.abs(z) ** 2) * (1.0 + z.real))
        residual = wirtinger_dbar(cauchy_transform(g)) - g
        errors.append(np.abs(residual.flat())[_interior(grid)].max())
    assert errors[0] > errors[1] > errors[2]
    assert observed_order(errors[1], errors[2]) >= 0.9


def test_cauchy_transform_is_a_right_inverse(grid):
    g = ComplexField.sample(grid, lambda z: np.exp(-np.abs(z) ** 2))
    residual = wirtinger_dbar(cauchy_transform(g)) - g
    assert np.abs(residual.flat())[_interior(grid)].max() < 0.01


def test_zero_initial_value_gives_the_zero_solution(small_grid):
    solution = solve_picard(PicardConfig(0.5, 0.0, grid=small_grid))
    assert solution.converged
    assert solution.reason == "tolerance"
    assert solution.iterations == 1
    assert solution.sup == 0.0
    assert solution.residual_sup == 0.0
    assert solution.near_zero_nodes.size == small_grid.node_count


def test_picard_pins_the_origin(small_grid):
    solution = solve_picard(PicardConfig(0.5, 0.01, max_iter=5, grid=small_grid))
    assert isinstance(solution, DbarSolution)
    assert solution.field.center == pytest.approx(0.01)
    assert len(solution.trace) == solution.iterations
    assert {"iteration", "sup_change", "residual"} == set(solution.trace[0])
    assert not solution.converged
    assert solution.reason == "max_iter"


def test_picard_stops_on_divergence(small_grid):
    solution = solve_picard(PicardConfig(0.5, 0.2, max_iter=50, grid=small_grid, divergence_cap=0.25))
    assert not solution.converged
    assert solution.reason == "divergence"


def test_trace_and_summary_serialize(small_grid, tmp_path):
    solution = solve_picard(PicardConfig(0.5, 0.01, max_iter=3, grid=small_grid))
    path = tmp_path / "trace.jsonl"
    solution.trace_to_jsonl(path)
    lines = path.read_text().splitlines()
    assert len(lines) == len(solution.trace)
    assert json.loads(lines[0])["iteration"] == 1
    summary = solution.summary()
    assert summary["config"]["n_r"] == small_grid.n_r
    assert summary["iterations"] == solution.iterations


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.25, 0.5])
def test_undamped_solutions_converge_and_are_not_small(alpha):
    grid = PolarGrid(1.0, 48, 64)
    solution = solve_picard(PicardConfig(alpha, 0.01, max_iter=500, grid=grid))
    assert solution.converged
    assert solution.reason == "tolerance"
    assert solution.sup > salpha(alpha)


@pytest.mark.slow
@pytest.mark.parametrize("alpha, b", [(2.0 / 3.0, 0.01), (2.0 / 3.0, 0.05), (0.75, 0.01)])
def test_damped_solutions_converge_and_are_not_small(alpha, b):
    grid = PolarGrid(1.0, 48, 64)
    solution = solve_damped(PicardConfig(alpha, b, max_iter=500, grid=grid))
    assert solution.converged
    assert solution.sup > salpha(alpha)


def test_damping_retries_with_smaller_relaxations(small_grid):
    solution = solve_damped(PicardConfig(0.5, 0.01, max_iter=3, grid=small_grid))
    assert not solution.converged
    assert solution.reason == "max_iter"
    assert solution.config.relaxation == 0.25


def test_damping_keeps_a_converged_run(small_grid):
    solution = solve_damped(PicardConfig(0.5, 0.0, grid=small_grid), schedule=(0.5,))
    assert solution.converged
    assert solution.config.relaxation == 1.0


def test_damping_skips_larger_relaxations(small_grid):
    solution = solve_damped(
        PicardConfig(0.5, 0.01, max_iter=3, grid=small_grid, relaxation=0.4), schedule=(0.5,)
    )
    assert solution.config.relaxation == 0.4


@pytest.mark.slow
def test_residual_sup_decreases_under_refinement():
    residuals = []
    for n_r, n_t in ((24, 32), (48, 64), (96, 128)):
        solution = solve_damped(PicardConfig(0.5, 0.01, grid=PolarGrid(1.0, n_r, n_t)))
        assert solution.converged
        residuals.append(solution.residual_sup)
    assert residuals[0] > residuals[1] > residuals[2]


def test_residual_of_holomorphic_field(holomorphic_field):
    residual = dbar_residual(holomorphic_field, 0.5)
    expected = -np.abs(holomorphic_field.flat()) ** 0.5
    assert np.allclose(residual.flat(), expected, atol=1e-9)
    # The outermost ring is not interior
    outer = 2.0 + (holomorphic_field.grid.n_r - 1) * holomorphic_field.grid.h
    assert residual_sup(holomorphic_field, 0.5) == pytest.approx(np.sqrt(outer), rel=1e-9)


def test_eq25_residual_vanishes_on_explicit_disk(explicit_disk):
    r1, r2 = eq25_residual(explicit_disk, 0.5)
    # The profile is exactly quadratic right of x = −0.1; stay a stencil away from the kink
    points = explicit_disk.grid.points_flat()
    away = (points.real > 0.05) & (np.abs(points) < 0.95)
    assert np.abs(r1.flat())[away].max() < 1e-9
    assert np.abs(r2.flat())[away].max() < 1e-9


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_dbar_equation_matches_real_system(holomorphic_field, explicit_disk, alpha):
    assert check_eq9_equivalence(holomorphic_field, alpha).passed
    assert check_eq9_equivalence(explicit_disk, alpha).passed


def test_build_jdisk_flags_a_disk_outside_the_bidisk(holomorphic_field):
    report = build_jdisk(holomorphic_field, salpha(0.5), alpha=0.5)
    assert report.status == "fail"
    assert report.margin < 0


def test_build_jdisk_from_small_field(grid):
    f = ComplexField.sample(grid, lambda z: 0.01 + 0.05 * np.conj(z))
    disk = build_jdisk(f, salpha(0.5), alpha=0.5)
    assert isinstance(disk, JDisk)
    assert disk.holomorphy_residual < 1e-9
    assert disk.eq25_residual > 0


def test_build_jdisk_from_unconverged_solution(small_grid):
    solution = solve_picard(PicardConfig(0.5, 0.2, max_iter=50, grid=small_grid, divergence_cap=0.25))
    report = build_jdisk(solution, salpha(0.5))
    assert report.status == "inconclusive"


def test_build_jdisk_needs_alpha_for_bare_fields(grid):
    with pytest.raises(ParameterRegimeError):
        build_jdisk(ComplexField.zeros(grid), 0.25)
