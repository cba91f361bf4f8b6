import math

import numpy as np
import pytest

from src.encodings import (
    STATUS_FAIL,
    STATUS_HYPOTHESES_NOT_MET,
    STATUS_INCONCLUSIVE,
    STATUS_PASS,
)
from src.explicit_solutions import example22_family, example44_disk, radial_comparison
from src.grid_field import ComplexField, PolarGrid, ScalarFieldND
from src.holo_inverse import PowerSeries
from src.params_constants import InequalityParams, ParameterRegimeError
from src.verify_harness import (
    OdeTrajectory,
    adversarial_divergence_search,
    check_chain,
    check_divergence_bound,
    check_injectivity_certificates,
    check_no_small_solutions,
    check_ode_trajectory,
    check_polar_system,
    check_right_inverse,
    embed_trajectory,
    integrate_ode_ineq,
    kobayashi_experiment,
    lattice_resolves,
    polar_branch,
    probe_maximum_principle,
    run_suite,
    theorem11_sweep,
    tolerance_for,
)


def test_tolerance_is_linear_in_the_step():
    assert tolerance_for(0.02) == pytest.approx(0.01)


# Inequality chain and polar system


def test_chain_holds_on_the_explicit_disk(explicit_disk):
    report = check_chain(explicit_disk, 0.5)
    assert report.status == STATUS_PASS
    assert {"power_laplacian", "rho_form", "zeta_form"} <= set(report.details)


def test_chain_holds_at_two_resolutions():
    for n_r in (32, 64):
        _, f = example44_disk(0.01, 0.5, n_r=n_r, n_t=2 * n_r)
        report = check_chain(f, 0.5, gamma=2.0)
        assert report.passed
        assert report.margin >= -tolerance_for(f.grid.h)


def test_chain_margins_improve_under_refinement():
    # ζ = ρ^γ is not polynomial for α = ¾, so the stencils carry an O(h²) error
    shortfalls = []
    for n_r in (16, 32, 64):
        _, f = example44_disk(0.01, 0.75, n_r=n_r, n_t=2 * n_r)
        report = check_chain(f, 0.75)
        assert report.passed
        shortfalls.append(max(0.0, -report.margin))
    assert shortfalls[0] >= shortfalls[1] >= shortfalls[2]


def test_chain_skips_the_power_bound_below_its_threshold(explicit_disk):
    report = check_chain(explicit_disk, 0.5, gamma=1.2)
    assert "power_laplacian" not in report.details
    assert "rho_form" in report.details
    assert "skipped" in report.notes


def test_chain_needs_a_solution(holomorphic_field):
    report = check_chain(holomorphic_field, 0.5)
    assert report.status == STATUS_HYPOTHESES_NOT_MET
    assert math.isnan(report.margin)
    assert not report.passed


def test_polar_system_holds_on_the_explicit_disk(explicit_disk):
    assert check_polar_system(explicit_disk, 0.5).status == STATUS_PASS


def test_polar_system_fails_for_a_holomorphic_field(holomorphic_field):
    report = check_polar_system(holomorphic_field, 0.5)
    assert report.status == STATUS_FAIL
    assert report.margin < -report.tolerance


def test_polar_system_needs_a_branch(grid):
    report = check_polar_system(ComplexField.sample(grid, lambda z: z), 0.5)
    assert report.status == STATUS_HYPOTHESES_NOT_MET
    assert "winds" in report.notes


def test_polar_branch_is_a_root(holomorphic_field):
    g = polar_branch(holomorphic_field, 0.5)
    assert np.allclose(g.flat() ** 2, holomorphic_field.flat())


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_chain_rejects_alpha_outside_the_unit_interval(explicit_disk, alpha):
    with pytest.raises(ParameterRegimeError):
        check_chain(explicit_disk, alpha)


# Lattice theorems


def test_no_small_solutions_on_the_family():
    p = InequalityParams(B=1.0, epsilon=0.5, n=1)
    u = example22_family(1.0, 0.5, 0.2, 0.5).sample(401)
    report = check_no_small_solutions(u, p)
    assert report.status == STATUS_PASS
    assert report.details["u_at_origin"] > 0


def test_no_small_solutions_margin():
    p = InequalityParams(B=1.0, epsilon=0.0, n=1)
    report = check_no_small_solutions(example22_family(1.0, 0.0, 0.2, 0.5).sample(401), p)
    assert report.passed
    assert report.margin == pytest.approx(0.72 - 0.5, abs=1e-9)


def test_no_small_solutions_holds_vacuously_when_u_vanishes_at_the_origin():
    p = InequalityParams(epsilon=0.0, n=2)
    report = check_no_small_solutions(radial_comparison(p).sample(61), p)
    assert report.passed
    assert report.margin == math.inf
    assert "vacuously" in report.notes


@pytest.mark.parametrize("value", [0.25, -1.0])
def test_no_small_solutions_checks_its_hypotheses(value):
    p = InequalityParams(epsilon=0.0, n=1)
    u = ScalarFieldND.sample(lambda x: np.full(x.shape[1:], value), 1, 201)
    report = check_no_small_solutions(u, p)
    assert report.status == STATUS_HYPOTHESES_NOT_MET
    assert report.witness is not None


def test_maximum_principle_on_the_comparison_function():
    p = InequalityParams(epsilon=0.0, n=2)
    report = probe_maximum_principle(radial_comparison(p).sample(61), p)
    assert report.passed
    assert report.details["boundary_max"] == pytest.approx(0.25)


def test_maximum_principle_off_center():
    p = InequalityParams(epsilon=0.0, n=1)
    u = example22_family(1.0, 0.0, -1.0, -0.5)
    field = ScalarFieldND.sample(lambda x: u(x[0]), 1, 201, 0.5, [0.5])
    assert probe_maximum_principle(field, p).passed


def test_adversarial_search_is_reproducible():
    p = InequalityParams(B=1.0, n=2)
    first = adversarial_divergence_search(p, trials=3, seed=7, points_per_axis=41)
    second = adversarial_divergence_search(p, trials=3, seed=7, points_per_axis=41)
    assert first.margin == second.margin
    assert len(first.details["violations"]) == 3
    assert first.params["M"] == pytest.approx(1.0 / 6.0)


# ODE theorems


def test_ode_trajectory_without_gradient_term():
    traj = integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3)
    # u = u0 + t² solves uu'' = 2u
    assert np.allclose(traj.u, 1e-3 + traj.t**2)
    assert traj.left_limit == pytest.approx(1.001)
    report = check_ode_trajectory(traj)
    assert report.passed
    assert report.margin == pytest.approx(1e-3, rel=1e-6)


def test_ode_trajectory_with_gradient_term():
    traj = integrate_ode_ineq(2.0, 0.5, 0.5, 1e-2)
    assert traj.left_limit == pytest.approx(0.36)
    report = check_ode_trajectory(traj)
    assert report.passed
    assert report.margin == pytest.approx(0.01, rel=1e-6)
    assert report.params["M"] == pytest.approx(0.25)


def test_ode_integration_is_fourth_order():
    # ε < C keeps w'' = 1/w nonlinear, so RK4 is not exact
    limits = [integrate_ode_ineq(2.0, 0.5, 0.0, 1.0, step=step).left_limit for step in (0.02, 0.01, 0.005)]
    ratio = (limits[0] - limits[1]) / (limits[1] - limits[2])
    assert 14.0 <= ratio <= 18.0


@pytest.mark.parametrize("u0", [1e-3, 1e-2])
def test_ode_trajectory_with_negative_exponents(u0):
    traj = integrate_ode_ineq(2.0, -1.0, -1.0, u0)
    # w = u² solves w'' = 4, so u = sqrt(u0² + 2t²)
    assert np.allclose(traj.u, np.sqrt(u0**2 + 2.0 * traj.t**2))
    report = check_ode_trajectory(traj)
    assert report.passed
    assert report.params["M"] == pytest.approx(math.sqrt(2.0))
    assert report.margin == pytest.approx(math.sqrt(2.0 + u0**2) - math.sqrt(2.0), rel=1e-6)


def test_margin_mode_exceeds_equality():
    equality = integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3)
    margin = integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3, mode="margin")
    assert margin.left_limit > equality.left_limit
    assert check_ode_trajectory(margin).passed


@pytest.mark.parametrize(
    "kwargs",
    [
        {"B": 0.0, "C": 0.0, "epsilon": 0.0, "u0": 1e-3},
        {"B": 2.0, "C": 0.0, "epsilon": 0.5, "u0": 1e-3},
        {"B": 2.0, "C": 0.0, "epsilon": 0.0, "u0": 0.0},
        {"B": 2.0, "C": 0.0, "epsilon": 0.0, "u0": 1e-3, "mode": "bogus"},
    ],
)
def test_ode_integration_validates_its_inputs(kwargs):
    with pytest.raises(ParameterRegimeError):
        integrate_ode_ineq(**kwargs)


def test_faulty_trajectory_fails():
    traj = OdeTrajectory(
        t=np.array([0.0]),
        u=np.array([1e-3]),
        du=np.array([0.0]),
        d2u=np.array([2.0]),
        step=1e-3,
        B=2.0,
        C=0.0,
        epsilon=0.0,
        fault="w left (0, inf) at t = 0.5",
    )
    report = check_ode_trajectory(traj)
    assert report.status == STATUS_FAIL
    assert report.margin == -math.inf


def test_lattice_resolution_of_trajectories():
    assert lattice_resolves(integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3))
    assert not lattice_resolves(integrate_ode_ineq(2.0, -1.0, -1.0, 1e-3))


def test_embedded_trajectory_satisfies_the_divergence_bound():
    traj = integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3)
    u = embed_trajectory(traj)
    report = check_divergence_bound(u, InequalityParams(B=2.0, C=0.0, epsilon=0.0, n=1))
    assert report.passed
    assert report.details["sup"] == pytest.approx(1.001)


def test_embedding_needs_a_flat_start():
    with pytest.raises(ParameterRegimeError):
        embed_trajectory(integrate_ode_ineq(2.0, 0.0, 0.0, 1e-3, du0=0.1))


# ∂̄ machinery and Kobayashi experiment


@pytest.mark.slow
def test_right_inverse_report_structure():
    report = check_right_inverse(levels=(32, 64), densities={})
    assert report.check_id == "right_inverse"
    assert len(report.details["errors"]["t_one"]) == 2
    assert len(report.details["orders"]["t_one"]) == 1
    assert report.params == {"levels": [32, 64]}


@pytest.mark.slow
def test_right_inverse_converges_over_the_interior():
    report = check_right_inverse()
    assert report.status == STATUS_PASS
    assert set(report.details["orders"]) == {"t_one", "one", "gaussian", "quadratic"}
    for orders in report.details["orders"].values():
        assert min(orders) >= 0.9


def test_unconverged_sweep_runs_are_inconclusive(small_grid):
    reports = theorem11_sweep(alphas=(0.5,), bs=(0.01,), grid=small_grid, max_iter=3)
    assert len(reports) == 1
    assert reports[0].check_id == "theorem11"
    assert reports[0].status == STATUS_INCONCLUSIVE
    assert not reports[0].passed
    # Every damped retry was tried before giving up
    assert reports[0].params["relaxation"] == 0.25


@pytest.mark.slow
def test_theorem11_sweep_passes():
    reports = theorem11_sweep()
    assert len(reports) == 8
    assert [report.status for report in reports] == [STATUS_PASS] * 8
    assert all(report.margin > 0 for report in reports)


def test_kobayashi_at_the_origin():
    report = kobayashi_experiment(0.5, 0.0)
    assert report.passed
    assert report.margin == pytest.approx(0.25)
    assert "one constructed candidate" in report.notes


@pytest.mark.slow
def test_kobayashi_reproduces_the_contradiction():
    report = kobayashi_experiment(0.5, 0.01)
    assert report.status == STATUS_PASS
    assert report.details["sup_abs"] > 0.25
    assert report.details["pseudonorm_bounds"]["lower"] == pytest.approx(3.0 / (4.0 * math.sqrt(2.0)))
    assert report.details["pseudonorm_bounds"]["upper_at_zero"] == pytest.approx(0.5)
    assert report.details["phi_image_radius"] <= report.details["phi_image_bound"]
    assert "max|phi|" in report.notes


def test_kobayashi_reports_the_image_radius_when_unconverged():
    report = kobayashi_experiment(0.5, 0.01, grid=PolarGrid(1.0, 16, 32), max_iter=3)
    assert report.status == STATUS_INCONCLUSIVE
    assert 0.0 < report.details["phi_image_radius"] <= report.details["phi_image_bound"]
    assert report.params["max_iter"] == 3
    assert "max|phi|" in report.notes


@pytest.mark.parametrize("b, r", [(0.3, 1.9), (0.01, 1.8)])
def test_kobayashi_parameter_regime(b, r):
    with pytest.raises(ParameterRegimeError):
        kobayashi_experiment(0.5, b, r)


def test_injectivity_certificates():
    report = check_injectivity_certificates(PowerSeries([0.0, 0.95]), 0.95, 0.7125, targets=20)
    assert report.passed
    assert report.details["counts"] == [1]
    assert report.details["round_trip_max"] < 1e-12


# Suites


def test_run_suite_nss():
    reports = run_suite("nss")
    assert [r.check_id for r in reports] == ["no_small_solutions"]
    assert reports[0].passed


def test_run_suite_keeps_job_order():
    reports = run_suite("maxprinciple", max_workers=2)
    assert [r.check_id for r in reports] == ["maximum_principle", "maximum_principle"]
    assert all(r.passed for r in reports)
    assert reports[0].params["n"] == 2
    assert reports[1].params["n"] == 1


def test_run_suite_rejects_unknown_names():
    with pytest.raises(ParameterRegimeError):
        run_suite("bogus")
