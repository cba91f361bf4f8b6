# -*- coding: utf-8 -*-
"""
Command-line front end of the ∂̄ laboratory

Subcommands:
    constants   Print S_α, the M bounds, κ_n, γ* and the inverse radii.
    solve       Run the Picard solver and write the field CSV and the trace.
    verify      Run a verification suite and write its reports.

Usage:
    python -m src.cli constants --salpha --alpha 0.6666667
    python -m src.cli solve --alpha 0.5 --b 0.01
    python -m src.cli verify --suite kobayashi --alpha 0.5 --b 0.01

Exit codes: 0 all pass, 2 verification failure or non-convergence,
3 hypotheses not met (strict mode), 4 invalid parameters.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

import pandas as pd

try:
    from src.dbar_solver import DbarSolution, PicardConfig, solve_picard
    from src.encodings import EXIT_CODE_ENCODING, exit_code_for
    from src.grid_field import CSV_FLOAT_FORMAT, PolarGrid
    from src.params_constants import (
        InequalityParams,
        ParameterRegimeError,
        comparison_bound_M,
        constants_table,
        divergence_bound_M,
        eq20_bound,
        gamma_star,
        inverse_radii,
        kappa_n,
        ode_bound_M,
        pseudonorm_bounds,
        salpha,
    )
    from src.reports import (
        VerificationReport,
        reports_to_csv,
        reports_to_json,
        to_serializable,
    )
    from src.suites import SUITE_NAMES, suite_parameters
    from src.verify_harness import run_suite
except ImportError:
    from .dbar_solver import DbarSolution, PicardConfig, solve_picard
    from .encodings import EXIT_CODE_ENCODING, exit_code_for
    from .grid_field import CSV_FLOAT_FORMAT, PolarGrid
    from .params_constants import (
        InequalityParams,
        ParameterRegimeError,
        comparison_bound_M,
        constants_table,
        divergence_bound_M,
        eq20_bound,
        gamma_star,
        inverse_radii,
        kappa_n,
        ode_bound_M,
        pseudonorm_bounds,
        salpha,
    )
    from .reports import (
        VerificationReport,
        reports_to_csv,
        reports_to_json,
        to_serializable,
    )
    from .suites import SUITE_NAMES, suite_parameters
    from .verify_harness import run_suite

logger = logging.getLogger(__name__)

OUTPUT_DIR_VARIABLE = "DBAR_LAB_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "output"
OUTPUT_FORMATS = ("csv", "json")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

CONSTANT_PARAMETERS = {"alpha", "gamma", "B", "C", "epsilon", "n", "r"}
SOLVE_PARAMETERS = {"alpha", "b", "max_iter", "tol", "relaxation"}

# Selectable quantities of `constants`, evaluated on (InequalityParams, r)
QUANTITIES = {
    "salpha": lambda p, r: salpha(p.alpha),
    "gamma_star": lambda p, r: gamma_star(p.alpha),
    "eq20_bound": lambda p, r: eq20_bound(p.alpha, p.gamma),
    "kappa": lambda p, r: kappa_n(p.n),
    "m_comparison": lambda p, r: comparison_bound_M(p),
    "m_divergence": lambda p, r: divergence_bound_M(p),
    "m_ode": lambda p, r: ode_bound_M(p),
    "inverse_eta": lambda p, r: inverse_radii(r)[0],
    "inverse_s": lambda p, r: inverse_radii(r)[1],
    "pseudonorm_lower": lambda p, r: pseudonorm_bounds()[0],
    "pseudonorm_upper_at_zero": lambda p, r: pseudonorm_bounds()[1],
}


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_VARIABLE, DEFAULT_OUTPUT_DIR))


@dataclass(frozen=True)
class RunConfig:
    """
    One invocation of the laboratory.

    Attributes:
        subcommand: constants, solve or verify.
        parameters: Subcommand parameters; keys outside the accepted set are rejected.
        output_dir: Directory for CSV/JSON outputs.
        output_format: Format of tabular outputs, csv or json.
        n_r, n_t: Polar grid sizes (None keeps each command's default).
        seed: Seed of the randomized checks.
        strict: Whether hypotheses-not-met makes `verify` exit nonzero.
        suite: Suite name for `verify`.
        quantities: Quantities selected for `constants` (empty prints the table).
    """

    subcommand: str
    parameters: Mapping = field(default_factory=dict)
    output_dir: Path = field(default_factory=default_output_dir)
    output_format: str = "csv"
    n_r: Optional[int] = None
    n_t: Optional[int] = None
    seed: int = 0
    strict: bool = True
    suite: Optional[str] = None
    quantities: tuple = ()

    def __post_init__(self) -> None:
        if self.subcommand not in ("constants", "solve", "verify"):
            raise ParameterRegimeError("subcommand in {constants, solve, verify}", subcommand=self.subcommand)
        if self.output_format not in OUTPUT_FORMATS:
            raise ParameterRegimeError("format in {csv, json}", format=self.output_format)
        if self.subcommand == "verify" and self.suite not in (*SUITE_NAMES, "all"):
            raise ParameterRegimeError(
                "suite in {" + ", ".join([*SUITE_NAMES, "all"]) + "}", suite=self.suite
            )
        unknown = sorted(set(self.parameters) - self.accepted_parameters())
        if unknown:
            raise ParameterRegimeError(
                f"parameters accepted by {self.subcommand}", unknown=", ".join(unknown)
            )
        unknown_quantities = sorted(set(self.quantities) - set(QUANTITIES))
        if unknown_quantities:
            raise ParameterRegimeError("known quantities", unknown=", ".join(unknown_quantities))
        object.__setattr__(self, "parameters", dict(self.parameters))
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    def accepted_parameters(self) -> set:
        if self.subcommand == "constants":
            return CONSTANT_PARAMETERS
        if self.subcommand == "solve":
            return SOLVE_PARAMETERS
        return suite_parameters(self.suite)

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        """Build a RunConfig from parsed arguments, dropping flags that were not given."""
        keys = {
            "constants": CONSTANT_PARAMETERS,
            "solve": SOLVE_PARAMETERS,
            "verify": suite_parameters("all"),
        }[args.subcommand]
        parameters = {
            key: getattr(args, key)
            for key in sorted(keys)
            if getattr(args, key, None) is not None
        }
        return cls(
            subcommand=args.subcommand,
            parameters=parameters,
            output_dir=args.output_dir or default_output_dir(),
            output_format=args.format,
            n_r=args.n_r,
            n_t=args.n_t,
            seed=args.seed,
            strict=not getattr(args, "lenient", False),
            suite=getattr(args, "suite", None),
            quantities=tuple(q for q in QUANTITIES if getattr(args, q, False)),
        )

    def grid(self, n_r: int = 128, n_t: int = 128) -> PolarGrid:
        return PolarGrid(1.0, self.n_r or n_r, self.n_t or n_t)

    def output_path(self, stem: str, suffix: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / f"{stem}.{suffix}"


# Commands ##################################################################


def _inequality_params(parameters: Mapping) -> InequalityParams:
    return InequalityParams(
        alpha=parameters.get("alpha", 0.5),
        gamma=parameters.get("gamma"),
        B=parameters.get("B", 1.0),
        C=parameters.get("C", 0.0),
        epsilon=parameters.get("epsilon", 0.0),
        n=parameters.get("n", 2),
    )


def _write_table(frame: pd.DataFrame, cfg: RunConfig, stem: str) -> Path:
    if cfg.output_format == "csv":
        path = cfg.output_path(stem, "csv")
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    else:
        path = cfg.output_path(stem, "json")
        records = to_serializable(frame.to_dict(orient="records"))
        path.write_text(json.dumps(records, indent=2, sort_keys=True) + "\n")
    return path


def cmd_constants(cfg: RunConfig) -> pd.DataFrame:
    """Selected quantities as (quantity, value) rows, or the full constants table."""
    parameters = cfg.parameters
    if cfg.quantities:
        p = _inequality_params(parameters)
        r = parameters.get("r", 1.9)
        rows = [{"quantity": name, "value": QUANTITIES[name](p, r)} for name in cfg.quantities]
        return pd.DataFrame(rows, columns=["quantity", "value"])

    table = constants_table(
        alphas=(parameters["alpha"],) if "alpha" in parameters else (0.25, 0.5, 2.0 / 3.0, 0.75),
        ns=(parameters["n"],) if "n" in parameters else (1, 2, 3),
        B=parameters.get("B", 1.0),
        C=parameters.get("C", 0.0),
        epsilon=parameters.get("epsilon", 0.0),
        r=parameters.get("r"),
    )
    path = _write_table(table, cfg, "constants")
    logger.info("Constants table written to %s", path)
    return table


def cmd_solve(cfg: RunConfig) -> DbarSolution:
    """Run solve_picard; write the field CSV, the trace JSONL and a summary JSON."""
    parameters = cfg.parameters
    config = PicardConfig(
        alpha=parameters.get("alpha", 0.5),
        b=complex(parameters.get("b", 0.0)),
        max_iter=parameters.get("max_iter", 500),
        tol=parameters.get("tol", 1e-8),
        grid=cfg.grid(),
        relaxation=parameters.get("relaxation", 1.0),
    )
    solution = solve_picard(config)
    solution.field.to_csv(cfg.output_path("solution_field", "csv"))
    solution.trace_to_jsonl(cfg.output_path("solution_trace", "jsonl"))
    cfg.output_path("solution_summary", "json").write_text(
        json.dumps(to_serializable(solution.summary()), indent=2, sort_keys=True) + "\n"
    )
    return solution


def cmd_verify(cfg: RunConfig) -> list[VerificationReport]:
    """Run the configured suite; write the reports JSON and the summary table."""
    parameters = dict(cfg.parameters)
    if cfg.n_r is not None:
        parameters["n_r"] = cfg.n_r
    if cfg.n_t is not None:
        parameters["n_t"] = cfg.n_t
    reports = run_suite(cfg.suite, parameters, seed=cfg.seed)
    reports_to_json(reports, cfg.output_path(f"verify_{cfg.suite}", "json"))
    if cfg.output_format == "csv":
        reports_to_csv(reports, cfg.output_path(f"verify_{cfg.suite}_summary", "csv"))
    return reports


# Argument parsing ##########################################################


class LabArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the invalid-parameters code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODE_ENCODING["invalid-parameters"], f"{self.prog}: error: {message}\n")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output-dir", type=Path, default=None, dest="output_dir",
                        help=f"Output directory (default: ${OUTPUT_DIR_VARIABLE} or ./{DEFAULT_OUTPUT_DIR}).")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="csv", help="Tabular output format.")
    parser.add_argument("--n-r", type=int, default=None, dest="n_r", help="Number of rings of the polar grid.")
    parser.add_argument("--n-t", type=int, default=None, dest="n_t", help="Number of angles per ring.")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the randomized checks.")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level.")


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(
        prog="dbar-lab",
        description="Hölder-nonlinear ∂̄ equation and Kobayashi–Royden pseudonorm laboratory.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=LabArgumentParser)

    constants = subparsers.add_parser("constants", help="Print derived constants.")
    _add_common_arguments(constants)
    for name in QUANTITIES:
        constants.add_argument(f"--{name.replace('_', '-')}", action="store_true", dest=name,
                               help=f"Print {name}.")
    constants.add_argument("--alpha", type=float)
    constants.add_argument("--gamma", type=float)
    constants.add_argument("--n", type=int)
    constants.add_argument("--B", type=float)
    constants.add_argument("--C", type=float)
    constants.add_argument("--eps", type=float, dest="epsilon")
    constants.add_argument("--r", type=float)

    solve = subparsers.add_parser("solve", help="Solve ∂f/∂z̄ = |f|^α with f(0) = b.")
    _add_common_arguments(solve)
    solve.add_argument("--alpha", type=float, required=True)
    solve.add_argument("--b", type=complex, default=None)
    solve.add_argument("--max-iter", type=int, dest="max_iter")
    solve.add_argument("--tol", type=float)
    solve.add_argument("--relaxation", type=float)

    verify = subparsers.add_parser("verify", help="Run a verification suite.")
    _add_common_arguments(verify)
    verify.add_argument("--suite", choices=[*SUITE_NAMES, "all"], required=True)
    verify.add_argument("--lenient", action="store_true", help="Do not fail on hypotheses-not-met.")
    verify.add_argument("--alpha", type=float)
    verify.add_argument("--b", type=complex)
    verify.add_argument("--gamma", type=float)
    verify.add_argument("--family", choices=["example22", "comparison", "zero"])
    verify.add_argument("--B", type=float)
    verify.add_argument("--C", type=float)
    verify.add_argument("--eps", type=float, dest="epsilon")
    verify.add_argument("--c1", type=float)
    verify.add_argument("--c2", type=float)
    verify.add_argument("--n", type=int)
    verify.add_argument("--r", type=float)
    verify.add_argument("--u0", type=float)
    verify.add_argument("--du0", type=float)
    verify.add_argument("--mode", choices=["equality", "margin"])
    verify.add_argument("--trials", type=int)
    verify.add_argument("--targets", type=int)
    verify.add_argument("--relaxation", type=float, help="Initial relaxation of the Picard solves.")
    verify.add_argument("--max-iter", type=int, dest="max_iter", help="Iteration budget of the Picard solves.")
    return parser


def _print_reports(reports: Sequence[VerificationReport]) -> None:
    for report in reports:
        print(f"{report.check_id:<32} {report.status:<20} margin={report.margin:.12g}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT)

    try:
        cfg = RunConfig.from_namespace(args)
        if cfg.subcommand == "constants":
            frame = cmd_constants(cfg)
            if cfg.quantities:
                for row in frame.itertuples(index=False):
                    print(f"{row.quantity} {row.value:.12g}")
            else:
                print(frame.to_string(index=False, float_format=lambda v: f"{v:.12g}"))
            return EXIT_CODE_ENCODING["ok"]

        if cfg.subcommand == "solve":
            solution = cmd_solve(cfg)
            for key, value in solution.summary().items():
                if key != "config":
                    print(f"{key} {to_serializable(value)}")
            return EXIT_CODE_ENCODING["ok" if solution.converged else "failure"]

        reports = cmd_verify(cfg)
        _print_reports(reports)
        return exit_code_for((report.status for report in reports), strict=cfg.strict)

    except ParameterRegimeError as error:
        logger.error("%s", error)
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CODE_ENCODING["invalid-parameters"]


if __name__ == "__main__":
    sys.exit(main())
