from pathlib import Path
from typing import List, Optional, Tuple
import argparse
import math
import sys

from pydantic import ValidationError

from app_config import logging, settings
from cqt.exceptions import CyclicReductionBreakdown, MaxIterationsExceeded
from cqt.serialization import read_matrix, save_matrix
from qbd_solver.constants.presets import JACKSON_PRESETS, SCALAR_PRESET, SCALAR_PRESET_NAME, PRESET_NAMES
from qbd_solver.cyclic_reduction import CrState, solve_G, solve_R
from qbd_solver.jackson import QbdTriple, jackson_blocks, scalar_triple, load_params, validate_theorem_hypotheses, traffic_intensities
from qbd_solver.models import JacksonParams, RunConfig
from qbd_solver.report import report_row, write_report, write_presets
from qbd_solver.verify import section_deviations

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_BREAKDOWN = 3
EXIT_MAX_ITERATIONS = 4


def _jackson_case(name: str, params: JacksonParams) -> Tuple[str, QbdTriple]:
    rho1, rho2 = traffic_intensities(params)
    logger.info(f"Case {name}: {params.model_dump()} traffic intensities rho1={rho1:.4f} rho2={rho2:.4f}")
    if max(rho1, rho2) >= 1:
        logger.warning(f"Case {name} is not stable (rho1={rho1:.4f}, rho2={rho2:.4f})")
    return name, jackson_blocks(params)


def _log_state(state: CrState):
    norms = ", ".join(f"{name}={value:.3e}" for name, value in state.norms().items())
    logger.debug(f"CR iterate norms after step {state.h}: {norms}")


def load_cases(config: RunConfig) -> List[Tuple[str, QbdTriple]]:
    if config.matrix_files is not None:
        Am1, A0, A1 = (read_matrix(path) for path in config.matrix_files)
        return [('matrices', QbdTriple(Am1=Am1, A0=A0, A1=A1))]
    if config.params_file is not None:
        return [_jackson_case(config.params_file.stem, load_params(config.params_file))]

    cases = []
    names = PRESET_NAMES if 'all' in config.presets else config.presets
    for name in names:
        if name == SCALAR_PRESET_NAME:
            cases.append((name, scalar_triple(*SCALAR_PRESET)))
        elif name in JACKSON_PRESETS:
            cases.append(_jackson_case(name, JACKSON_PRESETS[name]))
        else:
            raise ValueError(f"Unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}, all")
    return cases


def run_solve(config: RunConfig) -> int:
    cases = load_cases(config)
    rows = []
    exit_code = EXIT_OK
    for name, triple in cases:
        hypotheses = validate_theorem_hypotheses(triple)
        if not hypotheses.all_passed:
            logger.warning(f"Case {name} does not satisfy the root splitting hypotheses: {hypotheses.failures()}")

        callback = _log_state if logger.isEnabledFor(logging.DEBUG) else None
        solvers = [('G', solve_G)] + ([('R', solve_R)] if config.right else [])
        for label, solver in solvers:
            try:
                report = solver(triple.Am1, triple.A0, triple.A1, tol=config.tol, max_iter=config.max_iter,
                                callback=callback)
            except CyclicReductionBreakdown as e:
                logger.error(f"Case {name} ({label}): {e}")
                exit_code = exit_code or EXIT_BREAKDOWN
                continue
            except MaxIterationsExceeded as e:
                logger.error(f"Case {name} ({label}): {e}")
                exit_code = exit_code or EXIT_MAX_ITERATIONS
                continue

            logger.info(f"Case {name} ({label}) converged by {report.converged_by} in {report.iterations} steps, "
                        f"residual {report.residual_inf:.3e}")
            rows.append(report_row(name, report))
            if config.emit_solution:
                save_matrix(report.solution, config.solution_dir / f"{label}_{name}.cqt")

    if config.output is not None:
        with open(config.output, 'w', newline='') as stream:
            write_report(rows, stream)
    else:
        write_report(rows, sys.stdout)
    return exit_code


def run_verify(a_path: Path, b_path: Path, section_size: int) -> int:
    A = read_matrix(a_path)
    B = read_matrix(b_path)
    deviations = section_deviations(A, B, section_size)
    for operation, deviation in deviations.items():
        print(f"{operation}\t{deviation:.3e}")
    finite = [value for value in deviations.values() if not math.isnan(value)]
    print(f"max_deviation\t{max(finite):.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qbd-solver', description="Cyclic reduction for QBD processes with infinitely many phases")
    subparsers = parser.add_subparsers(dest='command', required=True)

    solve = subparsers.add_parser('solve', help="Solve for G (and R) and print a TSV report")
    source = solve.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", nargs='+', default=None, help=f"Preset name(s) or 'all': {', '.join(PRESET_NAMES)}")
    source.add_argument("--params", type=Path, default=None, help="Path to a Jackson parameter file")
    source.add_argument("--matrices", nargs=3, type=Path, default=None, metavar=('AM1', 'A0', 'A1'), help="Paths to the three CQT block files")
    solve.add_argument("--tol", type=float, default=settings.CR_TOL, help="Cyclic reduction stopping tolerance")
    solve.add_argument("--max-iter", type=int, default=settings.CR_MAX_ITER, help="Cyclic reduction iteration cap")
    solve.add_argument("--right", action='store_true', default=False, help="Also solve for R")
    solve.add_argument("--emit", action='store_true', default=False, help="Write the computed solutions as CQT matrix files")
    solve.add_argument("--solution-dir", type=Path, default=Path('.'), help="Directory of the files written with --emit")
    solve.add_argument("-o", "--output", type=Path, default=None, help="Report path (default: stdout)")

    verify = subparsers.add_parser('verify', help="Compare CQT arithmetic against dense finite sections")
    verify.add_argument("a", type=Path, help="First CQT matrix file")
    verify.add_argument("b", type=Path, help="Second CQT matrix file")
    verify.add_argument("--section-size", type=int, default=32, help="Size of the compared leading block")

    subparsers.add_parser('presets', help="List the built-in parameter presets")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == 'presets':
            write_presets(JACKSON_PRESETS, SCALAR_PRESET, sys.stdout, SCALAR_PRESET_NAME)
            return EXIT_OK

        if args.command == 'verify':
            if args.section_size < 1:
                raise ValueError(f"--section-size must be at least 1, got {args.section_size}")
            return run_verify(args.a, args.b, args.section_size)

        config = RunConfig(
            presets=args.preset or [],
            params_file=args.params,
            matrix_files=args.matrices,
            tol=args.tol,
            max_iter=args.max_iter,
            right=args.right,
            output=args.output,
            emit_solution=args.emit,
            solution_dir=args.solution_dir,
        )
        return run_solve(config)
    except (ValidationError, ValueError, OSError) as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
