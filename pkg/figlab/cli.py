"""
figlab command-line driver.

    figlab <command> [--window N] [--retries K] [--format json|csv|table]
                     [--seed S] [--imax I] [--count C] <files...>

Exit codes: 0 ok, 2 validation or parse failure, 3 window exhausted after
retries, 4 max dimension exceeded.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional

from .config import config
from .errors import (
    FigLabError,
    MaxDimensionExceededError,
    ModuleValidationError,
    WindowExhaustedError,
)
from .generator import GeneratorParams, generate_suite, random_presentation
from .homology import certify, classical_depth, derivative_depth, homology_dims
from .local_cohomology import (
    conjecture_scan,
    invariant_report,
    local_cohomology_profile,
    with_retries,
)
from .models import (
    NEG_INF,
    Command,
    DepthReport,
    HomologyReport,
    InvariantReport,
    LocalCohomologyReport,
    OutputFormat,
    RunConfig,
)
from .module_parser import ParsedModule, module_parser
from .modules import Presentation, TruncatedFiGModule, materialize, validate_module
from .report_templates import render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_WINDOW = 3
EXIT_MAX_DIM = 4

INVARIANT_COLUMNS = ["module-id", "field", "group", "gd", "td", "reg", "reg_status", "N_direct",
                     "N_formula", "depth_lc", "depth_classical", "depth_derivative", "cd", "lc_td",
                     "conjecture_rhs", "gap", "certified", "window_used"]


@dataclass
class CommandResult:
    exit_code: int
    output: str


def exit_code_for(error: Exception) -> int:
    if isinstance(error, MaxDimensionExceededError):
        return EXIT_MAX_DIM
    if isinstance(error, WindowExhaustedError):
        return EXIT_WINDOW
    return EXIT_INVALID


def _window(parsed: ParsedModule, run: RunConfig) -> Optional[int]:
    return run.window if run.window is not None else parsed.window


def _run(parsed: ParsedModule, run: RunConfig, fn: Callable[[TruncatedFiGModule], object]):
    logger.info(f"{run.command.value}: {parsed.name}")
    return with_retries(parsed.source, fn, _window(parsed, run), run.retries)


def _each(modules: List[ParsedModule], run: RunConfig,
          fn: Callable[[ParsedModule], List[dict]]) -> tuple[List[dict], int]:
    """Rows for every module in input order; the worst exit code wins."""
    rows: List[dict] = []
    code = EXIT_OK
    for parsed in modules:
        try:
            rows.extend(fn(parsed))
        except FigLabError as e:
            logger.error(f"{parsed.name}: {e}")
            rows.append({"module-id": parsed.name, "error": str(e)})
            code = max(code, exit_code_for(e))
    return rows, code


# -- commands ----------------------------------------------------------------


def cmd_validate(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    def check(parsed: ParsedModule) -> List[dict]:
        source = parsed.source
        if isinstance(source, Presentation):
            window = _window(parsed, run) or source.default_window()
            module = materialize(source, window)
        else:
            module = source
        violations = validate_module(module)
        if violations:
            raise ModuleValidationError(violations)
        return [{"module-id": parsed.name, "status": "ok", "dims": list(module.dims)}]

    rows, code = _each(modules, run, check)
    return CommandResult(code, render(rows, run.output_format, title="validate"))


def cmd_invariants(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    def report(parsed: ParsedModule) -> List[dict]:
        result: InvariantReport = _run(parsed, run, lambda m: invariant_report(m, parsed.name))
        for v in result.violations:
            logger.warning(f"{parsed.name}: {v.check}: {v.detail}")
        return [result.row()]

    rows, code = _each(modules, run, report)
    columns = INVARIANT_COLUMNS if all("error" not in r for r in rows) else None
    return CommandResult(code, render(rows, run.output_format, columns, title="invariants"))


def cmd_homology(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    def report(parsed: ParsedModule) -> List[dict]:
        def compute(module: TruncatedFiGModule) -> List[dict]:
            out = []
            for i, dims in enumerate(homology_dims(module, run.imax)):
                found = [n for n, d in enumerate(dims[:module.valid_through + 1]) if d]
                top = max(found) if found else NEG_INF
                status = certify(module, top, consumption=i).status
                out.append(HomologyReport(module_id=parsed.name, i=i, dims=dims[:module.valid_through + 1],
                                          hd=top, status=status).row())
            return out
        return _run(parsed, run, compute)

    rows, code = _each(modules, run, report)
    return CommandResult(code, render(rows, run.output_format, title="homology"))


def cmd_localcoh(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    def report(parsed: ParsedModule) -> List[dict]:
        def compute(module: TruncatedFiGModule) -> List[dict]:
            profile = local_cohomology_profile(module)
            b = profile.complex_.b
            return [LocalCohomologyReport(module_id=parsed.name, i=i, dims=list(h.dims), td=td,
                                          b=b[i] if i < len(b) else None).row()
                    for i, (h, td) in enumerate(zip(profile.modules, profile.tds))]
        return _run(parsed, run, compute)

    rows, code = _each(modules, run, report)
    return CommandResult(code, render(rows, run.output_format, title="local cohomology"))


def cmd_depth(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    def report(parsed: ParsedModule) -> List[dict]:
        def compute(module: TruncatedFiGModule) -> List[dict]:
            profile = local_cohomology_profile(module)
            classical = classical_depth(module).value
            derivative = derivative_depth(module).value
            return [DepthReport(module_id=parsed.name, depth_lc=profile.depth,
                                depth_classical=classical, depth_derivative=derivative,
                                cd=profile.cd,
                                agree=profile.depth == classical == derivative).row()]
        return _run(parsed, run, compute)

    rows, code = _each(modules, run, report)
    return CommandResult(code, render(rows, run.output_format, title="depth"))


def cmd_conjecture(modules: List[ParsedModule], run: RunConfig) -> CommandResult:
    if modules:
        suite = [(p.name, p.source) for p in modules]
    else:
        suite = generate_suite(run.seed, run.count)
    rows = conjecture_scan(suite, run.window, run.retries)
    code = max((exit_code_for(r.exception) for r in rows if r.exception is not None), default=EXIT_OK)
    return CommandResult(code, render([r.row() for r in rows], run.output_format, title="conjecture"))


def cmd_generate(run: RunConfig, params: Optional[GeneratorParams] = None) -> CommandResult:
    presentation = random_presentation(run.seed, params)
    data = module_parser.dump_presentation(presentation, name=f"random-{run.seed}")
    return CommandResult(EXIT_OK, json.dumps(data, indent=2) + "\n")


# -- driver ------------------------------------------------------------------


def execute(run: RunConfig, modules: Optional[List[ParsedModule]] = None,
            params: Optional[GeneratorParams] = None) -> CommandResult:
    """Run one command; parse and load errors become exit codes instead of exceptions."""
    try:
        if run.command == Command.GENERATE:
            return cmd_generate(run, params)
        if modules is None:
            modules = [module_parser.parse_file(p) for p in run.paths]
        handlers = {
            Command.VALIDATE: cmd_validate,
            Command.INVARIANTS: cmd_invariants,
            Command.HOMOLOGY: cmd_homology,
            Command.LOCALCOH: cmd_localcoh,
            Command.DEPTH: cmd_depth,
            Command.CONJECTURE: cmd_conjecture,
        }
        return handlers[run.command](modules, run)
    except FigLabError as e:
        logger.error(str(e))
        return CommandResult(exit_code_for(e), f"error: {e}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figlab", description="Exact invariants of FI_G-modules")
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("files", nargs="*", help="module files")
    parser.add_argument("--window", type=int, default=None, help="window override")
    parser.add_argument("--retries", type=int, default=config.retries, help="window-doubling retries")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=config.default_format)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--imax", type=int, default=2)
    parser.add_argument("--count", type=int, default=config.suite_size,
                        help="size of the generated conjecture suite")
    parser.add_argument("--prime", type=int, choices=[2, 3], default=None)
    parser.add_argument("--group-order", type=int, choices=[1, 2], default=None)
    parser.add_argument("--max-degree", type=int, default=2)
    parser.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )
    if not config.validate():
        for error in config.get_validation_errors():
            print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_INVALID
    args = build_parser().parse_args(argv)
    try:
        run = RunConfig(command=args.command, paths=args.files, window=args.window,
                        retries=args.retries, output_format=args.output_format, seed=args.seed,
                        imax=args.imax, count=args.count)
        params = GeneratorParams(prime=args.prime, group_order=args.group_order,
                                 max_generator_degree=args.max_degree)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    result = execute(run, params=params)
    if args.output:
        Path(args.output).write_text(result.output)
    else:
        sys.stdout.write(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
