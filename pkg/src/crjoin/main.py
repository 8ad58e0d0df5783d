"""
Command-line interface for crjoin.
"""

import functools
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click
from pydantic import BaseModel, Field, ValidationError
from tabulate import tabulate

from .bounds.calculator import BoundCalculator
from .bounds.models import BoundTriple, BoundValue
from .config import ResourceLimits, Settings, get_settings
from .exceptions import EXIT_CHECK_FAILURE, CrJoinError, InputError
from .harness.example2 import run_example2
from .harness.suites import ALL, SUITE_NAMES, HarnessConfig, HarnessReport, HarnessRunner
from .join.chains import chain_append, chain_from_path, chain_reverse, verify_certificate
from .join.joiner import ChainJoiner, JoinConfig
from .join.models import EqualityChain, JoinCertificate
from .join.patterns import enumerate_patterns
from .monitoring.metrics import get_metrics
from .reduction.models import ReductionPath
from .reduction.steps import star_iter_path
from .reduction.strategies import Strategy, run_strategy
from .runtime import allow_long_integer_text, run_with_deep_stack
from .syntax.documents import (
    JSON,
    TEXT,
    JoinReport,
    certificate_document,
    format_step,
    load_certificates,
    parse_chain,
    parse_path,
    render_certificate_text,
)
from .syntax.parser import parse_term
from .syntax.printer import print_term
from .terms.core import redexes
from .terms.models import position_letters

logger = logging.getLogger(__name__)

JOIN_MODES = ("main", "refined", "all", "improved", "peak-red", "peak-valley")


@dataclass
class CliState:
    """Global options shared by every subcommand."""

    settings: Settings
    seed: Optional[int]
    cases: Optional[int]
    max_size: Optional[int]
    fuel: Optional[int]
    term_cap: Optional[int]
    path_cap: Optional[int]
    bit_cap: int
    fmt: str
    out: Optional[Path]

    @property
    def limits(self) -> ResourceLimits:
        return ResourceLimits(
            term_size_cap=self.term_cap or self.settings.limits.term_size_cap,
            path_length_cap=self.path_cap or self.settings.limits.path_length_cap,
        )

    @property
    def step_fuel(self) -> int:
        return self.settings.harness.step_fuel if self.fuel is None else self.fuel

    def emit(self, text: str) -> None:
        """Write a report to --out, or to stdout."""
        if not text.endswith("\n"):
            text += "\n"
        if self.out is None:
            click.echo(text, nl=False)
            return
        with self.out.open("a", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def guarded(func):
    """Run a command on a deep stack and map crjoin errors to exit codes.

    The wrapped command returns its exit code (0 or None for success).
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            code = run_with_deep_stack(func, *args, **kwargs)
        except CrJoinError as exc:
            logger.debug(f"{func.__name__} failed with {exc.error_code}")
            click.echo(f"error [{exc.error_code}]: {exc}", err=True)
            sys.exit(exc.exit_code)
        if code:
            sys.exit(code)

    return wrapper


def read_text(path: str) -> str:
    """File contents, or stdin for ``-``."""
    if path == "-":
        return click.get_text_stream("stdin").read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror}") from None


# Report models


class TermReport(BaseModel):
    term: str
    size: int
    redexes: List[str] = Field(default_factory=list)


class PathReport(BaseModel):
    strategy: str
    source: str
    target: str
    steps: List[str] = Field(default_factory=list)
    normal_form: bool
    fuel_exhausted: bool


class StarReport(BaseModel):
    iterations: int
    term: str
    size: int
    path_length: Optional[int] = None
    steps: List[str] = Field(default_factory=list)


class BoundRow(BaseModel):
    args: List[str]
    value: str


class BoundsReport(BaseModel):
    function: str
    bit_cap: int
    rows: List[BoundRow] = Field(default_factory=list)


class PatternReport(BaseModel):
    k: int
    class_sizes: List[int]
    patterns: List[Dict[str, str]] = Field(default_factory=list)


@click.group()
@click.option("--seed", type=int, default=None, help="Harness base seed")
@click.option("--cases", type=click.IntRange(min=0), default=None, help="Harness cases per suite")
@click.option("--max-size", type=click.IntRange(min=1), default=None, help="Size bound of random terms")
@click.option("--fuel", type=click.IntRange(min=0), default=None, help="Step fuel")
@click.option("--term-cap", type=click.IntRange(min=1), default=None, help="Term size cap")
@click.option("--path-cap", type=click.IntRange(min=1), default=None, help="Path length cap")
@click.option("--bit-cap", type=click.IntRange(min=1), default=None, help="Bit cap of bound arithmetic")
@click.option("--format", "fmt", type=click.Choice([TEXT, JSON]), default=TEXT, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Report file")
@click.pass_context
def cli(ctx, seed, cases, max_size, fuel, term_cap, path_cap, bit_cap, fmt, out):
    """Constructive Church-Rosser joins for the untyped λ-calculus."""
    settings = get_settings()
    allow_long_integer_text()
    if out is not None:
        out.write_text("", encoding="utf-8")
    ctx.obj = CliState(
        settings=settings,
        seed=seed,
        cases=cases,
        max_size=max_size,
        fuel=fuel,
        term_cap=term_cap,
        path_cap=path_cap,
        bit_cap=bit_cap or settings.limits.bit_cap,
        fmt=fmt,
        out=out,
    )


@cli.command()
@click.argument("term_file")
@click.pass_obj
@guarded
def parse(state: CliState, term_file: str):
    """Print the canonical form of a term and its size."""
    term = parse_term(read_text(term_file))
    report = TermReport(
        term=print_term(term),
        size=term.size,
        redexes=[position_letters(p) for p in redexes(term).ordered()],
    )
    if state.fmt == JSON:
        state.emit(report.model_dump_json(indent=2))
    else:
        state.emit(f"{report.term}\nsize: {report.size}\nredexes: {len(report.redexes)}")


@cli.command()
@click.argument("term_file")
@click.option(
    "--strategy",
    type=click.Choice([strategy.value for strategy in Strategy]),
    default=Strategy.LEFTMOST.value,
    show_default=True,
)
@click.option("--steps", type=click.IntRange(min=0), default=None, help="Step budget (default --fuel)")
@click.pass_obj
@guarded
def reduce(state: CliState, term_file: str, strategy: str, steps: Optional[int]):
    """Reduce a term step by step."""
    term = parse_term(read_text(term_file))
    fuel = state.step_fuel if steps is None else steps
    rng = random.Random(state.seed if state.seed is not None else state.settings.harness.seed)
    run = run_strategy(term, Strategy(strategy), fuel, state.limits, rng)
    report = PathReport(
        strategy=strategy,
        source=print_term(term),
        target=print_term(run.path.target),
        steps=[format_step(step) for step in run.path.steps],
        normal_form=run.normal_form,
        fuel_exhausted=run.fuel_exhausted,
    )
    if state.fmt == JSON:
        state.emit(report.model_dump_json(indent=2))
        return
    lines = list(report.steps)
    if run.normal_form:
        lines.append(f"normal form: {report.target}")
    else:
        lines.append(f"fuel-exhausted after {run.macro_steps} steps: {report.target}")
    state.emit("\n".join(lines))


@cli.command()
@click.argument("term_file")
@click.option("--iterations", "-n", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--path", "show_path", is_flag=True, help="Also print the Gross-Knuth path")
@click.pass_obj
@guarded
def star(state: CliState, term_file: str, iterations: int, show_path: bool):
    """Print the iterated Takahashi translation M^{n*}."""
    term = parse_term(read_text(term_file))
    path = star_iter_path(term, iterations, state.limits)
    report = StarReport(
        iterations=iterations,
        term=print_term(path.target),
        size=path.target.size,
        path_length=path.length if show_path else None,
        steps=[format_step(step) for step in path.steps] if show_path else [],
    )
    if state.fmt == JSON:
        state.emit(report.model_dump_json(indent=2))
        return
    lines = [report.term, f"size: {report.size}"]
    if show_path:
        lines.append(f"path ({path.length} steps):")
        lines.extend(f"  {step}" for step in report.steps)
    state.emit("\n".join(lines))


def _chain_details(joiner: ChainJoiner, chain: EqualityChain) -> Dict[str, int]:
    index, iterations = joiner.crossed_point(chain)
    return {
        "length": chain.length,
        "right": chain.right_count,
        "left": chain.left_count,
        "crossed_index": index,
        "crossed_iterations": iterations,
    }


def _join_chain(joiner: ChainJoiner, chain: EqualityChain, mode: str) -> List[JoinCertificate]:
    if mode == "main":
        return list(joiner.join_main(chain))
    if mode == "refined":
        return [joiner.join_refined(chain)]
    if mode == "all":
        return joiner.join_all(chain).certificates()
    raise InputError(f"mode {mode} joins a peak; pass --peak LEFT RIGHT")


def _join_peak(
    joiner: ChainJoiner, left: ReductionPath, right: ReductionPath, mode: str
) -> Tuple[List[JoinCertificate], Dict[str, int]]:
    details = {"n": left.length, "m": right.length}
    if mode == "main":
        return list(joiner.join_reduction_peak(left, right)), details
    if mode == "refined":
        chain = chain_append(chain_reverse(chain_from_path(left)), chain_from_path(right))
        return [joiner.join_refined(chain)], details
    if mode == "peak-red":
        return [joiner.join_peak_red(left, right)], details
    if mode == "peak-valley":
        return [joiner.join_peak_valley(left, right)], details

    improved = joiner.join_improved(left, right)
    details.update(a=improved.left_new_redexes, b=improved.right_new_redexes)
    certs = [improved.towards_right, improved.towards_left]
    if mode == "all":
        certs = list(joiner.join_reduction_peak(left, right)) + certs
        certs.append(joiner.join_peak_red(left, right))
        certs.append(joiner.join_peak_valley(left, right))
    return certs, details


@cli.command()
@click.argument("chain_file", required=False)
@click.option("--peak", nargs=2, default=None, metavar="LEFT RIGHT", help="Two path files")
@click.option("--mode", type=click.Choice(JOIN_MODES), default="main", show_default=True)
@click.pass_obj
@guarded
def join(state: CliState, chain_file: Optional[str], peak: Optional[Tuple[str, str]], mode: str):
    """Join a β-equality chain or a reduction peak."""
    if (chain_file is None) == (peak is None):
        raise InputError("pass either a chain file or --peak LEFT RIGHT")
    limits = state.limits
    joiner = ChainJoiner(JoinConfig(limits=limits, bit_cap=state.bit_cap))
    if peak is None:
        chain = parse_chain(read_text(chain_file), limits)
        certs = _join_chain(joiner, chain, mode)
        details = _chain_details(joiner, chain)
    else:
        left = parse_path(read_text(peak[0]), limits)
        right = parse_path(read_text(peak[1]), limits)
        certs, details = _join_peak(joiner, left, right, mode)

    passed = all(cert.bounds_passed for cert in certs)
    if state.fmt == JSON:
        report = JoinReport(
            mode=mode,
            passed=passed,
            details=details,
            certificates=[certificate_document(cert, state.bit_cap) for cert in certs],
        )
        state.emit(report.model_dump_json(indent=2))
    else:
        blocks = [render_certificate_text(cert, state.bit_cap) for cert in certs]
        summary = ", ".join(f"{key}={value}" for key, value in details.items())
        blocks.append(f"{mode}: {summary}; bounds {'ok' if passed else 'FAILED'}\n")
        state.emit("\n".join(blocks))
    return 0 if passed else EXIT_CHECK_FAILURE


def _parse_range(text: str) -> List[int]:
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return list(range(int(low), int(high) + 1))
        return [int(text)]
    except ValueError:
        raise InputError(f"Invalid argument range {text!r}; expected N or A..B") from None


def _render_bound(value, bit_cap: int) -> str:
    if isinstance(value, (BoundValue, BoundTriple)):
        return value.render(bit_cap)
    return str(value)


@cli.command(context_settings={"ignore_unknown_options": True})
@click.argument("function")
@click.argument("args", nargs=-1, type=click.UNPROCESSED)
@click.option("--grid", is_flag=True, help="Read every argument as a range A..B")
@click.pass_obj
@guarded
def bounds(state: CliState, function: str, args: Sequence[str], grid: bool):
    """
    Evaluate a bound function.

    FUNCTION is one of iter-exp, f, len, size-after, star-size, mon, rev,
    cr-red, v-size, cr-eq, bl; ``compare-bl SIZE MAX_L MAX_R`` tabulates
    CR-red against bl.
    """
    calculator = BoundCalculator(state.bit_cap)
    if function == "compare-bl":
        if len(args) != 3:
            raise InputError("compare-bl expects SIZE MAX_L MAX_R")
        size, max_l, max_r = (_parse_range(arg)[0] for arg in args)
        table = calculator.compare_cr_red_with_bl(size, max_l, max_r)
        headers = ["l", "r", "CR-red left", "CR-red right", "bl"]
        rows = [BoundRow(args=[str(row[0]), str(row[1])], value=" ".join(row[2:])) for row in table]
    elif grid:
        table = calculator.grid(function, [_parse_range(arg) for arg in args])
        headers = [f"arg{i}" for i in range(len(args))] + [function]
        rows = [
            BoundRow(args=[str(v) for v in row[:-1]], value=_render_bound(row[-1], state.bit_cap))
            for row in table
        ]
        table = [row.args + [row.value] for row in rows]
    else:
        value = calculator.evaluate(function, list(args))
        rows = [BoundRow(args=list(args), value=_render_bound(value, state.bit_cap))]
        table = None

    if state.fmt == JSON:
        report = BoundsReport(function=function, bit_cap=state.bit_cap, rows=rows)
        state.emit(report.model_dump_json(indent=2))
    elif table is None:
        state.emit(rows[0].value)
    else:
        state.emit(tabulate(table, headers=headers, disable_numparse=True))


@cli.command()
@click.argument("k", type=int)
@click.pass_obj
@guarded
def patterns(state: CliState, k: int):
    """Classify all arrow patterns of chains of length K."""
    table = enumerate_patterns(k, state.settings.limits.pattern_cap)
    rows = [
        {
            "pattern": row.pattern or "(empty)",
            "right": str(row.right),
            "left": str(row.left),
            "source": row.source_reduct,
            "target": row.target_reduct,
            "crossed": row.crossed_reduct,
        }
        for row in table.rows()
    ]
    if state.fmt == JSON:
        report = PatternReport(k=k, class_sizes=table.class_sizes(), patterns=rows)
        state.emit(report.model_dump_json(indent=2))
        return
    sizes = " ".join(str(size) for size in table.class_sizes())
    state.emit(f"{tabulate(rows, headers='keys', disable_numparse=True)}\nclass sizes: {sizes}")


def _harness_text(report: HarnessReport) -> str:
    rows = [
        [suite.suite, suite.passed, suite.failed, suite.skipped, f"{suite.skipped_fraction:.0%}"]
        for suite in report.suites
    ]
    lines = [
        f"seed {report.seed}, {report.cases} cases per suite",
        tabulate(rows, headers=["suite", "passed", "failed", "skipped", "skip rate"]),
    ]
    for suite in report.suites:
        for failure in suite.failures:
            lines.append(f"FAILED {failure.seed}: {failure.message}")
    for name in report.over_skip_limit:
        lines.append(f"TOO MANY SKIPS {name}: at least half its cases hit a resource cap")
    if report.passed:
        lines.append("ok")
    else:
        lines.append(f"{report.failed} failures, {len(report.over_skip_limit)} suites over the skip limit")
    return "\n".join(lines)


@cli.command()
@click.option(
    "--suite",
    "suites",
    type=click.Choice(SUITE_NAMES),
    multiple=True,
    default=(ALL,),
    show_default=True,
)
@click.option("--metrics-out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_obj
@guarded
def check(state: CliState, suites: Sequence[str], metrics_out: Optional[Path]):
    """Run the seeded property suites on random instances."""
    try:
        config = HarnessConfig.from_settings(
            state.settings,
            seed=state.seed,
            cases=state.cases,
            max_term_size=state.max_size,
            step_fuel=state.fuel,
            term_size_cap=state.term_cap,
            path_length_cap=state.path_cap,
            bit_cap=state.bit_cap,
        )
    except ValidationError as exc:
        raise InputError(f"Invalid harness configuration: {exc.errors()[0]['msg']}") from None
    logger.info(f"running {', '.join(suites)} with seed {config.seed}")
    report = HarnessRunner(config).run(suites)
    if state.fmt == JSON:
        state.emit(report.model_dump_json(indent=2))
    else:
        state.emit(_harness_text(report))
    if metrics_out is not None and state.settings.monitoring.enable_metrics:
        metrics_out.write_bytes(get_metrics())
    return 0 if report.passed else EXIT_CHECK_FAILURE


@cli.command()
@click.argument("n", type=int)
@click.option("--certificate", "show_certificate", is_flag=True, help="Also emit the join certificate")
@click.pass_obj
@guarded
def example2(state: CliState, n: int, show_certificate: bool):
    """Build and join the Church-numeral tower example of height N."""
    report, cert = run_example2(n, state.limits, state.bit_cap)
    if state.fmt == JSON:
        state.emit(report.model_dump_json(indent=2))
    else:
        rows = [
            ["|M1|", report.size_m1],
            ["|M2|", report.size_m2],
            ["stated size 8n+1", report.stated_size],
            ["steps M1 to reduct", report.left_steps],
            ["steps M2 to reduct", report.right_steps],
            ["chain length", report.chain_length],
            ["chain length bound", report.chain_length_bound],
            ["reduct size", report.reduct_size],
            ["expected reduct size", report.expected_reduct_size],
            ["reduct matches", report.reduct_matches],
            ["join lengths", f"{report.join_lengths[0]}, {report.join_lengths[1]}"],
            ["bounds", "ok" if report.bounds_passed else "FAILED"],
        ]
        state.emit(f"example 2, n = {n}\n{tabulate(rows, disable_numparse=True)}")
    if show_certificate:
        state.emit(render_certificate_text(cert, state.bit_cap))
    return 0 if report.passed else EXIT_CHECK_FAILURE


@cli.command()
@click.argument("certificate_file")
@click.pass_obj
@guarded
def verify(state: CliState, certificate_file: str):
    """Replay the certificates of a JSON certificate or join report."""
    certs = load_certificates(read_text(certificate_file))
    lines = []
    passed = True
    for cert in certs:
        verify_certificate(cert, state.limits)
        passed = passed and cert.bounds_passed
        verdict = "ok" if cert.bounds_passed else "bound checks FAILED"
        lines.append(f"{cert.descriptor}: replayed {cert.lengths[0]} + {cert.lengths[1]} steps, {verdict}")
    state.emit("\n".join(lines) if lines else "no certificates")
    return 0 if passed else EXIT_CHECK_FAILURE


def main() -> None:
    """Console entry point."""
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.monitoring.log_level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    cli(prog_name="crjoin")


if __name__ == "__main__":
    main()
