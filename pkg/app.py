"""
Quadbound command-line front end

Two-sided bounds, directional iterations and recovery channels for quantum
state discrimination, maximum overlap and conditional min-entropy.
Run with: python app.py <command> [options]
"""
import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np

from config import (
    DEFAULT_MAX_ITERS,
    DEFAULT_S_GRID,
    DEFAULT_SEED,
    DEFAULT_TOL,
    JSON_INDENT,
    LOG_FORMAT,
    LOG_LEVEL,
    SELFTEST_DISCRIMINATION_SEEDS,
    SELFTEST_ITERATION_SEEDS,
    SELFTEST_ITERATION_STEPS,
    SELFTEST_MIN_ENTROPY_SEEDS,
    SELFTEST_OVERLAP_SEEDS,
    SELFTEST_RECOVERY_SEEDS,
)
from src.alerts import InvariantAuditor, InvariantRule, InvariantSeverity, InvariantType, Violation
from src.channel import (
    barnum_knill_recovery,
    choi,
    compose,
    entanglement_fidelity,
    quadratic_recovery,
    recovery_bounds,
    transpose_channel,
)
from src.errors import ArityError, InvariantViolation, NormalizationError, ParseError, QuadboundError
from src.ingestion import (
    decode_bipartite,
    decode_ensemble,
    decode_matrix,
    decode_overlap,
    encode_matrix,
    load_json,
    make_rng,
    parse_channel_spec,
    random_bipartite,
    random_channel,
    random_density,
    random_dilation,
    random_ensemble,
    random_overlap_instance,
    random_povm,
)
from src.iterate import iterate_overlap_to_convergence, iterate_povm_to_convergence
from src.measure import (
    BoundReport,
    helstrom_optimal,
    holevo_curlander_bounds,
    p_succ,
    pretty_good_measurement,
    quadratic_measurement,
)
from src.overlap import min_entropy_sweep, overlap_bounds
from src.storage import ReportStore

logger = logging.getLogger(__name__)

# =============================================================================
# RUN CONFIGURATION
# =============================================================================
class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


@dataclass
class RunConfig:
    """Options shared by every command."""
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON

    def __post_init__(self):
        if self.seed < 0:
            raise NormalizationError(f"seed must be non-negative, got {self.seed}")
        if self.tol <= 0:
            raise NormalizationError(f"tolerance must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise NormalizationError(f"max_iters must be at least 1, got {self.max_iters}")

    def rng(self, offset: int = 0) -> np.random.Generator:
        return make_rng(self.seed + offset)


# =============================================================================
# OUTPUT
# =============================================================================
def emit(store: ReportStore, config: RunConfig, csv_section: str) -> None:
    """Write JSON (all sections) or the CSV summary of one section to --out or stdout."""
    if config.output_path:
        if config.format is OutputFormat.CSV:
            if not store.export_to_csv(csv_section, config.output_path):
                logger.warning(f"section {csv_section} is empty; nothing written")
        else:
            store.export_to_json(config.output_path)
        return
    if config.format is OutputFormat.CSV:
        sys.stdout.write(store.to_csv_text(csv_section))
    else:
        sys.stdout.write(store.to_json_text() + "\n")


def require_clean(auditor: InvariantAuditor) -> None:
    """Raise InvariantViolation when any audited result broke a critical invariant."""
    critical = auditor.get_history(severity=InvariantSeverity.CRITICAL)
    if critical:
        raise InvariantViolation("; ".join(v.message for v in critical))


# =============================================================================
# INPUTS
# =============================================================================
def load_ensemble(args, config: RunConfig):
    if args.random:
        m, d = args.random
        return random_ensemble(config.rng(), m, d)
    if not args.file:
        raise ParseError("an ensemble file or --random M D is required")
    return decode_ensemble(load_json(args.file))


def load_rho(path: Optional[str], dim: int) -> np.ndarray:
    if path is None:
        return np.eye(dim, dtype=complex) / dim
    return decode_matrix(load_json(path))


# =============================================================================
# COMMANDS
# =============================================================================
def cmd_discriminate(args, config: RunConfig) -> int:
    """Lambda, Lambda^2, the QW and PGM success rates, and the Helstrom optimum for two states."""
    e = load_ensemble(args, config)
    report = holevo_curlander_bounds(e)
    auditor = InvariantAuditor()
    auditor.audit(report)
    require_clean(auditor)

    store = ReportStore()
    store.add(
        "discrimination",
        report,
        p_succ_qw=report.achieved,
        p_succ_pgm=p_succ(e, pretty_good_measurement(e)),
        size=e.size,
        dim=e.dim,
    )
    emit(store, config, "discrimination")
    return 0


def _ensemble_start(name: str, e, config: RunConfig):
    if name == "identity":
        return None
    if name == "qw":
        return quadratic_measurement(e)
    if name == "pgm":
        return pretty_good_measurement(e)
    if name == "perfect":
        if e.size != 2:
            raise ArityError(f"the perfect start is the Helstrom measurement and needs 2 states, got {e.size}")
        return helstrom_optimal(e)[1]
    return random_povm(config.rng(), e.size, e.dim)


def _overlap_start(name: str, instance, config: RunConfig):
    if name == "identity":
        return None
    if name == "random":
        return random_dilation(config.rng(), instance.dim_k, instance.dim_l, instance.dim_k)
    raise ParseError(f"start '{name}' is not available for overlap instances")


def cmd_iterate(args, config: RunConfig) -> int:
    """Iterate an ensemble (JRF) or an overlap instance to a plateau and emit the trace."""
    obj = load_json(args.file) if args.file and not args.random else None
    if obj is not None and "mu" in obj:
        instance = decode_overlap(obj)
        start = _overlap_start(args.start, instance, config)
        _, trace = iterate_overlap_to_convergence(
            instance, start=start, tol=config.tol, max_iters=config.max_iters
        )
    else:
        e = load_ensemble(args, config) if obj is None else decode_ensemble(obj)
        start = _ensemble_start(args.start, e, config)
        _, trace = iterate_povm_to_convergence(e, start=start, tol=config.tol, max_iters=config.max_iters)

    auditor = InvariantAuditor()
    auditor.audit(trace)
    require_clean(auditor)

    store = ReportStore()
    store.add("trace", trace, start=args.start)
    for i, (seminorm, lam, objective) in enumerate(zip(trace.seminorms, trace.lambda_values, trace.objectives)):
        store.add("steps", {"step": i, "seminorm": seminorm, "lambda": lam, "objective": objective})
    emit(store, config, "steps")
    return 0


def cmd_reverse(args, config: RunConfig) -> int:
    """Recovery bounds and the fidelities of the quadratic, Barnum-Knill and transpose recoveries."""
    channel = parse_channel_spec(args.channel, rng=config.rng())
    rho = load_rho(args.rho, channel.dim_in)
    report = recovery_bounds(channel, rho)
    auditor = InvariantAuditor()
    auditor.audit(report)
    require_clean(auditor)

    recoveries = {
        "quadratic": quadratic_recovery(channel, rho),
        "barnum_knill": barnum_knill_recovery(channel, rho),
        "transpose": transpose_channel(channel),
    }
    fidelities = {
        f"fidelity_{name}": entanglement_fidelity(compose(r, channel), rho)
        for name, r in recoveries.items()
    }
    # F_e(rho, R^QR) of the recovery on its own, defined when A maps a space to itself
    own_fidelity = (
        entanglement_fidelity(recoveries["quadratic"], rho) if channel.dim_in == channel.dim_out else None
    )
    store = ReportStore()
    store.add("recovery", report, output_trace=report.ceiling, quadratic_alone=own_fidelity, **fidelities)
    emit(store, config, "recovery")

    if args.dump_choi:
        dump = {
            name: encode_matrix(choi(r).matrix, dims=(r.dim_out, r.dim_in))
            for name, r in recoveries.items()
        }
        with open(args.dump_choi, "w", encoding="utf-8") as handle:
            json.dump(dump, handle, indent=JSON_INDENT)
            handle.write("\n")
        logger.info(f"wrote recovery Choi matrices to {args.dump_choi}")
    return 0


def cmd_minentropy(args, config: RunConfig) -> int:
    """Lower and upper H_min(A|B) estimates for each s, with the best combination."""
    if args.random:
        dim_a, dim_b = args.random
        rho, dims = random_bipartite(config.rng(), dim_a, dim_b, pure=args.pure)
    elif args.file:
        rho, dims = decode_bipartite(load_json(args.file))
    else:
        raise ParseError("a bipartite state file or --random DA DB is required")
    s_values = args.s if args.s else list(DEFAULT_S_GRID)
    sweep = min_entropy_sweep(rho, dims, s_values)

    auditor = InvariantAuditor()
    for report in sweep.reports:
        auditor.audit(report, label=f"min-entropy s={report.s}")
    require_clean(auditor)

    store = ReportStore()
    for report in sweep.reports:
        store.add("min_entropy", report)
    store.add("best", {"best_lower": sweep.best_lower, "best_upper": sweep.best_upper})
    emit(store, config, "min_entropy")
    return 0


# =============================================================================
# SELF-TEST
# =============================================================================
def _suite(name: str, count: int, check: Callable[[int], List], store: ReportStore) -> int:
    """Run check(i) for i < count and record the number of critical violations."""
    started = time.perf_counter()
    failures = 0
    for i in range(count):
        failures += sum(1 for v in check(i) if v.severity == InvariantSeverity.CRITICAL)
    logger.info(f"selftest {name}: {count} instances in {time.perf_counter() - started:.2f}s")
    store.add("selftest", {
        "suite": name,
        "instances": count,
        "violations": failures,
        "status": "pass" if failures == 0 else "fail",
    })
    return failures


def cmd_selftest(args, config: RunConfig) -> int:
    """Audit every bound family on seeded random instances; exit 1 on any critical violation."""
    auditor = InvariantAuditor()
    store = ReportStore()
    critical: List[Violation] = []
    auditor.on_violation(lambda v: critical.append(v) if v.severity == InvariantSeverity.CRITICAL else None)
    if args.inject_fault:
        auditor.add_rule(InvariantRule(
            name="injected_fault",
            invariant_type=InvariantType.CUSTOM,
            applies_to=(BoundReport,),
            condition=lambda r, slack: True,
            value=lambda r: r.achieved,
            message_template="injected fault at achieved value {value:.6g}",
        ))

    def discrimination(i):
        rng = config.rng(i)
        e = random_ensemble(rng, 2, 2 + i % 3)
        found = auditor.audit(holevo_curlander_bounds(e), label=f"discrimination #{i}")
        # the injected rule fires on the first report only
        auditor.remove_rule("injected_fault")
        return found

    def iteration(i):
        rng = config.rng(i)
        m, d = 2 + i % 4, 2 + i % 3
        e = random_ensemble(rng, m, d)
        _, trace = iterate_povm_to_convergence(
            e, start=random_povm(rng, m, d), tol=config.tol, max_iters=SELFTEST_ITERATION_STEPS
        )
        return auditor.audit(trace, label=f"JRF trace #{i}")

    def recovery(i):
        rng = config.rng(i)
        dim_in, dim_out = 2 + i % 2, 2 + (i // 2) % 2
        channel = random_channel(rng, dim_in, dim_out)
        return auditor.audit(recovery_bounds(channel, random_density(rng, dim_in)), label=f"recovery #{i}")

    def overlap(i):
        rng = config.rng(i)
        instance = random_overlap_instance(rng, 2 + i % 2, 2, 2 + (i // 2) % 2)
        return auditor.audit(overlap_bounds(instance), label=f"overlap #{i}")

    def min_entropy(i):
        rho, dims = random_bipartite(config.rng(i), 2, 2 + i % 2)
        found = []
        for report in min_entropy_sweep(rho, dims).reports:
            found += auditor.audit(report, label=f"min-entropy #{i} s={report.s}")
        return found

    failures = 0
    failures += _suite("discrimination", SELFTEST_DISCRIMINATION_SEEDS, discrimination, store)
    failures += _suite("iteration", SELFTEST_ITERATION_SEEDS, iteration, store)
    failures += _suite("recovery", SELFTEST_RECOVERY_SEEDS, recovery, store)
    failures += _suite("overlap", SELFTEST_OVERLAP_SEEDS, overlap, store)
    failures += _suite("min_entropy", SELFTEST_MIN_ENTROPY_SEEDS, min_entropy, store)
    emit(store, config, "selftest")
    if failures:
        print(f"selftest failed: {failures} critical violations, first: {critical[0].message}", file=sys.stderr)
        return 1
    return 0


# =============================================================================
# ENTRY POINT
# =============================================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="PRNG seed for random instances")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Iteration plateau tolerance")
    common.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS, help="Iteration step limit")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument("--out", default=None, help="Write results here instead of stdout")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")

    parser = argparse.ArgumentParser(description="Two-sided bounds for discrimination, recovery and overlap problems.")
    commands = parser.add_subparsers(dest="command", required=True)

    discriminate = commands.add_parser("discriminate", parents=[common], help="Holevo-Curlander bounds")
    discriminate.add_argument("file", nargs="?", help="Ensemble JSON")
    discriminate.add_argument("--random", type=int, nargs=2, metavar=("M", "D"), help="Random ensemble")
    discriminate.set_defaults(handler=cmd_discriminate)

    iterate = commands.add_parser("iterate", parents=[common], help="Directional iteration trace")
    iterate.add_argument("file", nargs="?", help="Ensemble or overlap instance JSON")
    iterate.add_argument("--random", type=int, nargs=2, metavar=("M", "D"), help="Random ensemble")
    iterate.add_argument(
        "--start",
        choices=["identity", "pgm", "qw", "perfect", "random"],
        default="identity",
        help="Starting point",
    )
    iterate.set_defaults(handler=cmd_iterate)

    reverse = commands.add_parser("reverse", parents=[common], help="Recovery channel bounds")
    reverse.add_argument("channel", help="Channel spec such as depolarizing:p=0.5,d=2, or a CP map JSON file")
    reverse.add_argument("--rho", default=None, help="Matrix JSON of the input state (default maximally mixed)")
    reverse.add_argument("--dump-choi", default=None, help="Write recovery Choi matrices to this JSON file")
    reverse.set_defaults(handler=cmd_reverse)

    minentropy = commands.add_parser("minentropy", parents=[common], help="Conditional min-entropy bounds")
    minentropy.add_argument("file", nargs="?", help="Bipartite state JSON")
    minentropy.add_argument("--s", type=float, action="append", help="Free parameter s (repeatable)")
    minentropy.add_argument("--random", type=int, nargs=2, metavar=("DA", "DB"), help="Random bipartite state")
    minentropy.add_argument("--pure", action="store_true", help="Draw a pure random state")
    minentropy.set_defaults(handler=cmd_minentropy)

    selftest = commands.add_parser("selftest", parents=[common], help="Invariant suite on seeded instances")
    selftest.add_argument("--inject-fault", action="store_true", help="Perturb one report to exercise the auditor")
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else LOG_LEVEL, format=LOG_FORMAT, stream=sys.stderr)
    try:
        config = RunConfig(
            seed=args.seed,
            tol=args.tol,
            max_iters=args.max_iters,
            output_path=args.out,
            format=OutputFormat(args.format),
        )
        return args.handler(args, config)
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 1
    except QuadboundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
