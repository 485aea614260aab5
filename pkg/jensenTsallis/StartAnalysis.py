#!/usr/bin/env python3
"""
Nonextensive Divergence Tool - Entry Point
Computes entropies and divergences of histogram files, sweeps the entropic
index, runs the numerical verification suite and the JTqD minimizer.
"""
import sys
import argparse
from itertools import product as cartesian
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# Import logging
from logging_config import setup_logging, get_logger

from divergence import (BOOLEAN_ZERO_TOLERANCE, boolean_difference, jrd, jsd, jtd,
                        jtqd, jtqd2, kld, pairwise_weights, renyi_divergence,
                        tsallis_relative_entropy)
from errors import (ArgumentError, DomainError, HistogramParseError, JensenTsallisError,
                    OptimizerConvergenceError, OutputWriteError, UsageError)
from functionals import create_functional
from measures import ProbabilityVector, align_histograms, load_histogram
from minimizer import minimize_jtqd_first_arg
from result_table import ResultTable, format_for_filename
from run_config import (COMMAND_MEASURES, DEFAULT_SETTINGS_FILE, RunConfig,
                        build_run_config, load_settings)
from verify import run_suite, suite_names

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VERIFICATION = 3
EXIT_OPTIMIZER = 4

# Pairwise measures: name -> (takes q, function of (p_i, p_j, pair weights, q))
PAIRWISE_MEASURES: Dict[str, Tuple[bool, Callable[..., float]]] = {
    'kld': (False, lambda a, b, w, q: kld(a, b)),
    'd_q': (True, lambda a, b, w, q: tsallis_relative_entropy(a, b, q)),
    'renyi_div': (True, lambda a, b, w, q: renyi_divergence(a, b, q)),
    'jsd': (False, lambda a, b, w, q: jsd(w, [a, b])),
    'jrd': (True, lambda a, b, w, q: jrd(w, [a, b], q)),
    'jtd': (True, lambda a, b, w, q: jtd(w, [a, b], q)),
    'jtqd': (True, lambda a, b, w, q: jtqd(w, [a, b], q)),
}

# Jensen-type measures over all inputs at once, used by the sweep
JENSEN_MEASURES: Dict[str, Callable[[ProbabilityVector, List[ProbabilityVector], float], float]] = {
    'jtqd': jtqd,
    'jsd': lambda w, dists, q: jsd(w, dists),
    'jrd': jrd,
    'jtd': jtd,
}


class AnalysisManager:
    """
    Runs one command of a validated RunConfig and returns its result table.
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the analysis manager.

        Args:
            config: validated run configuration
        """
        self.logger = get_logger(__name__)
        self.config = config

        # Command name to handler mapping
        self.commands = {
            'entropy': self.cmd_entropy,
            'divergence': self.cmd_divergence,
            'sweep': self.cmd_sweep,
            'verify': self.cmd_verify,
            'minimize': self.cmd_minimize,
        }
        self.verification_passed = True

    def run(self) -> ResultTable:
        self.logger.info(f"Running {self.config.command} on {len(self.config.inputs)} input(s)")
        return self.commands[self.config.command]()

    def _load_inputs(self, align: bool) -> List[ProbabilityVector]:
        """
        Read and normalize the input histograms, aligned to the union of labels if asked.

        Raises:
            HistogramParseError: unreadable file, malformed record or zero total mass
        """
        measures = [load_histogram(path, self.config.sort_labels) for path in self.config.inputs]
        if align:
            measures = align_histograms(measures, self.config.sort_labels)
        dists = []
        for path, measure in zip(self.config.inputs, measures):
            try:
                dists.append(measure.normalized())
            except DomainError:
                raise HistogramParseError("histogram has zero total mass", path)
            self.logger.debug(f"Loaded {path}: {measure.n} labels, total {measure.total:g}")
        return dists

    def _weights(self, count: int) -> ProbabilityVector:
        if self.config.weights is None:
            return ProbabilityVector.uniform(count)
        return ProbabilityVector(self.config.weights)

    def cmd_entropy(self) -> ResultTable:
        """One row per (input, measure, q); Shannon rows carry no q."""
        table = ResultTable(["input", "measure", "q", "value"])
        dists = self._load_inputs(align=False)
        for path, dist in zip(self.config.inputs, dists):
            for name in self.config.selected_measures:
                if name == 'shannon':
                    table.add_row(path, name, None, create_functional(name)(dist))
                    continue
                for q in self.config.q_values:
                    table.add_row(path, name, q, create_functional(name, q)(dist))
        return table

    def cmd_divergence(self) -> ResultTable:
        """
        Pairwise matrix, flattened to one row per (measure, q, input_a, input_b).

        Jensen-type cells use the pair's renormalized weights.
        """
        table = ResultTable(["measure", "q", "input_a", "input_b", "value"])
        dists = self._load_inputs(align=True)
        weights = self._weights(len(dists))
        inputs = self.config.inputs
        pairs = list(cartesian(range(len(dists)), repeat=2))
        for name in self.config.selected_measures:
            takes_q, measure = PAIRWISE_MEASURES[name]
            q_values: Sequence[Optional[float]] = self.config.q_values if takes_q else [None]
            for q in q_values:
                for i, j in pairs:
                    pair = pairwise_weights(weights, i, j)
                    value = measure(dists[i], dists[j], pair, q)
                    table.add_row(name, q, inputs[i], inputs[j], value)
        return table

    def cmd_sweep(self) -> ResultTable:
        """Plot-ready table: one row per q, one column per requested measure."""
        measures = self.config.selected_measures
        table = ResultTable(["q"] + list(measures))
        dists = self._load_inputs(align=True)
        weights = self._weights(len(dists))
        for q in self.config.q_values:
            values = []
            for name in measures:
                if name == 'jtqd' and len(dists) == 2 and self.config.weights is None:
                    if q == 0.0:
                        # ingested counts: zero test with a tolerance
                        values.append(boolean_difference(dists[0], dists[1], BOOLEAN_ZERO_TOLERANCE))
                    else:
                        values.append(jtqd2(dists[0], dists[1], q))
                else:
                    values.append(JENSEN_MEASURES[name](weights, dists, q))
            table.add_row(q, *values)
        return table

    def cmd_verify(self) -> ResultTable:
        """
        Run the verification suite; a failing check clears verification_passed.

        Raises:
            UsageError: unknown --only name or invalid sampling settings
        """
        try:
            plan = self.config.sampling_plan()
            reports = run_suite(plan, self.config.only or None)
        except ArgumentError as e:
            raise UsageError(str(e))

        table = ResultTable(["name", "verdict", "worst_violation", "tolerance", "samples", "seed"])
        for report in reports:
            table.add_row(report.name, report.verdict, report.worst_violation,
                          report.tolerance, report.samples, report.seed)
        table.records = [report.to_dict() for report in reports]

        failed = [report.name for report in reports if not report.passed]
        self.verification_passed = not failed
        if failed:
            self.logger.error(f"❌ {len(failed)} of {len(reports)} checks failed: {', '.join(failed)}")
        else:
            self.logger.info(f"✅ All {len(reports)} checks passed")
        return table

    def cmd_minimize(self) -> ResultTable:
        """
        Minimizer of T_q(., p2) for the single input p2, one row per q.

        Raises:
            OptimizerConvergenceError: q > 2 and the descent did not settle
        """
        target = self._load_inputs(align=False)[0]
        labels = list(target.labels or [f"x{i}" for i in range(target.n)])
        table = ResultTable(["q", "objective"] + labels)
        records: List[Dict[str, Any]] = []
        for q in self.config.q_values:
            found = minimize_jtqd_first_arg(target, q, self.config.iterations,
                                            self.config.optimizer_tolerance)
            objective = jtqd2(found, target, q, fast_path=False)
            table.add_row(q, objective, *found.entries.tolist())
            records.append({
                "q": q,
                "objective": objective,
                "minimizer": dict(zip(labels, found.entries.tolist())),
                "target": dict(zip(labels, target.entries.tolist())),
            })
            self.logger.info(f"q={q:g}: objective {objective:.6g} at {found}")
        table.records = records
        return table


class AnalysisArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    q_choice = common.add_mutually_exclusive_group()
    q_choice.add_argument('--q', help='Comma separated entropic indices, e.g. 0,0.5,1')
    q_choice.add_argument('--q-grid', dest='q_grid', help='Grid a:b:step, end included')
    common.add_argument('--format', choices=['csv', 'structured'],
                        help='Output format (default from settings: csv)')
    common.add_argument('--output', help='Also write results to a .json, .yaml or .csv file')
    common.add_argument('--sort-labels', dest='sort_labels', action='store_true',
                        help='Order histogram labels lexicographically')
    common.add_argument('--config',
                        help='Path to settings file (default: the packaged settings.yaml)')
    common.add_argument('--verbose', action='store_true', help='Enable verbose output')
    common.add_argument('--log-file', dest='log_file', help='Also write debug logs to this file')
    common.add_argument('--seed', type=int, help='Seed of the verification sampler')
    common.add_argument('--trials', type=int, help='Samples per verification check')

    parser = AnalysisArgumentParser(
        description="Nonextensive Entropy and Jensen-Tsallis Divergence Tool",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python StartAnalysis.py entropy counts.csv --q 0,1,2
  python StartAnalysis.py divergence a.csv b.csv --measure jtqd,kld --q 0.5
  python StartAnalysis.py sweep a.csv b.csv --q-grid 0:3:0.25
  python StartAnalysis.py verify --only bounds --seed 7
  python StartAnalysis.py minimize target.csv --q 0.5,2 --format structured

Exit codes: 0 ok, 1 usage, 2 input or output file error, 3 verification failure,
4 optimizer failure
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')

    for command, help_text in (('entropy', 'Entropies of each histogram'),
                               ('divergence', 'Pairwise divergences between histograms'),
                               ('sweep', 'Jensen-type divergences over a grid of q')):
        sub = subparsers.add_parser(command, parents=[common], help=help_text)
        sub.add_argument('inputs', nargs='+', help='Histogram files with label,count records')
        sub.add_argument('--measure', help=f"Comma separated from {', '.join(COMMAND_MEASURES[command])}")
        if command != 'entropy':
            sub.add_argument('--weights', help='Comma separated weights, one per input')

    verify = subparsers.add_parser('verify', parents=[common], help='Run the verification suite')
    verify.add_argument('--only', help=f"Comma separated checks from {', '.join(suite_names())}")

    minimize = subparsers.add_parser('minimize', parents=[common],
                                     help='Minimize T_q(p1, p2) over p1 for the histogram p2')
    minimize.add_argument('inputs', nargs=1, help='Histogram file for p2')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    log_level = "DEBUG" if args.verbose else "INFO"
    logger = setup_logging(log_level, args.log_file)

    try:
        if args.config:
            settings = load_settings(args.config, required=True)
        else:
            settings = load_settings(DEFAULT_SETTINGS_FILE)
        config = build_run_config(args, settings)
        manager = AnalysisManager(config)
        table = manager.run()

        sys.stdout.write(table.render(config.output_format))
        sys.stdout.flush()
        if config.output_file:
            table.save_to_file(config.output_file, format_for_filename(config.output_file))

        if not manager.verification_passed:
            return EXIT_VERIFICATION
        return EXIT_OK

    except UsageError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except HistogramParseError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except OutputWriteError as e:
        logger.error(f"Failed to save results: {e}")
        return EXIT_INPUT
    except OptimizerConvergenceError as e:
        logger.error(f"Optimizer failed: {e}; best objective {e.objective!r} at {e.best}")
        return EXIT_OPTIMIZER
    except JensenTsallisError as e:
        logger.error(f"{args.command} failed: {e}")
        if args.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
