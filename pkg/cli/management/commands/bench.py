from contextlib import nullcontext

from cli.base import FormulaCommand, UsageError
from cli.benchmarking import (
    OPERATIONS,
    fit_all,
    measured_speedup,
    parse_ladder,
    parse_strategies,
    run_benchmark,
    validate_ladder,
    write_csv,
)
from formulas.strategies import PRIMORIALS, StrategyKind


class Command(FormulaCommand):
    help = (
        'Time pi(x) or p_n over a geometric ladder of sizes and fit the log-log scaling exponent. '
        'Each measurement is the minimum over --reps runs on a monotonic clock, which '
        'suppresses scheduler noise. Runs single-threaded.'
    )

    def add_arguments(self, parser):
        parser.add_argument('--operation', choices=OPERATIONS, default='pi')
        parser.add_argument(
            '--strategies',
            default='sqrt',
            help="Comma-separated labels: naive, sqrt, recursive, wheel (with --modulus) or wheel<m>, e.g. wheel30.",
        )
        parser.add_argument('--modulus', type=int, choices=PRIMORIALS, help="Modulus for a bare 'wheel' label.")
        parser.add_argument(
            '--ladder',
            default='2000,4000,8000,16000',
            help="Comma-separated input sizes, at least 4, each at least twice the previous.",
        )
        parser.add_argument('--reps', type=int, default=5, help="Repetitions per measurement; the minimum is kept.")
        parser.add_argument('--csv', dest='csv_path', metavar='PATH', help="Write the samples to this CSV file.")

    def open_csv(self, path):
        if not path:
            return nullcontext()
        try:
            return open(path, 'w', newline='')
        except OSError as e:
            raise UsageError(f"cannot write --csv {path}: {e.strerror}")

    def handle(self, *args, **options):
        operation = options['operation']
        strategies = parse_strategies(options['strategies'], options['modulus'])
        ladder = parse_ladder(options['ladder'])
        validate_ladder(ladder, operation, strategies)
        if options['reps'] < 1:
            raise UsageError("--reps must be at least 1")

        # the CSV path must be writable before any timing starts
        with self.open_csv(options['csv_path']) as stream:
            records = run_benchmark(operation, strategies, ladder, options['reps'])
            if stream is not None:
                write_csv(records, stream)

        for fit in fit_all(records):
            self.stdout.write(
                f"fit operation={fit.operation} strategy={fit.strategy} "
                f"exponent={fit.exponent:.4f} r_squared={fit.r_squared:.4f}"
            )
            if fit.is_poor:
                self.stderr.write(self.style.WARNING(
                    f"warning: r_squared {fit.r_squared:.4f} for {fit.strategy} is below 0.9; timings are noisy"
                ))

        largest = max(ladder)
        for strategy in strategies:
            if strategy.kind is StrategyKind.WHEEL:
                measured, theoretical = measured_speedup(operation, strategy, largest, options['reps'], records)
                self.stdout.write(
                    f"speedup strategy={strategy} input={largest} "
                    f"measured={measured:.4f} theoretical={theoretical:.4f}"
                )
