import logging
import time

from django.core.management.base import BaseCommand, CommandError

from formulas.exceptions import FormulaError
from formulas.strategies import PRIMORIALS, Strategy, StrategyKind

# Exit codes: 0 success, 1 failed verification, 2 usage or domain error.
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

PROJECT_LOGGERS = ("formulas", "wheel", "oracle", "cli")


class UsageError(CommandError):
    def __init__(self, message):
        super().__init__(message, returncode=EXIT_USAGE)


class FormulaCommand(BaseCommand):
    """Shared flags and error translation for the formula commands."""

    strategy_choices = [kind.value for kind in StrategyKind]
    default_strategy = StrategyKind.SQRT_DIVISOR.value

    def add_strategy_arguments(self, parser):
        parser.add_argument(
            '--strategy',
            choices=self.strategy_choices,
            default=self.default_strategy,
            help=f"Formula variant (default: {self.default_strategy}).",
        )
        parser.add_argument(
            '--modulus',
            type=int,
            choices=PRIMORIALS,
            help="Primorial modulus for --strategy wheel.",
        )

    def add_common_arguments(self, parser):
        parser.add_argument(
            '--cap',
            type=int,
            help="Override the input cap for this run.",
        )
        parser.add_argument(
            '--verbose',
            action='store_true',
            help="Print the strategy and timing alongside the result.",
        )

    def configure_logging(self, options):
        verbosity = options.get('verbosity', 1)
        if verbosity >= 2:
            level = logging.DEBUG if verbosity >= 3 else logging.INFO
            for name in PROJECT_LOGGERS:
                logging.getLogger(name).setLevel(level)

    def strategy_from_options(self, options) -> Strategy:
        try:
            return Strategy.parse(options['strategy'], options.get('modulus'))
        except FormulaError as e:
            raise UsageError(str(e))

    def execute(self, *args, **options):
        self.configure_logging(options)
        try:
            return super().execute(*args, **options)
        except FormulaError as e:
            raise UsageError(str(e))

    def timed(self, fn):
        start = time.perf_counter_ns()
        value = fn()
        return value, time.perf_counter_ns() - start

    def write_details(self, **details):
        for key, value in details.items():
            self.stdout.write(f"{key}={value}")
