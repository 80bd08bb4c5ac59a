from cli.base import FormulaCommand
from formulas.divisors import divisor_count_naive, divisor_count_sqrt, prime_char
from formulas.strategies import Strategy, StrategyKind


class Command(FormulaCommand):
    help = 'Count the divisors of n with the floor-difference sum'

    strategy_choices = [StrategyKind.NAIVE_FLOOR_SUM.value, StrategyKind.SQRT_DIVISOR.value]

    def add_arguments(self, parser):
        parser.add_argument('n', type=int, help="Positive integer.")
        parser.add_argument(
            '--strategy',
            choices=self.strategy_choices,
            default=self.default_strategy,
            help=f"Divisor routine (default: {self.default_strategy}).",
        )
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        strategy = Strategy.parse(options['strategy'])
        count = divisor_count_naive if strategy.uses_naive_divisors else divisor_count_sqrt
        n = options['n']
        result, elapsed = self.timed(lambda: count(n, cap=options['cap']))
        self.stdout.write(str(result))

        if options['verbose']:
            self.write_details(
                strategy=strategy,
                elapsed_ns=elapsed,
                prime=prime_char(n, strategy, cap=options['cap']),
            )
