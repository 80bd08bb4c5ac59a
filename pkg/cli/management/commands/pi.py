from cli.base import FormulaCommand
from formulas.counting import pi_formula
from formulas.strategies import StrategyKind
from wheel.wheels import build_wheel, wheel_candidates


class Command(FormulaCommand):
    help = 'Count the primes not exceeding x with the floor-function formula'

    def add_arguments(self, parser):
        parser.add_argument('x', type=int, help="Upper end of the count (nonnegative).")
        self.add_strategy_arguments(parser)
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        strategy = self.strategy_from_options(options)
        x = options['x']
        result, elapsed = self.timed(lambda: pi_formula(x, strategy, cap=options['cap']))
        self.stdout.write(str(result))

        if options['verbose']:
            self.write_details(strategy=strategy, elapsed_ns=elapsed)
            if strategy.kind is StrategyKind.WHEEL:
                wheel = build_wheel(strategy.wheel_modulus)
                candidates = sum(1 for _ in wheel_candidates(wheel, x))
                self.write_details(candidates=candidates, density=f"{wheel.density:.6f}")
