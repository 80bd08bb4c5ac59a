from cli.base import FormulaCommand
from formulas.counting import nth_prime_formula, search_bound


class Command(FormulaCommand):
    help = 'Compute the n-th prime with the floor-function formula'

    def add_arguments(self, parser):
        parser.add_argument('n', type=int, help="Prime index, starting at 1.")
        self.add_strategy_arguments(parser)
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        strategy = self.strategy_from_options(options)
        n = options['n']
        result, elapsed = self.timed(lambda: nth_prime_formula(n, strategy, cap=options['cap']))
        self.stdout.write(str(result))

        if options['verbose']:
            self.write_details(strategy=strategy, elapsed_ns=elapsed)
            if n >= 2:
                self.write_details(limit=search_bound(n).limit)
