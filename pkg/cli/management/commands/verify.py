from celery import group
from django.conf import settings
from django.core.management.base import CommandError

from cli.base import EXIT_VERIFY_FAILED, FormulaCommand, UsageError
from cli.tasks import run_suite_chunk
from cli.verification import merge, plan
from formulas.limits import Caps
from formulas.strategies import StrategyKind
from oracle.exceptions import OracleDomainError, OracleRangeError

# Suites whose reports carry near-equality counts.
INEQUALITY_SUITES = ("lemma1", "rosser")


class Command(FormulaCommand):
    help = (
        'Check every formula against the sieve and trial-division oracle, and sweep the '
        'lemma and Rosser-Schoenfeld inequalities. Exits 1 if any check fails.'
    )

    def add_arguments(self, parser):
        parser.add_argument('--max-x', type=int, default=1000, help="Largest x for the pi(x) and wheel suites.")
        parser.add_argument('--max-n', type=int, default=200, help="Largest prime index for the nth-prime and inequality suites.")
        parser.add_argument('--max-d', type=int, help="Largest n for the divisor-count suites (default: --max-x).")
        parser.add_argument(
            '--chunks',
            type=int,
            default=settings.PRIMEFORMULA["VERIFY_CHUNKS"],
            help="Range chunks dispatched per suite.",
        )

    def check_bounds(self, max_x, max_n, max_d, chunks):
        caps = Caps.from_settings()
        if min(max_x, max_n, max_d) < 0:
            raise UsageError("--max-x, --max-n and --max-d must be nonnegative")
        if chunks < 1:
            raise UsageError("--chunks must be at least 1")
        pi_cap = min(caps.pi.values())
        if max_x > pi_cap:
            raise UsageError(f"--max-x {max_x} exceeds the pi cap {pi_cap}")
        nth_cap = min(caps.nth_prime_cap(k.value) for k in (StrategyKind.SQRT_DIVISOR, StrategyKind.RECURSIVE_PI))
        if max_n > nth_cap:
            raise UsageError(f"--max-n {max_n} exceeds the nth-prime cap {nth_cap}")
        if max_d > caps.divisor:
            raise UsageError(f"--max-d {max_d} exceeds the divisor-count limit {caps.divisor}")

    def check_broker(self):
        # an in-process broker has no worker behind it outside eager mode
        if not settings.CELERY_TASK_ALWAYS_EAGER and settings.CELERY_BROKER_URL.startswith("memory://"):
            raise UsageError(
                "CELERY_TASK_ALWAYS_EAGER is off but CELERY_BROKER_URL is memory://; "
                "set CELERY_BROKER_URL to a broker that a running worker consumes"
            )

    def handle(self, *args, **options):
        max_x = options['max_x']
        max_n = options['max_n']
        max_d = options['max_d'] if options['max_d'] is not None else max_x
        chunks = options['chunks']
        self.check_bounds(max_x, max_n, max_d, chunks)
        self.check_broker()

        work = plan(max_x, max_n, max_d, chunks)
        job = group(run_suite_chunk.s(suite, lo, hi) for suite, lo, hi in work)
        try:
            results = job.apply_async().get()
        except (OracleDomainError, OracleRangeError) as e:
            raise UsageError(str(e))

        total_failures = 0
        for summary in merge(results):
            total_failures += summary.failures
            line = f"suite={summary.suite} checked={summary.checked} failures={summary.failures}"
            if summary.suite in INEQUALITY_SUITES:
                line += f" near_equal={summary.near_equal}"
            if summary.passed:
                self.stdout.write(self.style.SUCCESS(f"{line} status=PASS"))
            else:
                self.stdout.write(self.style.ERROR(f"{line} status=FAIL"))
                for sample in summary.samples:
                    self.stderr.write(f"  {summary.suite}: {sample}")
        self.stdout.write(f"total_failures={total_failures}")

        if total_failures:
            raise CommandError(f"verification failed with {total_failures} failures", returncode=EXIT_VERIFY_FAILED)
