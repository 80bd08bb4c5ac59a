import csv
import os
import tempfile
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from formulas.exceptions import BoundSlackError
from formulas.strategies import Strategy

from .base import EXIT_USAGE, EXIT_VERIFY_FAILED
from .benchmarking import (
    CSV_HEADER,
    BenchRecord,
    ScalingFit,
    measured_speedup,
    parse_ladder,
    parse_strategies,
    run_benchmark,
    validate_ladder,
)
from .tasks import run_suite_chunk
from .verification import SUITES, ChunkResult, check_pi_steps, check_round_trips, merge, plan, split_range


def run(*args, **kwargs):
    out = StringIO()
    err = StringIO()
    call_command(*args, stdout=out, stderr=err, **kwargs)
    return out.getvalue(), err.getvalue()


class CommandTestCase(SimpleTestCase):
    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            run(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class PiCommandTests(CommandTestCase):
    def test_examples(self):
        self.assertEqual(run('pi', '0')[0], "0\n")
        self.assertEqual(run('pi', '10')[0], "4\n")
        self.assertEqual(run('pi', '100')[0], "25\n")
        self.assertEqual(run('pi', '10000', '--strategy', 'wheel', '--modulus', '30')[0], "1229\n")

    def test_output_identical_across_strategies(self):
        variants = [
            ['--strategy', 'naive'],
            ['--strategy', 'sqrt'],
            ['--strategy', 'recursive'],
            ['--strategy', 'wheel', '--modulus', '2'],
            ['--strategy', 'wheel', '--modulus', '2310'],
        ]
        for x in ('1', '2', '97', '1000'):
            outputs = {run('pi', x, *variant)[0] for variant in variants}
            self.assertEqual(len(outputs), 1, x)

    def test_verbose_details(self):
        out, _ = run('pi', '100', '--strategy', 'wheel', '--modulus', '30', '--verbose')
        lines = out.splitlines()
        self.assertEqual(lines[0], "25")
        self.assertIn("strategy=wheel30", lines)
        self.assertTrue(any(line.startswith("elapsed_ns=") for line in lines))
        self.assertIn("density=0.266667", lines)

    def test_negative_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'pi', '-5')

    def test_cap_flag(self):
        error = self.assertExitCode(EXIT_USAGE, 'pi', '1001', '--strategy', 'naive', '--cap', '1000')
        self.assertIn("1000", str(error))
        self.assertIn("naive", str(error))

    def test_wheel_needs_modulus(self):
        self.assertExitCode(EXIT_USAGE, 'pi', '10', '--strategy', 'wheel')

    def test_modulus_without_wheel(self):
        self.assertExitCode(EXIT_USAGE, 'pi', '10', '--strategy', 'sqrt', '--modulus', '30')

    def test_unknown_strategy_rejected_by_parser(self):
        with self.assertRaises(CommandError):
            run('pi', '10', '--strategy', 'fast')


class NthPrimeCommandTests(CommandTestCase):
    def test_examples(self):
        self.assertEqual(run('nth_prime', '1')[0], "2\n")
        self.assertEqual(run('nth_prime', '2')[0], "3\n")
        self.assertEqual(run('nth_prime', '100', '--strategy', 'recursive')[0], "541\n")

    def test_output_identical_across_strategies(self):
        variants = [['--strategy', s] for s in ('naive', 'sqrt', 'recursive')] + [
            ['--strategy', 'wheel', '--modulus', '6'],
        ]
        for n, expected in (('1', 2), ('2', 3), ('10', 29), ('25', 97)):
            outputs = {run('nth_prime', n, *variant)[0] for variant in variants}
            self.assertEqual(outputs, {f"{expected}\n"}, n)

    def test_verbose_reports_limit(self):
        out, _ = run('nth_prime', '10', '--verbose')
        self.assertIn("limit=48", out.splitlines())

    def test_zero_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'nth_prime', '0')

    def test_cap(self):
        self.assertExitCode(EXIT_USAGE, 'nth_prime', '11', '--cap', '10')


class DivisorCountCommandTests(CommandTestCase):
    def test_examples(self):
        self.assertEqual(run('divisor_count', '12')[0], "6\n")
        self.assertEqual(run('divisor_count', '1', '--strategy', 'naive')[0], "1\n")
        self.assertEqual(run('divisor_count', '16')[0], "5\n")

    def test_verbose_reports_primality(self):
        out, _ = run('divisor_count', '97', '--verbose')
        lines = out.splitlines()
        self.assertEqual(lines[0], "2")
        self.assertIn("prime=1", lines)

    def test_zero_is_usage_error(self):
        self.assertExitCode(EXIT_USAGE, 'divisor_count', '0')

    def test_wheel_not_offered(self):
        with self.assertRaises(CommandError):
            run('divisor_count', '12', '--strategy', 'wheel')


class VerifyCommandTests(CommandTestCase):
    def test_small_ranges_pass(self):
        out, _ = run('verify', '--max-x', '60', '--max-n', '25', '--chunks', '2')
        lines = out.splitlines()
        suites = [line.split()[0] for line in lines[:-1]]
        self.assertEqual(suites, [f"suite={name}" for name in SUITES])
        self.assertTrue(all(line.endswith("status=PASS") for line in lines[:-1]))
        self.assertIn("suite=divisor_count checked=60 failures=0 status=PASS", lines)
        self.assertIn("near_equal=0", lines[len(SUITES) - 1])
        self.assertEqual(lines[-1], "total_failures=0")

    def test_empty_ranges_pass(self):
        out, _ = run('verify', '--max-x', '0', '--max-n', '0')
        self.assertEqual(out.splitlines()[-1], "total_failures=0")

    def test_failure_exits_one(self):
        def broken(lo, hi):
            result = ChunkResult("divisor_count", lo, hi, checked=1)
            result.fail("d(1) = 7")
            return result

        with mock.patch.dict(SUITES, {"divisor_count": broken}):
            with self.assertRaises(CommandError) as ctx:
                out = StringIO()
                err = StringIO()
                call_command('verify', '--max-x', '20', '--max-n', '5', '--chunks', '1', stdout=out, stderr=err)
        self.assertEqual(ctx.exception.returncode, EXIT_VERIFY_FAILED)
        self.assertIn("status=FAIL", out.getvalue())
        self.assertIn("total_failures=1", out.getvalue())
        self.assertIn("d(1) = 7", err.getvalue())

    def test_bounds_are_usage_errors(self):
        self.assertExitCode(EXIT_USAGE, 'verify', '--max-x', '-1')
        self.assertExitCode(EXIT_USAGE, 'verify', '--chunks', '0')
        self.assertExitCode(EXIT_USAGE, 'verify', '--max-x', str(10**6 + 1))

    @override_settings(CELERY_TASK_ALWAYS_EAGER=False, CELERY_BROKER_URL="memory://")
    def test_memory_broker_needs_eager_mode(self):
        """Without eager mode an in-process broker would never see a worker."""
        error = self.assertExitCode(EXIT_USAGE, 'verify', '--max-x', '10', '--max-n', '5')
        self.assertIn("CELERY_BROKER_URL", str(error))


class VerificationTests(SimpleTestCase):
    def test_split_range(self):
        self.assertEqual(split_range(0, 9, 4), [(0, 2), (3, 5), (6, 7), (8, 9)])
        self.assertEqual(split_range(1, 3, 10), [(1, 1), (2, 2), (3, 3)])
        self.assertEqual(split_range(1, 0, 4), [(1, 0)])

    def test_plan_covers_every_suite(self):
        items = plan(100, 20, 50, 3)
        self.assertEqual({suite for suite, _, _ in items}, set(SUITES))
        divisor = [(lo, hi) for suite, lo, hi in items if suite == "divisor_count"]
        self.assertEqual(divisor, [(1, 17), (18, 34), (35, 50)])
        self.assertIn(("lemma1", 2, 20), items)

    def test_merge_orders_and_sums(self):
        chunks = [
            ChunkResult("rosser", 1, 10, checked=10).to_dict(),
            ChunkResult("divisor_count", 6, 10, checked=5, failures=1, samples=["late"]).to_dict(),
            ChunkResult("divisor_count", 1, 5, checked=5, failures=1, samples=["early"]).to_dict(),
        ]
        summaries = merge(chunks)
        self.assertEqual([s.suite for s in summaries], ["divisor_count", "rosser"])
        self.assertEqual(summaries[0].checked, 10)
        self.assertEqual(summaries[0].failures, 2)
        self.assertEqual(summaries[0].samples, ["early", "late"])
        self.assertTrue(summaries[1].passed)

    def test_round_trip_counts_lost_slack_as_failures(self):
        with mock.patch("cli.verification.nth_prime_formula", side_effect=BoundSlackError("quotient left {0, 1}")):
            result = check_round_trips(1, 3)
        self.assertEqual(result.checked, 6)
        self.assertEqual(result.failures, 3)
        self.assertIn("quotient left {0, 1}", result.samples[0])

    def test_pi_steps_are_checked_as_a_running_sum(self):
        """A wrong F inside the chunk shows up even when both chunk ends agree with the sieve."""
        self.assertEqual(check_pi_steps(10, 20).failures, 0)
        with mock.patch("cli.verification.prime_char", return_value=0):
            result = check_pi_steps(10, 20)
        self.assertEqual(result.failures, 8)
        self.assertTrue(all(sample.startswith("step sum over [10, 20]") for sample in result.samples))

    def test_task_returns_serialisable_result(self):
        result = run_suite_chunk.delay("nth_prime", 1, 20).get()
        self.assertEqual(result["suite"], "nth_prime")
        self.assertEqual(result["checked"], 40)
        self.assertEqual(result["failures"], 0)


class BenchHarnessTests(SimpleTestCase):
    def test_fit_recovers_exponent(self):
        records = [BenchRecord("pi", "sqrt", x, x * x, 1) for x in (100, 200, 400, 800)]
        fit = ScalingFit.from_records(records)
        self.assertAlmostEqual(fit.exponent, 2.0, places=6)
        self.assertAlmostEqual(fit.r_squared, 1.0, places=6)
        self.assertFalse(fit.is_poor)

    def test_record_validation(self):
        with self.assertRaises(ValueError):
            BenchRecord("pi", "sqrt", 10, 0, 1)
        with self.assertRaises(ValueError):
            BenchRecord("pi", "sqrt", 10, 5, 0)

    def test_parsing(self):
        self.assertEqual(parse_ladder("10, 20,40,80"), [10, 20, 40, 80])
        self.assertEqual(parse_strategies("sqrt,wheel", 30), [Strategy.sqrt(), Strategy.wheel(30)])
        self.assertEqual(parse_strategies("wheel210"), [Strategy.wheel(210)])

    def test_ladder_validation(self):
        sqrt = [Strategy.sqrt()]
        for ladder in ([10, 20, 40], [10, 15, 30, 60], [0, 10, 20, 40]):
            with self.subTest(ladder=ladder):
                with self.assertRaises(ValueError):
                    validate_ladder(ladder, "pi", sqrt)
        with self.assertRaises(OverflowError):
            validate_ladder([10**3, 10**4, 10**5, 2 * 10**6], "pi", [Strategy.naive()])
        validate_ladder([10, 20, 40, 80], "nth_prime", sqrt)

    def test_records_in_strategy_then_ladder_order(self):
        records = run_benchmark("pi", [Strategy.sqrt(), Strategy.wheel(6)], [20, 40, 80, 160], 1)
        self.assertEqual(
            [(r.strategy, r.input) for r in records],
            [(s, x) for s in ("sqrt", "wheel6") for x in (20, 40, 80, 160)],
        )
        self.assertTrue(all(r.elapsed_ns >= 1 and r.repetitions == 1 for r in records))

    def test_speedup_reports_theoretical_ratio(self):
        _, theoretical = measured_speedup("pi", Strategy.wheel(30), 200, 1, [])
        self.assertAlmostEqual(theoretical, 3.75)


class BenchCommandTests(CommandTestCase):
    def test_csv_and_fit_lines(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bench.csv")
            out, _ = run(
                'bench', '--strategies', 'sqrt,wheel30', '--ladder', '50,100,200,400', '--reps', '1', '--csv', path,
            )
            with open(path, newline='') as stream:
                rows = list(csv.reader(stream))

        self.assertEqual(tuple(rows[0]), CSV_HEADER)
        self.assertEqual(len(rows), 9)
        self.assertEqual([row[1] for row in rows[1:]], ["sqrt"] * 4 + ["wheel30"] * 4)
        self.assertEqual([row[2] for row in rows[1:5]], ["50", "100", "200", "400"])
        self.assertTrue(all(row[0] == "pi" and row[4] == "1" for row in rows[1:]))

        lines = out.splitlines()
        self.assertTrue(lines[0].startswith("fit operation=pi strategy=sqrt exponent="))
        self.assertTrue(lines[1].startswith("fit operation=pi strategy=wheel30 exponent="))
        self.assertTrue(lines[2].startswith("speedup strategy=wheel30 input=400 measured="))
        self.assertTrue(lines[2].endswith("theoretical=3.7500"))

    def test_unwritable_csv_is_usage_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "missing", "bench.csv")
            with mock.patch("cli.management.commands.bench.run_benchmark") as timed:
                self.assertExitCode(
                    EXIT_USAGE, 'bench', '--strategies', 'sqrt', '--ladder', '10,20,40,80', '--reps', '1', '--csv', path,
                )
        timed.assert_not_called()

    def test_bad_ladders_are_usage_errors(self):
        self.assertExitCode(EXIT_USAGE, 'bench', '--ladder', '10,20,40')
        self.assertExitCode(EXIT_USAGE, 'bench', '--ladder', '10,15,30,60')
        self.assertExitCode(EXIT_USAGE, 'bench', '--ladder', 'a,b,c,d')
        self.assertExitCode(EXIT_USAGE, 'bench', '--strategies', 'naive', '--ladder', '1000,2000,4000,2000000')
        self.assertExitCode(EXIT_USAGE, 'bench', '--reps', '0', '--ladder', '10,20,40,80')


@tag('timing')
class ScalingTests(SimpleTestCase):
    """Wall-clock checks; exclude with `manage.py test --exclude-tag timing` on loaded machines."""

    def test_naive_pi_exponent(self):
        records = run_benchmark("pi", [Strategy.naive()], [500, 1000, 2000, 4000, 8000], 5)
        fit = ScalingFit.from_records(records)
        self.assertGreaterEqual(fit.exponent, 1.6)
        self.assertLessEqual(fit.exponent, 2.4)

    def test_sqrt_pi_exponent(self):
        records = run_benchmark("pi", [Strategy.sqrt()], [2000, 4000, 8000, 16000, 32000], 5)
        fit = ScalingFit.from_records(records)
        self.assertGreaterEqual(fit.exponent, 1.1)
        self.assertLessEqual(fit.exponent, 1.9)

    def test_wheel_thirty_speedup_over_sqrt(self):
        measured, theoretical = measured_speedup("pi", Strategy.wheel(30), 3 * 10**4, 5, [])
        self.assertAlmostEqual(theoretical, 3.75)
        self.assertGreaterEqual(measured, 0.4 * theoretical)
