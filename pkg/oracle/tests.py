import inspect
import math

from django.test import SimpleTestCase, override_settings

from . import inequalities, sieve as sieve_module
from .exceptions import OracleDomainError, OracleRangeError
from .inequalities import (
    ROSSER_UPPER_FROM,
    _Sweep,
    check_lemma1,
    check_rosser,
    check_rosser_implies_lemma9,
    lemma_point,
    rosser_upper_bound,
)
from .sieve import (
    build_sieve,
    divisor_count_oracle,
    divisor_count_table,
    initial_sieve_limit,
    nth_prime_oracle,
    pi_oracle,
    sieve_for_index,
)


class SieveTests(SimpleTestCase):
    def test_small_table(self):
        table = build_sieve(30)
        self.assertEqual(table.prime_list.tolist(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])
        self.assertEqual(table.pi(30), 10)
        self.assertEqual(table.pi(0), 0)
        self.assertFalse(table.is_prime_at(1))
        self.assertTrue(table.is_prime_at(29))

    def test_degenerate_limits(self):
        self.assertEqual(build_sieve(0).prime_list.tolist(), [])
        self.assertEqual(build_sieve(1).pi(1), 0)
        self.assertEqual(build_sieve(2).prime_list.tolist(), [2])

    def test_invariants(self):
        """cumulative_pi[x] counts primes <= x and prime_list[pi(x)-1] <= x."""
        table = build_sieve(5000)
        running = 0
        for x in range(0, 5001):
            running += int(table.is_prime_at(x))
            self.assertEqual(table.pi(x), running)
            if running:
                self.assertLessEqual(table.nth_prime(running), x)

    def test_tables_are_read_only(self):
        table = build_sieve(100)
        with self.assertRaises(ValueError):
            table.is_prime[4] = True
        with self.assertRaises(ValueError):
            table.cumulative_pi[10] = 0

    def test_lookup_errors(self):
        table = build_sieve(100)
        with self.assertRaises(OracleRangeError):
            table.pi(101)
        with self.assertRaises(OracleRangeError):
            table.nth_prime(26)
        with self.assertRaises(OracleDomainError):
            table.nth_prime(0)
        with self.assertRaises(OracleDomainError):
            table.pi(-1)

    @override_settings(PRIMEFORMULA={"SIEVE_CAP": 1000})
    def test_sieve_cap(self):
        with self.assertRaises(OracleRangeError):
            build_sieve(1001)
        with self.assertRaises(OracleRangeError):
            divisor_count_table(1001)

    def test_initial_guess_covers_nth_prime(self):
        table = build_sieve(20000)
        for n in range(6, 2001):
            self.assertGreaterEqual(initial_sieve_limit(n), table.nth_prime(n), n)

    def test_sieve_for_index_holds_enough_primes(self):
        for n in (1, 5, 6, 100, 2000):
            self.assertGreaterEqual(len(sieve_for_index(n).prime_list), n)


class OracleFunctionTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(pi_oracle(0), 0)
        self.assertEqual(pi_oracle(10), 4)
        self.assertEqual(pi_oracle(10**4), 1229)
        self.assertEqual(nth_prime_oracle(1), 2)
        self.assertEqual(nth_prime_oracle(100), 541)
        self.assertEqual(nth_prime_oracle(2000), 17389)
        self.assertEqual(divisor_count_oracle(12), 6)
        self.assertEqual(divisor_count_oracle(1), 1)

    def test_pi_and_nth_prime_are_inverse(self):
        table = sieve_for_index(2000)
        for n in range(1, 2001):
            self.assertEqual(table.pi(table.nth_prime(n)), n)

    def test_primes_have_two_divisors(self):
        for p in build_sieve(3000).prime_list.tolist():
            self.assertEqual(divisor_count_oracle(p), 2, p)

    def test_table_matches_direct_scan(self):
        table = divisor_count_table(1000)
        self.assertEqual(int(table[0]), 0)
        for n in range(1, 1001):
            self.assertEqual(int(table[n]), divisor_count_oracle(n), n)

    def test_domain_errors(self):
        with self.assertRaises(OracleDomainError):
            divisor_count_oracle(0)
        with self.assertRaises(OracleDomainError):
            nth_prime_oracle(0)
        with self.assertRaises(OracleDomainError):
            pi_oracle(-3)

    def test_independent_of_formula_code(self):
        for module in (sieve_module, inequalities):
            source = inspect.getsource(module)
            self.assertNotIn("from formulas", source)
            self.assertNotIn("from wheel", source)
            self.assertNotIn("import formulas", source)


class InequalityTests(SimpleTestCase):
    def test_lemma_holds_to_two_thousand(self):
        lemma8, lemma9 = check_lemma1(2000)
        self.assertEqual(lemma8.range_checked, (2, 2000))
        self.assertEqual(lemma8.checked, 1999)
        self.assertTrue(lemma8.holds)
        self.assertTrue(lemma9.holds)
        self.assertEqual(lemma9.near_equal, ())

    def test_lemma_at_two(self):
        lemma8, lemma9 = check_lemma1(2)
        # pi(4) = 2 < 4 and p_2 = 3 < 4.77
        self.assertEqual(lemma8.violations, ())
        self.assertEqual(lemma9.violations, ())
        self.assertEqual(math.floor(lemma_point(2)), 4)

    def test_lemma_requires_two(self):
        with self.assertRaises(OracleDomainError):
            check_lemma1(1)

    def test_lemma_reuses_a_large_enough_table(self):
        table = build_sieve(40000)
        lemma8, _ = check_lemma1(1000, table=table)
        self.assertTrue(lemma8.holds)

    def test_rosser_holds_to_two_thousand(self):
        lower, upper = check_rosser(2000)
        self.assertEqual(lower.range_checked, (1, 2000))
        self.assertEqual(upper.range_checked, (ROSSER_UPPER_FROM, 2000))
        self.assertTrue(lower.holds)
        self.assertTrue(upper.holds)

    def test_rosser_upper_empty_below_twenty_one(self):
        _, upper = check_rosser(20)
        self.assertEqual(upper.checked, 0)
        self.assertTrue(upper.holds)

    def test_rosser_upper_at_twenty_one(self):
        # p_21 = 73
        self.assertAlmostEqual(rosser_upper_bound(21), 76.815, places=2)
        self.assertLess(73, rosser_upper_bound(21))

    def test_rosser_requires_positive(self):
        with self.assertRaises(OracleDomainError):
            check_rosser(0)

    def test_rosser_bound_sits_below_lemma_point(self):
        report = check_rosser_implies_lemma9(5000)
        self.assertTrue(report.holds)
        self.assertEqual(report.checked, 5000 - ROSSER_UPPER_FROM + 1)

    def test_near_equality_is_reported_apart(self):
        sweep = _Sweep("sample", 1, 3)
        sweep.strict_less(1, 1.0, 2.0)
        sweep.strict_less(2, 1.0, 1.0 + 1e-12)
        sweep.strict_less(3, 2.0, 2.0)
        report = sweep.report()
        self.assertEqual(report.violations, (3,))
        self.assertEqual(report.near_equal, (2,))
        self.assertFalse(report.holds)
