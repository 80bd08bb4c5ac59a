import math
from decimal import Decimal, getcontext
from unittest import mock

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hypothesis_settings, strategies as st

from oracle.sieve import build_sieve, divisor_count_oracle, divisor_count_table, nth_prime_oracle, sieve_for_index

from .counting import nth_prime_formula, nth_prime_summands, pi_formula, search_bound
from .divisors import divisor_count_naive, divisor_count_sqrt, prime_char
from .exceptions import BoundSlackError, DomainError, RangeError
from .limits import Caps
from .strategies import PRIMORIALS, SearchBound, Strategy, StrategyKind


def every_strategy():
    return [Strategy.naive(), Strategy.sqrt(), Strategy.recursive()] + [Strategy.wheel(m) for m in PRIMORIALS]


class StrategyTests(SimpleTestCase):
    def test_wheel_requires_modulus(self):
        """A wheel strategy without a modulus is rejected."""
        with self.assertRaises(DomainError):
            Strategy(StrategyKind.WHEEL)

    def test_wheel_modulus_must_be_primorial(self):
        with self.assertRaises(DomainError):
            Strategy.wheel(12)

    def test_modulus_only_with_wheel(self):
        with self.assertRaises(DomainError):
            Strategy(StrategyKind.SQRT_DIVISOR, 30)

    def test_parse_labels(self):
        self.assertEqual(Strategy.parse("naive"), Strategy.naive())
        self.assertEqual(Strategy.parse("recursive"), Strategy.recursive())
        self.assertEqual(Strategy.parse("wheel", 6), Strategy.wheel(6))
        self.assertEqual(Strategy.parse("wheel210"), Strategy.wheel(210))

    def test_parse_rejects_unknown_and_conflicts(self):
        for label, modulus in [("fast", None), ("wheelx", None), ("wheel30", 6), ("sqrt", 30), ("wheel", None)]:
            with self.subTest(label=label, modulus=modulus):
                with self.assertRaises(DomainError):
                    Strategy.parse(label, modulus)

    def test_str_and_label(self):
        self.assertEqual(str(Strategy.wheel(30)), "wheel30")
        self.assertEqual(Strategy.wheel(30).label, "wheel")
        self.assertEqual(str(Strategy.sqrt()), "sqrt")


class DivisorCountTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(divisor_count_naive(1), 1)
        self.assertEqual(divisor_count_naive(7), 2)
        self.assertEqual(divisor_count_naive(12), 6)
        self.assertEqual(divisor_count_sqrt(16), 5)
        self.assertEqual(divisor_count_sqrt(1), 1)
        self.assertEqual(divisor_count_sqrt(97), 2)

    def test_perfect_squares_counted_once(self):
        for root in range(1, 200):
            n = root * root
            with self.subTest(n=n):
                self.assertEqual(divisor_count_sqrt(n), divisor_count_oracle(n))
                self.assertEqual(divisor_count_sqrt(n) % 2, 1)

    def test_agrees_with_oracle_table(self):
        """naive = sqrt = oracle on [1, 3000]."""
        table = divisor_count_table(3000)
        for n in range(1, 3001):
            self.assertEqual(divisor_count_naive(n), table[n], n)
            self.assertEqual(divisor_count_sqrt(n), table[n], n)

    def test_sqrt_agrees_with_oracle_table_to_ten_thousand(self):
        table = divisor_count_table(10**4)
        mismatches = [n for n in range(1, 10**4 + 1) if divisor_count_sqrt(n) != table[n]]
        self.assertEqual(mismatches, [])

    def test_bounds_above_one(self):
        """2 <= d(n) <= n for n > 1."""
        for n in range(2, 2001):
            d = divisor_count_naive(n)
            self.assertTrue(2 <= d <= n, n)

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=10**5))
    def test_sqrt_matches_direct_scan(self, n):
        self.assertEqual(divisor_count_sqrt(n), divisor_count_oracle(n))

    def test_large_square_near_cap(self):
        n = (2**16) ** 2
        self.assertEqual(divisor_count_sqrt(n), 33)

    def test_domain_errors(self):
        for routine in (divisor_count_naive, divisor_count_sqrt):
            with self.subTest(routine=routine.__name__):
                with self.assertRaises(DomainError):
                    routine(0)
                with self.assertRaises(DomainError):
                    routine(2**32 + 1)
                with self.assertRaises(DomainError):
                    routine(True)

    def test_explicit_cap(self):
        with self.assertRaises(DomainError):
            divisor_count_sqrt(101, cap=100)
        self.assertEqual(divisor_count_sqrt(100, cap=100), 9)


class PrimeCharTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(prime_char(2), 1)
        self.assertEqual(prime_char(1), 0)
        self.assertEqual(prime_char(9), 0)

    def test_composites_need_floor_not_truncation(self):
        # d(4) = 3 gives floor(-1/4) = -1; truncating would call 4 prime
        self.assertEqual(prime_char(4, Strategy.naive()), 0)
        self.assertEqual(prime_char(4, Strategy.sqrt()), 0)

    def test_matches_sieve_for_every_strategy(self):
        sieve = build_sieve(2000)
        for strategy in every_strategy():
            with self.subTest(strategy=str(strategy)):
                got = [prime_char(n, strategy) for n in range(2, 2001)]
                expected = [int(sieve.is_prime_at(n)) for n in range(2, 2001)]
                self.assertEqual(got, expected)

    def test_prime_iff_two_divisors(self):
        for n in range(2, 3000):
            self.assertEqual(prime_char(n) == 1, divisor_count_sqrt(n) == 2, n)

    def test_zero_is_rejected(self):
        with self.assertRaises(DomainError):
            prime_char(0)


class SearchBoundTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(search_bound(2).limit, 4)
        self.assertEqual(search_bound(10).limit, 48)
        self.assertEqual(search_bound(20).limit, 121)

    def test_raw_is_the_unfloored_double(self):
        bound = search_bound(10)
        self.assertIsInstance(bound, SearchBound)
        self.assertEqual(bound.n, 10)
        self.assertAlmostEqual(bound.raw, 48.0517, places=3)
        self.assertEqual(bound.limit, math.floor(bound.raw))

    def test_double_floor_matches_high_precision(self):
        """The double-precision limit agrees with a 50-digit logarithm."""
        getcontext().prec = 50
        for n in range(2, 2001):
            exact = 2 * Decimal(n) * Decimal(n).ln() + 2
            self.assertEqual(search_bound(n).limit, int(exact), n)

    def test_limit_covers_nth_prime(self):
        sieve = sieve_for_index(2000)
        for n in range(2, 2001):
            bound = search_bound(n)
            self.assertGreaterEqual(bound.limit, 4)
            self.assertGreaterEqual(bound.limit, sieve.nth_prime(n), n)

    def test_domain_errors(self):
        for n in (0, 1, 10**7 + 1):
            with self.subTest(n=n):
                with self.assertRaises(DomainError):
                    search_bound(n)


class PiFormulaTests(SimpleTestCase):
    def test_examples(self):
        for strategy in every_strategy():
            with self.subTest(strategy=str(strategy)):
                self.assertEqual(pi_formula(0, strategy), 0)
                self.assertEqual(pi_formula(1, strategy), 0)
                self.assertEqual(pi_formula(10, strategy), 4)
                self.assertEqual(pi_formula(100, strategy), 25)

    def test_default_strategy_is_sqrt(self):
        self.assertEqual(pi_formula(1000), 168)

    def test_strategies_agree_with_oracle_at_checkpoints(self):
        sieve = build_sieve(10**4)
        checkpoints = [0, 1, 2, 3, 97, 541, 1000, 2310, 4999, 7919, 10**4]
        for strategy in every_strategy():
            if strategy.kind is StrategyKind.NAIVE_FLOOR_SUM:
                continue
            for x in checkpoints:
                with self.subTest(strategy=str(strategy), x=x):
                    self.assertEqual(pi_formula(x, strategy), sieve.pi(x))

    def test_naive_agrees_with_oracle(self):
        sieve = build_sieve(1500)
        for x in (0, 1, 2, 50, 199, 1000, 1500):
            self.assertEqual(pi_formula(x, Strategy.naive()), sieve.pi(x), x)

    def test_every_x_through_prime_char(self):
        """Running sums of F equal the oracle's pi for every x <= 10^4."""
        sieve = build_sieve(10**4)
        for strategy in (Strategy.sqrt(), Strategy.recursive(), Strategy.wheel(30)):
            running = 0
            for x in range(2, 10**4 + 1):
                running += prime_char(x, strategy)
                if running != sieve.pi(x):
                    self.fail(f"{strategy}: running pi({x}) = {running}, oracle {sieve.pi(x)}")

    def test_monotone_step(self):
        previous = pi_formula(1)
        for x in range(2, 600):
            current = pi_formula(x, Strategy.recursive())
            self.assertEqual(current - previous, prime_char(x), x)
            previous = current

    def test_range_error_names_cap_and_strategy(self):
        with self.assertRaises(RangeError) as ctx:
            pi_formula(1001, Strategy.naive(), cap=1000)
        self.assertEqual(ctx.exception.cap, 1000)
        self.assertIn("1000", str(ctx.exception))
        self.assertIn("naive", str(ctx.exception))

    def test_default_caps(self):
        caps = Caps.from_settings()
        self.assertEqual(caps.pi_cap("naive"), 10**6)
        self.assertEqual(caps.pi_cap("sqrt"), 10**8)
        with self.assertRaises(RangeError):
            pi_formula(10**6 + 1, Strategy.naive())

    @override_settings(PRIMEFORMULA={
        "PI_CAPS": {"naive": 50, "sqrt": 50, "recursive": 50, "wheel": 50},
        "NTH_PRIME_CAPS": {"naive": 5, "sqrt": 5, "recursive": 5, "wheel": 5},
        "DIVISOR_CAP": 2**32,
        "TOTIENT_CAP": 2**32,
        "SEARCH_BOUND_CAP": 10**7,
        "SIEVE_CAP": 10**8,
        "VERIFY_CHUNKS": 1,
    })
    def test_caps_come_from_settings(self):
        self.assertEqual(pi_formula(50), 15)
        with self.assertRaises(RangeError):
            pi_formula(51, Strategy.wheel(6))
        with self.assertRaises(RangeError):
            nth_prime_formula(6, Strategy.recursive())

    def test_negative_is_rejected(self):
        with self.assertRaises(DomainError):
            pi_formula(-1)


class NthPrimeFormulaTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(nth_prime_formula(1), 2)
        self.assertEqual(nth_prime_formula(2), 3)
        self.assertEqual(nth_prime_formula(100, Strategy.recursive()), 541)

    def test_hand_evaluated_n_two(self):
        summands = list(nth_prime_summands(2, Strategy.naive()))
        self.assertEqual([s.k for s in summands], [2, 3, 4])
        self.assertEqual([s.pi_k for s in summands], [1, 2, 2])
        self.assertEqual(2 + sum(s.term for s in summands), 3)

    def test_naive_literal_formula(self):
        for n in range(1, 26):
            self.assertEqual(nth_prime_formula(n, Strategy.naive()), nth_prime_oracle(n), n)

    def test_fast_strategies_agree_with_oracle(self):
        sieve = sieve_for_index(150)
        for strategy in (Strategy.sqrt(), Strategy.recursive()):
            for n in range(1, 151):
                with self.subTest(strategy=str(strategy), n=n):
                    self.assertEqual(nth_prime_formula(n, strategy), sieve.nth_prime(n))

    def test_wheel_strategies_agree_with_oracle(self):
        sieve = sieve_for_index(60)
        for m in PRIMORIALS:
            for n in range(1, 61, 7):
                self.assertEqual(nth_prime_formula(n, Strategy.wheel(m)), sieve.nth_prime(n), (m, n))

    def test_summands_bounded_and_partitioned(self):
        """floor(pi(k)/n) is 0 below p_n and 1 from p_n through the limit."""
        sieve = sieve_for_index(150)
        for n in range(2, 151):
            p_n = sieve.nth_prime(n)
            seen = []
            nth_prime_formula(n, Strategy.recursive(), on_summand=seen.append)
            self.assertEqual(seen[-1].k, search_bound(n).limit)
            self.assertLess(seen[-1].pi_k, 2 * n)
            for summand in seen:
                self.assertIn(summand.quotient, (0, 1))
                self.assertEqual(summand.quotient, 1 if summand.k >= p_n else 0, (n, summand.k))

    def test_strategies_give_identical_summands(self):
        for n in (2, 7, 31):
            traces = {str(s): list(nth_prime_summands(n, s)) for s in every_strategy()}
            first = next(iter(traces.values()))
            for label, trace in traces.items():
                self.assertEqual(trace, first, label)

    def test_lost_slack_raises(self):
        widened = SearchBound(n=2, limit=20, raw=20.5)
        with mock.patch("formulas.counting.search_bound", return_value=widened):
            with self.assertRaises(BoundSlackError):
                nth_prime_formula(2)

    def test_round_trips(self):
        sieve = build_sieve(500)
        strategy = Strategy.recursive()
        for n, p in enumerate(sieve.prime_list.tolist(), start=1):
            self.assertEqual(pi_formula(nth_prime_formula(n, strategy), strategy), n)
            self.assertEqual(nth_prime_formula(pi_formula(p, strategy), strategy), p)

    def test_errors(self):
        with self.assertRaises(DomainError):
            nth_prime_formula(0)
        with self.assertRaises(RangeError):
            nth_prime_formula(5 * 10**4 + 1, Strategy.naive())
        with self.assertRaises(RangeError):
            nth_prime_formula(11, Strategy.sqrt(), cap=10)
