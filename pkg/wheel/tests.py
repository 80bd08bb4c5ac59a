import math

from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from formulas.exceptions import DomainError, RangeError
from formulas.strategies import PRIMORIALS
from oracle.sieve import build_sieve

from .wheels import build_wheel, pi_wheel, totient, wheel_candidates


def brute_totient(m):
    return sum(1 for r in range(1, m + 1) if math.gcd(r, m) == 1)


class BuildWheelTests(SimpleTestCase):
    def test_wheel_thirty(self):
        wheel = build_wheel(30)
        self.assertEqual(wheel.base_primes, (2, 3, 5))
        self.assertEqual(wheel.residues, (1, 7, 11, 13, 17, 19, 23, 29))
        self.assertEqual(wheel.totient, 8)
        self.assertAlmostEqual(wheel.speedup, 3.75)

    def test_every_primorial(self):
        expected_totients = {2: 1, 6: 2, 30: 8, 210: 48, 2310: 480}
        for m in PRIMORIALS:
            with self.subTest(m=m):
                wheel = build_wheel(m)
                self.assertEqual(wheel.totient, expected_totients[m])
                self.assertEqual(math.prod(wheel.base_primes), m)
                self.assertEqual(list(wheel.residues), sorted(wheel.residues))
                self.assertTrue(all(math.gcd(r, m) == 1 for r in wheel.residues))
                self.assertAlmostEqual(wheel.density * wheel.speedup, 1.0)

    def test_rejects_non_primorials(self):
        for m in (0, 1, 4, 12, 60, 2311):
            with self.subTest(m=m):
                with self.assertRaises(DomainError):
                    build_wheel(m)


class TotientTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(totient(1), 1)
        self.assertEqual(totient(30), 8)
        self.assertEqual(totient(2310), 480)
        self.assertEqual(totient(97), 96)
        self.assertEqual(totient(2**10), 512)

    def test_matches_gcd_count(self):
        for m in range(1, 3001):
            self.assertEqual(totient(m), brute_totient(m), m)

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=1, max_value=2**32))
    def test_multiplicative_over_prime_power_split(self, m):
        """phi(2^a * odd) = phi(2^a) * phi(odd)."""
        power = m & -m
        odd = m // power
        self.assertEqual(totient(m), totient(power) * totient(odd))

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            totient(0)
        with self.assertRaises(DomainError):
            totient(2**32 + 1)
        with self.assertRaises(DomainError):
            totient(100, cap=99)


class WheelCandidateTests(SimpleTestCase):
    def test_wheel_thirty_prefix(self):
        wheel = build_wheel(30)
        self.assertEqual(
            list(wheel_candidates(wheel, 50)),
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 49],
        )

    def test_small_x(self):
        wheel = build_wheel(30)
        self.assertEqual(list(wheel_candidates(wheel, 0)), [])
        self.assertEqual(list(wheel_candidates(wheel, 1)), [])
        self.assertEqual(list(wheel_candidates(wheel, 2)), [2])
        self.assertEqual(list(wheel_candidates(wheel, 4)), [2, 3])

    def test_increasing_and_bounded(self):
        for m in PRIMORIALS:
            candidates = list(wheel_candidates(build_wheel(m), 5000))
            self.assertEqual(candidates, sorted(set(candidates)), m)
            self.assertTrue(all(2 <= j <= 5000 for j in candidates), m)

    def test_sound_every_prime_is_a_candidate(self):
        sieve = build_sieve(10**4)
        primes = set(sieve.prime_list.tolist())
        for m in PRIMORIALS:
            with self.subTest(m=m):
                candidates = set(wheel_candidates(build_wheel(m), 10**4))
                self.assertEqual(primes - candidates, set())

    def test_density_near_totient_ratio(self):
        x = 10**4
        for m in PRIMORIALS:
            wheel = build_wheel(m)
            observed = sum(1 for _ in wheel_candidates(wheel, x)) / x
            self.assertLessEqual(abs(observed - wheel.density), 0.10 * wheel.density, m)


class PiWheelTests(SimpleTestCase):
    def test_examples(self):
        wheel = build_wheel(30)
        self.assertEqual(pi_wheel(2, wheel), 1)
        self.assertEqual(pi_wheel(0, wheel), 0)
        self.assertEqual(pi_wheel(100, wheel), 25)
        self.assertEqual(pi_wheel(1000, build_wheel(2310)), 168)

    def test_every_x_below_three_hundred(self):
        sieve = build_sieve(300)
        for m in PRIMORIALS:
            wheel = build_wheel(m)
            for x in range(0, 301):
                self.assertEqual(pi_wheel(x, wheel), sieve.pi(x), (m, x))

    def test_checkpoints_to_ten_thousand(self):
        sieve = build_sieve(10**4)
        for m in PRIMORIALS:
            wheel = build_wheel(m)
            for x in range(301, 10**4 + 1, 487):
                self.assertEqual(pi_wheel(x, wheel), sieve.pi(x), (m, x))

    def test_cap(self):
        with self.assertRaises(RangeError) as ctx:
            pi_wheel(101, build_wheel(6), cap=100)
        self.assertIn("wheel6", str(ctx.exception))

    def test_negative_is_rejected(self):
        with self.assertRaises(DomainError):
            pi_wheel(-1, build_wheel(2))
