import random
import unittest
from unittest.mock import patch

from lib import theorem44
from lib.braid_core import (
    BraidWord,
    PermutationBraid,
    coxeter_word,
    delta,
    exponent_sum,
    perm_of,
    positive_equal,
    right_complement_in_delta,
)
from lib.errors import CertificateFailed, HypothesisFailed, RangeViolation
from lib.mw_links import nd


def coxeter_complement(d):
    """The permutation d-braid X with Delta X^{-1} = sigma_1 ... sigma_{d-1}."""
    return right_complement_in_delta(PermutationBraid(perm_of(coxeter_word(d)))).word()


def delta_then_generators(d, order=None):
    order = list(range(1, d - 2)) if order is None else order
    return BraidWord(d - 2, delta(d - 2).letters + tuple(order))


class CheckATests(unittest.TestCase):

    def test_coxeter_complement_is_certified(self):
        for d in range(3, 8):
            cert = theorem44.check_a(coxeter_complement(d), d)
            self.assertTrue(cert.verified)
            self.assertTrue(cert.signature_match)
            self.assertEqual(cert.x_prime.letters, coxeter_word(d).letters)
            self.assertEqual(cert.u.letters, ())

    def test_certificate_dict(self):
        data = theorem44.check_a(coxeter_complement(4), 4).to_dict()
        self.assertEqual(data["conclusion"], "T_proj(4,2)")
        self.assertEqual(set(data["hypotheses"]), {"strands", "permutation_braid", "exponent_sum", "d_cycle"})
        self.assertTrue(all(data["hypotheses"].values()))

    def test_delta_fails_the_exponent_sum(self):
        for d in range(4, 8):
            with self.assertRaises(HypothesisFailed) as caught:
                theorem44.check_a(delta(d), d)
            self.assertEqual(caught.exception.details["which"], "exponent_sum")

    def test_wrong_strand_count(self):
        with self.assertRaises(HypothesisFailed) as caught:
            theorem44.check_a(coxeter_complement(4), 5)
        self.assertEqual(caught.exception.details["which"], "strands")

    def test_non_permutation_braid(self):
        with self.assertRaises(HypothesisFailed) as caught:
            theorem44.check_a(BraidWord(4, (1, 1, 2)), 4)
        self.assertEqual(caught.exception.details["which"], "permutation_braid")

    def test_degree_too_small(self):
        with self.assertRaises(RangeViolation):
            theorem44.check_a(BraidWord(2, ()), 2)

    def test_exhaustive_sweep(self):
        for d in (4, 5):
            summary = theorem44.sweep_check_a(d)
            self.assertGreater(summary["candidates"], 0)
            self.assertEqual(summary["certified"], summary["candidates"])
            self.assertEqual(summary["failures"], [])
            self.assertEqual(summary["signature_mismatches"], [])

    def test_sweep_through_degree_seven(self):
        for d in range(3, 8):
            summary = theorem44.sweep_check_a(d)
            self.assertEqual(summary["certified"], summary["candidates"], d)
            self.assertEqual(summary["signature_mismatches"], [], d)


class CheckBTests(unittest.TestCase):

    def test_delta_times_generators_is_certified(self):
        for d in range(4, 8):
            x = delta_then_generators(d)
            self.assertEqual(exponent_sum(x), nd(d) - 1)
            cert = theorem44.check_b(x, d)
            self.assertTrue(cert.verified)
            self.assertTrue(cert.signature_match)
            self.assertTrue(positive_equal(delta(d - 2) + cert.quotient, x))

    def test_shuffled_generators(self):
        x = delta_then_generators(7, [3, 1, 4, 2])
        cert = theorem44.check_b(x, 7)
        self.assertEqual(sorted(cert.x_prime.letters), [1, 2, 3, 4])
        self.assertEqual(cert.to_dict()["theorem"], "b")

    def test_negative_word_is_not_positive(self):
        with self.assertRaises(HypothesisFailed) as caught:
            theorem44.check_b(BraidWord(3, (-1,)), 5)
        self.assertEqual(caught.exception.details["which"], "positive")

    def test_wrong_strand_count(self):
        with self.assertRaises(HypothesisFailed) as caught:
            theorem44.check_b(delta_then_generators(5), 6)
        self.assertEqual(caught.exception.details["which"], "strands")

    def test_delta_must_divide(self):
        # e = 5 on 3 strands but no Delta factor
        with self.assertRaises(HypothesisFailed) as caught:
            theorem44.check_b(BraidWord(3, (1, 1, 1, 1, 1)), 5)
        self.assertEqual(caught.exception.details["which"], "delta_divides")

    def test_random_instances(self):
        summary = theorem44.random_check_b(6, 10, random.Random(4))
        self.assertEqual(summary["instances"], 10)
        self.assertGreaterEqual(summary["certified"], 5)
        self.assertEqual(summary["certified"] + summary["rejected"], 10)
        self.assertEqual(summary["signature_mismatches"], [])


    def test_random_instances_through_degree_eight(self):
        rng = random.Random(11)
        for d in range(4, 9):
            summary = theorem44.random_check_b(d, 200, rng)
            self.assertGreaterEqual(summary["certified"], 100, d)
            self.assertEqual(summary["signature_mismatches"], [], d)
            self.assertEqual(summary["certificate_failures"], [], d)

    def test_certificate_failure_is_recorded(self):
        failing = CertificateFailed("conjugator does not conjugate", u="B4: 1")
        with patch.object(theorem44, "check_b", side_effect=failing):
            summary = theorem44.random_check_b(6, 4, random.Random(1))
        self.assertEqual(summary["certified"], 0)
        self.assertEqual(len(summary["certificate_failures"]), 4)
        self.assertEqual(summary["certificate_failures"][0]["u"], "B4: 1")


class RemarkExampleTests(unittest.TestCase):

    def test_word(self):
        self.assertEqual(theorem44.remark46_word(4).letters, (-2, 1, 2, 1, 2))

    def test_fixture_has_nd_crossings_but_no_permutation_braid(self):
        report = theorem44.remark46_fixture(4)
        self.assertEqual(report["exponent_sum"], nd(4))
        self.assertEqual(report["positive_witness"], "B4: 1 2 2")
        self.assertFalse(report["is_permutation_braid"])

    def test_exponent_sum_for_larger_degrees(self):
        for d in range(5, 8):
            self.assertEqual(exponent_sum(theorem44.remark46_word(d)), nd(d))

    def test_needs_degree_four(self):
        with self.assertRaises(RangeViolation):
            theorem44.remark46_word(3)


if __name__ == "__main__":
    unittest.main()
