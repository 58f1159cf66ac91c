import itertools
import random
import unittest

from hypothesis import given, settings, strategies as st

from lib.braid_core import (
    BraidWord,
    CanonicalForm,
    Permutation,
    PermutationBraid,
    canonical_form,
    complement_in_delta,
    coxeter_word,
    delta,
    exponent_sum,
    format_braid,
    garside_normal_form,
    is_permutation_braid,
    left_divisible_by_delta,
    lemma47_certificate_holds,
    lemma47_conjugator,
    parse_braid,
    parse_canonical_form,
    perm_of,
    permutation_braid_of,
    positive_equal,
    positive_witness,
    random_word,
    right_complement_in_delta,
    starting_set,
    tau,
)
from lib.errors import MalformedBraid, NotAPermutationOfGenerators, NotPositive


def braid(n, *letters):
    return BraidWord(n, tuple(letters))


@st.composite
def words(draw, min_strands=2, max_strands=6, max_length=12, positive=False):
    n = draw(st.integers(min_value=min_strands, max_value=max_strands))
    letter = st.integers(min_value=1, max_value=n - 1)
    if not positive:
        letter = st.tuples(letter, st.booleans()).map(lambda kb: kb[0] if kb[1] else -kb[0])
    return BraidWord(n, tuple(draw(st.lists(letter, max_size=max_length))))


class BraidTextTests(unittest.TestCase):

    def test_parse_reads_strands_and_signed_letters(self):
        w = parse_braid("B3: 1 -2 1")
        self.assertEqual(w.strands, 3)
        self.assertEqual(w.letters, (1, -2, 1))

    def test_empty_word_is_legal(self):
        w = parse_braid("B4:")
        self.assertEqual(len(w), 0)
        self.assertEqual(format_braid(w), "B4:")

    def test_format_matches_parse_input(self):
        self.assertEqual(format_braid(parse_braid("B5: 4 -3 2")), "B5: 4 -3 2")

    def test_missing_header_is_malformed(self):
        with self.assertRaises(MalformedBraid):
            parse_braid("3: 1 2")

    def test_non_integer_letter_is_malformed(self):
        with self.assertRaises(MalformedBraid):
            parse_braid("B3: 1 a")

    def test_letter_out_of_range_is_malformed(self):
        with self.assertRaises(MalformedBraid):
            parse_braid("B3: 3")
        with self.assertRaises(MalformedBraid):
            braid(3, 0)

    def test_concatenation_needs_matching_strands(self):
        with self.assertRaises(MalformedBraid):
            braid(3, 1) + braid(4, 1)


class PermutationTests(unittest.TestCase):

    def test_then_applies_left_factor_first(self):
        a = Permutation((2, 1, 3))
        b = Permutation((1, 3, 2))
        # 1 -a-> 2 -b-> 3
        self.assertEqual(a.then(b)(1), 3)

    def test_cycles_start_at_smallest_element(self):
        self.assertEqual(Permutation((2, 3, 1, 4)).cycles(), [(1, 2, 3), (4,)])

    def test_reversal_has_maximal_inversions(self):
        self.assertEqual(Permutation.reversal(5).inversions(), 10)

    def test_inverse_undoes(self):
        p = Permutation((3, 1, 4, 2))
        self.assertTrue(p.then(p.inverse()).is_identity())

    def test_not_a_bijection(self):
        with self.assertRaises(MalformedBraid):
            Permutation((1, 1, 2))


class GarsideElementTests(unittest.TestCase):

    def test_delta_words(self):
        self.assertEqual(delta(3).letters, (1, 2, 1))
        self.assertEqual(len(delta(4)), 6)
        self.assertEqual(delta(1).letters, ())

    def test_delta_permutation_is_reversal(self):
        for n in range(1, 8):
            self.assertEqual(perm_of(delta(n)), Permutation.reversal(n))

    def test_tau_flips_indices(self):
        self.assertEqual(tau(braid(4, 1, -2, 3)).letters, (3, -2, 1))

    def test_exponent_sum_counts_signs(self):
        self.assertEqual(exponent_sum(braid(3, 1, -2, 1)), 1)
        self.assertEqual(exponent_sum(delta(5)), 10)

    def test_coxeter_word(self):
        self.assertEqual(coxeter_word(4).letters, (1, 2, 3))
        self.assertEqual(coxeter_word(5, 2).letters, (1, 2))

    @settings(max_examples=100, derandomize=True)
    @given(words(), st.data())
    def test_perm_of_is_a_homomorphism(self, x, data):
        y = data.draw(words(min_strands=x.strands, max_strands=x.strands))
        self.assertEqual(perm_of(x + y), perm_of(x).then(perm_of(y)))

    @settings(max_examples=100, derandomize=True)
    @given(words())
    def test_tau_is_an_involution(self, w):
        self.assertEqual(tau(tau(w)), w)

    @settings(max_examples=60, derandomize=True)
    @given(words(max_strands=5, max_length=10, positive=True))
    def test_delta_intertwines_tau(self, w):
        n = w.strands
        self.assertTrue(positive_equal(tau(w) + delta(n), delta(n) + w))


class CanonicalFormTests(unittest.TestCase):

    def test_braid_relation_gives_equal_forms(self):
        self.assertTrue(positive_equal(braid(3, 1, 2, 1), braid(3, 2, 1, 2)))

    def test_far_commutation_gives_equal_forms(self):
        self.assertTrue(positive_equal(braid(4, 1, 3), braid(4, 3, 1)))

    def test_distinct_braids_have_distinct_forms(self):
        self.assertNotEqual(canonical_form(braid(3, 1, 2)), canonical_form(braid(3, 2, 1)))
        self.assertNotEqual(canonical_form(braid(3, 1, 1)), canonical_form(braid(3, 1, 2)))

    def test_delta_is_a_single_factor(self):
        cf = canonical_form(delta(4))
        self.assertEqual(cf.factors, (Permutation.reversal(4),))
        self.assertEqual(cf.delta_power(), 1)

    def test_negative_braid_is_rejected(self):
        with self.assertRaises(NotPositive):
            canonical_form(braid(3, -1))

    def test_inverse_delta_has_infimum_minus_one(self):
        self.assertEqual(garside_normal_form(delta(3).inverse()), (-1, ()))

    def test_positive_witness_cancels_inverse_letters(self):
        self.assertEqual(positive_witness(braid(3, -1, 1, 2)).letters, (2,))

    def test_text_form_reads_back(self):
        cf = canonical_form(braid(4, 1, 2, 2, 3, 1))
        self.assertEqual(parse_canonical_form(str(cf)), cf)

    def test_word_of_form_is_equal_braid(self):
        w = braid(4, 3, 1, 2, 2, 1, 3, 2)
        self.assertTrue(positive_equal(canonical_form(w).word(), w))

    def test_empty_form(self):
        self.assertEqual(canonical_form(braid(3)), CanonicalForm(3, ()))

    @settings(max_examples=60, derandomize=True)
    @given(words(max_strands=5, max_length=10, positive=True))
    def test_conjugating_by_delta_is_tau(self, w):
        n = w.strands
        conjugated = delta(n) + w + delta(n).inverse()
        self.assertTrue(positive_equal(positive_witness(conjugated), tau(w)))


class PermutationBraidTests(unittest.TestCase):

    def test_word_has_one_crossing_per_inversion(self):
        for images in itertools.permutations(range(1, 5)):
            p = Permutation(images)
            w = permutation_braid_of(p)
            self.assertEqual(len(w), p.inversions())
            self.assertEqual(perm_of(w), p)

    def test_predicate(self):
        self.assertTrue(is_permutation_braid(delta(4)))
        self.assertTrue(is_permutation_braid(braid(3)))
        self.assertFalse(is_permutation_braid(braid(3, 1, 1)))
        self.assertFalse(is_permutation_braid(braid(3, -1)))

    def test_complement_multiplies_to_delta(self):
        x = PermutationBraid(perm_of(braid(4, 1, 2)))
        left = complement_in_delta(x)
        right = right_complement_in_delta(x)
        self.assertTrue(positive_equal(left.word() + x.word(), delta(4)))
        self.assertTrue(positive_equal(x.word() + right.word(), delta(4)))
        self.assertEqual(left.exponent_sum, 6 - 2)

    def test_complements_for_every_permutation_up_to_six_strands(self):
        for n in range(2, 7):
            full = delta(n)
            for images in itertools.permutations(range(1, n + 1)):
                x = PermutationBraid(Permutation(images))
                left = complement_in_delta(x)
                right = right_complement_in_delta(x)
                self.assertTrue(positive_equal(left.word() + x.word(), full), images)
                self.assertTrue(positive_equal(x.word() + right.word(), full), images)
                self.assertEqual(left.exponent_sum + x.exponent_sum, n * (n - 1) // 2)

    def test_round_trip_through_permutation_braids(self):
        rng = random.Random(3)
        samples = [Permutation(images) for n in range(2, 6)
                   for images in itertools.permutations(range(1, n + 1))]
        for n in (6, 7):
            for _ in range(200):
                images = list(range(1, n + 1))
                rng.shuffle(images)
                samples.append(Permutation(tuple(images)))
        for p in samples:
            w = permutation_braid_of(p)
            self.assertEqual(perm_of(w), p)
            self.assertTrue(is_permutation_braid(w))
            self.assertEqual(exponent_sum(w), p.inversions())


class DivisibilityTests(unittest.TestCase):

    def test_delta_left_divides(self):
        w = braid(3, 1, 2, 1, 2)
        divides, quotient = left_divisible_by_delta(w)
        self.assertTrue(divides)
        self.assertTrue(positive_equal(delta(3) + quotient, w))

    def test_every_generator_left_divides_delta(self):
        for n in range(2, 8):
            self.assertEqual(starting_set(Permutation.reversal(n)), frozenset(range(1, n)))
            for i in range(1, n):
                quotient = right_complement_in_delta(PermutationBraid(perm_of(braid(n, i))))
                self.assertTrue(positive_equal(braid(n, i) + quotient.word(), delta(n)), (n, i))

    def test_delta_does_not_divide_short_words(self):
        self.assertEqual(left_divisible_by_delta(braid(3, 1, 2)), (False, None))


class ConjugatorTests(unittest.TestCase):

    def test_two_generators_reversed(self):
        u = lemma47_conjugator((2, 1), 3)
        self.assertEqual(u.letters, (1,))
        self.assertTrue(lemma47_certificate_holds((2, 1), u, 3))

    def test_every_order_of_four_generators(self):
        for ys in itertools.permutations(range(1, 5)):
            u = lemma47_conjugator(ys, 5)
            self.assertTrue(u.is_positive())
            self.assertTrue(lemma47_certificate_holds(ys, u, 5), ys)

    def test_every_order_of_up_to_seven_generators(self):
        for m in range(1, 8):
            for ys in itertools.permutations(range(1, m + 1)):
                u = lemma47_conjugator(ys, m + 1)
                self.assertTrue(lemma47_certificate_holds(ys, u, m + 1), ys)

    @settings(max_examples=50, derandomize=True)
    @given(st.integers(min_value=1, max_value=6).flatmap(
        lambda m: st.permutations(list(range(1, m + 1)))))
    def test_conjugator_certificate_holds(self, ys):
        n = len(ys) + 1
        self.assertTrue(lemma47_certificate_holds(ys, lemma47_conjugator(ys, n), n))

    def test_repeated_generator_is_rejected(self):
        with self.assertRaises(NotAPermutationOfGenerators):
            lemma47_conjugator((1, 1), 3)

    def test_too_many_generators_for_strands(self):
        with self.assertRaises(NotAPermutationOfGenerators):
            lemma47_conjugator((1, 2, 3), 3)


class RandomWordTests(unittest.TestCase):

    def test_seeded_words_repeat(self):
        self.assertEqual(random_word(random.Random(5), 4, 10), random_word(random.Random(5), 4, 10))

    def test_positive_flag(self):
        self.assertTrue(random_word(random.Random(1), 5, 30, positive=True).is_positive())


if __name__ == "__main__":
    unittest.main()
