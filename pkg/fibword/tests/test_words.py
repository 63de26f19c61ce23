from django.test import SimpleTestCase

from fibword.exceptions import AlphabetMismatchError, InsufficientContextError, NoAbaPrefixError, UnderflowError
from fibword.words import (
    OMEGA,
    THETA,
    ZIGZAG,
    apply,
    iterate,
    factor_complexity,
    factor_set,
    fib_number,
    fib_word,
    fib_word_concat,
    is_palindrome,
    max_power,
    parse_substitution,
    repetition_exponent,
    strip_leading_aba,
    swap_last_two,
    trim_last_two,
    word_stats,
)


class SubstitutionTests(SimpleTestCase):

    def test_theta_images(self):
        self.assertEqual(apply(THETA, 'ab'), 'aba')
        self.assertEqual(THETA.iterate('a', 3), 'abaab')
        self.assertEqual(iterate(THETA, 'a', 0), 'a')
        with self.assertRaises(UnderflowError):
            iterate(THETA, 'a', -1)

    def test_foreign_letters_are_rejected(self):
        with self.assertRaises(AlphabetMismatchError):
            THETA.apply('abc')

    def test_parse_rules_and_builtin_names(self):
        subst = parse_substitution('a:ab, b:ac, c:a')
        self.assertEqual(subst.alphabet, ('a', 'b', 'c'))
        self.assertEqual(subst.apply('abc'), 'abaca')
        self.assertIs(parse_substitution('omega'), OMEGA)
        with self.assertRaises(AlphabetMismatchError):
            parse_substitution('a=ab')

    def test_omega_and_zigzag_keep_turns(self):
        self.assertEqual(OMEGA.apply('F'), 'FLFRFRFLF')
        self.assertEqual(ZIGZAG.apply('LR'), 'LR')
        self.assertEqual(len(OMEGA.iterate('F', 2)), 5 * 9 + 4)


class FibonacciWordTests(SimpleTestCase):

    def test_first_words(self):
        self.assertEqual(
            [fib_word(n) for n in range(8)],
            [
                'a', 'ab', 'aba', 'abaab', 'abaababa', 'abaababaabaab',
                'abaababaabaababaababa', 'abaababaabaababaababaabaababaabaab',
            ],
        )

    def test_letter_counts(self):
        for n in range(26):
            self.assertEqual(word_stats(fib_word(n)), (fib_number(n + 1), fib_number(n), fib_number(n + 2)), n)

    def test_lengths_follow_fibonacci_numbers(self):
        for n in range(15):
            self.assertEqual(len(fib_word(n)), fib_number(n + 2))

    def test_both_constructions_agree(self):
        for n in range(21):
            self.assertEqual(fib_word(n), fib_word_concat(n), n)

    def test_negative_index(self):
        with self.assertRaises(UnderflowError):
            fib_word(-1)

    def test_stats(self):
        self.assertEqual(word_stats(fib_word(5)), (8, 5, 13))
        self.assertEqual(word_stats(fib_word(6)), (13, 8, 21))

    def test_variants(self):
        self.assertEqual(trim_last_two(4), 'abaaba')
        self.assertEqual(swap_last_two(3), 'ababa')
        self.assertEqual(strip_leading_aba(4), 'ababa')
        with self.assertRaises(UnderflowError):
            trim_last_two(0)
        with self.assertRaises(NoAbaPrefixError):
            strip_leading_aba(1)

    def test_trimmed_words_are_palindromes(self):
        for n in range(1, 18):
            self.assertTrue(is_palindrome(trim_last_two(n)), n)


class FactorTests(SimpleTestCase):

    def test_complexity_is_length_plus_one(self):
        self.assertEqual(factor_complexity(12), list(range(2, 14)))

    def test_no_forbidden_factor(self):
        word = fib_word(25)
        self.assertNotIn('bb', word)
        self.assertNotIn('aaa', word)

    def test_factor_set(self):
        self.assertEqual(factor_set(None, 2), {'aa', 'ab', 'ba'})
        with self.assertRaises(InsufficientContextError):
            factor_set(3, 4)

    def test_repetitions(self):
        prefix = fib_word(10)
        self.assertEqual(repetition_exponent(prefix, 'a'), 2)
        self.assertEqual(repetition_exponent(prefix, 'ab'), 2)
        self.assertEqual(max_power(prefix, 3), ('aba', 3))

    def test_cubes_in_f12(self):
        prefix = fib_word(12)
        self.assertGreaterEqual(repetition_exponent(prefix, 'baababaa'), 2)
        self.assertEqual(repetition_exponent(prefix, 'baaba'), 3)
        self.assertEqual(max_power(prefix, 8), ('aba', 3))

    def test_no_fourth_power(self):
        self.assertEqual(max_power(fib_word(14), 60)[1], 3)

    def test_ties_go_to_the_shorter_block(self):
        self.assertEqual(max_power('abababaaa', 2), ('a', 3))
        self.assertEqual(max_power('aa', 1), ('a', 2))
