from itertools import product

from django.test import SimpleTestCase, override_settings

from fibword.exceptions import AlphabetMismatchError, OracleSizeError
from fibword.legality import (
    BoundedFactor,
    base_factors,
    desubstitute,
    desubstitution_trace,
    is_legal_factor,
    legality_report,
    oracle_is_factor,
    scan_forbidden,
)
from fibword.words import THETA, fib_word


class DesubstitutionTests(SimpleTestCase):

    def test_forbidden_patterns(self):
        self.assertEqual(scan_forbidden('abaabb'), 4)
        self.assertEqual(scan_forbidden('abaaab'), 2)
        self.assertIsNone(scan_forbidden('abaab'))

    def test_single_preimage(self):
        outcome = desubstitute(BoundedFactor('abaab'))
        self.assertFalse(outcome.is_illegal)
        self.assertEqual([p.word for p in outcome.preimages], ['aba'])

    def test_closed_left_end_cannot_start_with_b(self):
        outcome = desubstitute(BoundedFactor('babaab', left_open=False))
        self.assertTrue(outcome.is_illegal)
        self.assertEqual(outcome.illegal.reason, 'closed factor begins with b')

    def test_closed_pair(self):
        outcome = desubstitute(BoundedFactor('ab', left_open=False, right_open=False))
        self.assertEqual([p.word for p in outcome.preimages], ['a'])

    def test_worked_example_dies_in_one_step(self):
        outcome = desubstitute(BoundedFactor('abaabaababaabababa'))
        self.assertTrue(outcome.is_illegal)
        self.assertIn('ababaabaaab', [p.word for p in outcome.pruned])

    def test_base_words(self):
        self.assertIn('abaa', base_factors())
        self.assertNotIn('bb', base_factors())
        self.assertIn('', base_factors())


class LegalityReportTests(SimpleTestCase):

    def test_legal_word(self):
        report = legality_report(BoundedFactor('abaab'))
        self.assertTrue(report.legal)
        self.assertEqual(report.rounds, 1)
        self.assertEqual(report.base_word, 'aba')

    def test_screened_word_takes_no_rounds(self):
        report = legality_report(BoundedFactor('abba'))
        self.assertFalse(report.legal)
        self.assertEqual(report.rounds, 0)
        self.assertEqual(report.pruned[0].reason, 'bb at 1')

    def test_hidden_illegality(self):
        # no bb or aaa, but its preimage is aaa
        report = legality_report(BoundedFactor('ababab'))
        self.assertFalse(report.legal)
        self.assertEqual(report.rounds, 1)
        self.assertEqual(report.pruned[-1].word, 'aaa')

    def test_frontiers_start_with_the_factor(self):
        factor = BoundedFactor('aabaabaa')
        report = legality_report(factor)
        self.assertFalse(report.legal)
        self.assertEqual(report.frontiers[0], [factor])

    def test_rounds_before_the_verdict(self):
        frontiers, rounds = desubstitution_trace(BoundedFactor('aababaabaabaaba'))
        self.assertEqual(rounds, 2)
        self.assertEqual([f.word for f in frontiers[1]], ['baabababa', 'baabababab'])
        self.assertEqual(desubstitution_trace(BoundedFactor('ababaabaababaababaababaab'))[1], 3)
        self.assertFalse(is_legal_factor(BoundedFactor('ababaabaababaababaababaab')))

    def test_offset_ten_word_is_legal(self):
        word = 'aababaababaabaaba'
        self.assertTrue(is_legal_factor(BoundedFactor(word)))
        self.assertTrue(oracle_is_factor(word))
        self.assertTrue(is_legal_factor(BoundedFactor('baab')))

    def test_alphabet(self):
        with self.assertRaises(AlphabetMismatchError):
            legality_report(BoundedFactor('abc'))

    def test_agrees_with_oracle_on_every_short_word(self):
        for length in range(1, 15):
            legal = 0
            for letters in product('ab', repeat=length):
                word = ''.join(letters)
                verdict = is_legal_factor(BoundedFactor(word))
                self.assertEqual(verdict, oracle_is_factor(word), word)
                legal += verdict
            self.assertEqual(legal, length + 1, length)

    def test_reversals_stay_legal(self):
        for length in range(1, 13):
            for letters in product('ab', repeat=length):
                word = ''.join(letters)
                if is_legal_factor(BoundedFactor(word)):
                    self.assertTrue(is_legal_factor(BoundedFactor(word[::-1])), word)

    def test_long_factor(self):
        self.assertTrue(is_legal_factor(BoundedFactor('abaabaaba')))
        self.assertFalse(is_legal_factor(BoundedFactor('abababa')))


def boundary_oracle(factor):
    """Occurrence in a long prefix whose closed ends sit on image boundaries (letters a)."""
    prefix = fib_word(14)
    word = factor.word
    start = prefix.find(word)
    while start != -1:
        end = start + len(word)
        left = factor.left_open or prefix[start] == 'a'
        right = factor.right_open or (end < len(prefix) and prefix[end] == 'a')
        if left and right:
            return True
        start = prefix.find(word, start + 1)
    return False


class ClosedEndTests(SimpleTestCase):

    def test_closed_image_of_a_legal_word(self):
        word = 'aababaababa'
        self.assertEqual(THETA.apply('baabaab'), word)
        for left_open, right_open in product((True, False), repeat=2):
            self.assertTrue(is_legal_factor(BoundedFactor(word, left_open, right_open)), (left_open, right_open))

    def test_short_closed_factor_is_still_desubstituted(self):
        report = legality_report(BoundedFactor('baab', left_open=False, right_open=False))
        self.assertFalse(report.legal)
        self.assertEqual(report.rounds, 1)
        self.assertTrue(is_legal_factor(BoundedFactor('baab', right_open=False)))
        self.assertFalse(is_legal_factor(BoundedFactor('abaa', right_open=False)))

    def test_preimages_are_open(self):
        outcome = desubstitute(BoundedFactor('abaaba', left_open=False, right_open=False))
        self.assertEqual(outcome.preimages, (BoundedFactor('abab'),))
        self.assertTrue(all(p.left_open and p.right_open for p in outcome.preimages))

    def test_agrees_with_boundary_oracle(self):
        for length in range(1, 11):
            for letters in product('ab', repeat=length):
                word = ''.join(letters)
                for left_open, right_open in product((True, False), repeat=2):
                    factor = BoundedFactor(word, left_open, right_open)
                    self.assertEqual(is_legal_factor(factor), boundary_oracle(factor), str(factor))


class OracleTests(SimpleTestCase):

    def test_membership(self):
        self.assertTrue(oracle_is_factor('baabaab'))
        self.assertFalse(oracle_is_factor('ababab'))

    @override_settings(FIBWORD={'ORACLE_CAP': 10})
    def test_cap(self):
        with self.assertRaises(OracleSizeError):
            oracle_is_factor('a' * 11)
