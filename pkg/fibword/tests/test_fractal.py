import math
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from fibword.exceptions import BracketError, DimensionDomainError, FitError, ResidueError, UnderflowError
from fibword.firehose import find_firehose_angle, net_heading_drift, scan, straightness
from fibword.fractal import (
    VecPair,
    bbox_ratio_limit,
    box_count_dimension,
    default_box_sizes,
    dimension_report,
    periodic_approx,
    quadratic_residual,
    quadratic_residuals,
    scale_ratio,
    segment_growth_ratio,
    similarity_dimension,
    traced_vector,
    vector_recurrence,
    vector_sequence,
)
from fibword.golden import PHI_FLOAT
from fibword.turtle import DOUBLE_LETTER, IDENTITY, OMEGA_RULE, trace
from fibword.words import ZIGZAG, fib_word, trim_last_two


class VectorTests(SimpleTestCase):

    def test_sequence(self):
        vectors = vector_sequence(19)
        self.assertEqual(vectors[10], (-12, -11))
        self.assertEqual(vectors[13], (0, -40))
        self.assertEqual(vectors[16], (-70, -69))
        self.assertEqual(vectors[19], (0, -238))

    def test_sequence_matches_traced_paths(self):
        for n, vector in vector_sequence(19).items():
            self.assertEqual(traced_vector(n), vector, n)

    def test_forms_alternate(self):
        for n, (x, y) in vector_sequence(49).items():
            if n % 6 == 1:
                self.assertEqual(x, 0, n)
            else:
                self.assertEqual(y, x + 1, n)

    def test_tile_counts_and_displacements(self):
        expected = {
            4: (3, (-2, -1)),
            7: (16, (0, -6)),
            10: (71, (-12, -11)),
            13: (304, (0, -40)),
            16: (1291, (-70, -69)),
            19: (5472, (0, -238)),
        }
        for n, (tiles, vector) in expected.items():
            self.assertEqual(len(trace(trim_last_two(n), DOUBLE_LETTER).tokens), tiles, n)
            self.assertEqual(traced_vector(n), vector, n)

    def test_recurrence_residues(self):
        self.assertEqual(vector_recurrence(VecPair(0, -6, -2, -1), 4), (-12, -11))
        with self.assertRaises(ResidueError):
            vector_recurrence(VecPair(0, -6, -2, -1), 2)
        with self.assertRaises(UnderflowError):
            vector_sequence(6)

    def test_quadratic_residual(self):
        self.assertAlmostEqual(quadratic_residual(-12, -40), -0.02)
        residuals = dict(quadratic_residuals(31))
        self.assertLess(abs(residuals[31]), abs(residuals[13]))


class DimensionTests(SimpleTestCase):

    def test_similarity_dimension(self):
        self.assertAlmostEqual(similarity_dimension(8, 2), 3.0)
        self.assertAlmostEqual(similarity_dimension(8, 0.5), 3.0)
        self.assertAlmostEqual(similarity_dimension(8, 0.25), 1.5)
        self.assertAlmostEqual(similarity_dimension(PHI_FLOAT ** 3, 1 + math.sqrt(2)), 1.63794, delta=1e-4)
        for m, s in ((1, 2), (4, 1), (4, 0)):
            with self.assertRaises(DimensionDomainError):
                similarity_dimension(m, s)

    def test_segment_growth(self):
        self.assertEqual(segment_growth_ratio(9), Fraction(89, 21))
        self.assertAlmostEqual(float(segment_growth_ratio(30)), PHI_FLOAT ** 3)
        with self.assertRaises(UnderflowError):
            segment_growth_ratio(8)

    def test_scale_ratio(self):
        self.assertAlmostEqual(scale_ratio(13), 40 / math.hypot(12, 11))
        self.assertAlmostEqual(scale_ratio(31), 1 + math.sqrt(2), delta=0.05)
        self.assertAlmostEqual(scale_ratio(49), 1 + math.sqrt(2), delta=1e-3)
        with self.assertRaises(ResidueError):
            scale_ratio(14)

    def test_dimension_report(self):
        report = dimension_report(31)
        self.assertAlmostEqual(report.dimension, math.log(PHI_FLOAT ** 3) / math.log(1 + math.sqrt(2)), delta=0.02)

    def test_bbox_ratio(self):
        self.assertAlmostEqual(bbox_ratio_limit(19), 238 / 168)
        self.assertAlmostEqual(bbox_ratio_limit(25), math.sqrt(2), delta=0.001)

    def test_periodic_approximations(self):
        first = periodic_approx(7)
        self.assertEqual((first.segments, first.scale), (17, 7))
        self.assertAlmostEqual(first.dimension, 1.456, places=3)
        late = periodic_approx(31)
        self.assertEqual((late.segments, late.scale), (1762289, 8119))
        self.assertAlmostEqual(late.dimension, 1.598, delta=0.001)
        with self.assertRaises(ResidueError):
            periodic_approx(8)


class BoxCountingTests(SimpleTestCase):

    def test_straight_line(self):
        path = trace('b' * 256, IDENTITY)
        result = box_count_dimension(path, [64, 32, 16, 8, 4, 2])
        self.assertEqual(result.counts, [4, 8, 16, 32, 64, 128])
        self.assertAlmostEqual(result.estimate, 1.0)
        self.assertAlmostEqual(result.residual, 0.0)
        self.assertEqual(result.anchor, (0.0, -256.0))

    def test_double_letter_curve(self):
        path = trace(trim_last_two(19), DOUBLE_LETTER)
        self.assertEqual(default_box_sizes(path), [32.0, 16.0, 8.0, 4.0, 2.0, 1.0])
        result = box_count_dimension(path, [64, 32, 16, 8, 4, 2])
        self.assertEqual(result.counts, [9, 29, 87, 250, 731, 2089])
        self.assertAlmostEqual(result.estimate, 1.565, delta=0.01)
        self.assertAlmostEqual(box_count_dimension(path).estimate, 1.517, delta=0.01)

    def test_zigzag_generator(self):
        path = trace(ZIGZAG.iterate('F', 5), OMEGA_RULE)
        self.assertEqual(path.segment_count, 32768)
        self.assertAlmostEqual(box_count_dimension(path).estimate, 1.5, delta=0.01)

    def test_fit_requirements(self):
        path = trace('b' * 256, IDENTITY)
        with self.assertRaises(FitError):
            box_count_dimension(path, [64, 32, 16])
        with self.assertRaises(FitError):
            box_count_dimension(path, [8, 4, 2, 1])
        with self.assertRaises(FitError):
            box_count_dimension(trace('', IDENTITY))


class FirehoseTests(SimpleTestCase):

    def test_fold_has_no_drift(self):
        self.assertEqual(net_heading_drift(fib_word(12), 180), 0.0)

    def test_drift_far_from_the_root(self):
        self.assertAlmostEqual(net_heading_drift(fib_word(12), 108), -54.0, delta=0.01)
        self.assertAlmostEqual(net_heading_drift(fib_word(12), 136), -102.5, delta=0.5)

    def test_straightness(self):
        self.assertAlmostEqual(straightness('aaa', 137.5), 1.0)
        word = fib_word(12)
        self.assertGreater(straightness(word, 137.375), straightness(word, 131.625))

    def test_scan_grid(self):
        samples = scan(fib_word(6), 130, 131, step=0.25)
        self.assertEqual([s.angle for s in samples], [130.0, 130.25, 130.5, 130.75, 131.0])

    def test_angle_search(self):
        result = find_firehose_angle(12)
        self.assertAlmostEqual(result.angle, 137.41, delta=0.05)
        self.assertEqual(result.bracket, (137.25, 137.5))
        self.assertIn((131.5, 131.75), result.candidates)
        self.assertLess(abs(result.drift), 5.0)

    def test_bad_bracket(self):
        with self.assertRaises(BracketError):
            find_firehose_angle(12, 140, 130)
        with self.assertRaises(BracketError):
            find_firehose_angle(12, 108, 108.5)

    def test_curled_bracket_is_not_a_root(self):
        word = fib_word(12)
        self.assertLess(straightness(word, 108.375), 0.01)
        with override_settings(FIBWORD={'FIREHOSE_MIN_STRAIGHTNESS': 0}):
            result = find_firehose_angle(12, 108, 108.5)
        self.assertAlmostEqual(result.angle, 108.38, delta=0.05)
        self.assertLess(result.straightness, 0.01)

    def test_every_kept_bracket_is_straight_enough(self):
        result = find_firehose_angle(12)
        word = fib_word(12)
        for low, high in result.candidates:
            self.assertGreaterEqual(straightness(word, (low + high) / 2), 0.01)
