import json
import xml.etree.ElementTree as ET
from fractions import Fraction

from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase, override_settings

from fibword import __version__
from fibword.conf import fibword_settings
from fibword.exceptions import EmptyCanvasError
from fibword.golden import PHI
from fibword.render import RenderStyle, render_deviation_svg, render_growth_sheet, render_path_svg
from fibword.serializers import PathSerializer, normalize, path_payload, provenance, render_report, round_sig
from fibword.turtle import IDENTITY, TO_AND_FRO, generalized_rule, trace
from fibword.wordstruct import Parity
from fibword.words import fib_word
from fibword.zero_line import deviation_diagram, growth_chart

SVG = '{http://www.w3.org/2000/svg}'


class NormalizeTests(SimpleTestCase):

    def test_exact_values_keep_their_form(self):
        self.assertEqual(normalize(PHI)['exact'], 'phi')
        self.assertAlmostEqual(normalize(PHI)['value'], 1.618033988750)
        self.assertEqual(normalize(Fraction(7, 17))['exact'], '7/17')
        self.assertEqual(normalize(Parity.SUSTAIN), 'S')
        self.assertEqual(normalize({'pair': (1, 2), 'letters': {'b', 'a'}}), {'pair': [1, 2], 'letters': ['a', 'b']})

    def test_round_sig(self):
        self.assertEqual(round_sig(1 / 3, 3), 0.333)
        self.assertEqual(round_sig(0.0), 0.0)

    def test_provenance_defaults(self):
        data = provenance()
        self.assertEqual(data['version'], __version__)
        self.assertEqual(data['heading'], [0, -1])
        self.assertEqual(provenance(parity_base=1)['parity_base'], 1)


class ReportTests(SimpleTestCase):

    def test_report_envelope(self):
        report = json.loads(render_report('gen', {'n': 3}, {'word': 'abaab'}, identify_reversal=True))
        self.assertEqual(report['command'], 'gen')
        self.assertEqual(report['inputs'], {'n': 3})
        self.assertEqual(report['outputs'], {'word': 'abaab'})
        self.assertTrue(report['provenance']['identify_reversal'])

    def test_exact_path(self):
        data = PathSerializer(path_payload(trace('ab', IDENTITY), n=1)).data
        self.assertEqual(data['rule'], 'identity')
        self.assertEqual(data['n'], 1)
        self.assertEqual(data['tokens'], ['a', 'b'])
        self.assertEqual(data['exact_vertices'], [[[0, 0], [0, 0]], [[0, 0], [-1, 0]], [[0, 0], [-1, -2]]])
        self.assertEqual(data['bbox'], [0.0, data['displacement'][1], 0.0, 0.0])

    def test_float_path_has_no_exact_vertices(self):
        data = PathSerializer(trace('ab', generalized_rule(137.5))).data
        self.assertIsNone(data['exact_vertices'])
        self.assertIsNone(data['n'])


class SettingsTests(SimpleTestCase):

    @override_settings(FIBWORD={'DEVIATION_STEP': 2.0})
    def test_override(self):
        self.assertEqual(fibword_settings.DEVIATION_STEP, 2.0)
        self.assertEqual(deviation_diagram('ab').step, 2.0)

    @override_settings(FIBWORD={'RENDER_STYLE': {'scale': 4.0}})
    def test_render_style_is_merged(self):
        style = RenderStyle.from_settings()
        self.assertEqual(style.scale, 4.0)
        self.assertEqual(style.margin, 20.0)

    @override_settings(FIBWORD={'WIDTH': 3})
    def test_unknown_key(self):
        with self.assertRaises(ImproperlyConfigured):
            fibword_settings.HEADING


class RenderTests(SimpleTestCase):

    def test_polyline(self):
        svg = render_path_svg(trace(fib_word(5), TO_AND_FRO))
        self.assertTrue(svg.startswith(b"<?xml"))
        root = ET.fromstring(svg)
        self.assertEqual(root.tag, SVG + 'svg')
        self.assertIsNotNone(root.find(SVG + 'polyline'))

    def test_single_segment_is_a_line(self):
        root = ET.fromstring(render_path_svg(trace('a', IDENTITY)))
        self.assertIsNone(root.find(SVG + 'polyline'))
        self.assertEqual(len(root.findall(SVG + 'line')), 1)

    def test_overlays(self):
        root = ET.fromstring(render_path_svg(trace('aba', IDENTITY), overlays=('bbox', 'center')))
        classes = [element.get('class') for element in root.iter() if element.get('class')]
        self.assertEqual(classes, ['bbox', 'diagonal', 'center', 'center'])
        with self.assertRaises(ValueError):
            render_path_svg(trace('aba', IDENTITY), overlays=('grid',))

    def test_empty_canvas(self):
        with self.assertRaises(EmptyCanvasError):
            render_path_svg(trace('', IDENTITY))

    def test_style_validation(self):
        with self.assertRaises(ValueError):
            RenderStyle.from_settings(scale=0)
        with self.assertRaises(ValueError):
            RenderStyle.from_settings(path_color='blue')

    def test_deviation_diagram(self):
        root = ET.fromstring(render_deviation_svg(deviation_diagram(fib_word(4))))
        structures = [p.get('data-structure') for p in root.iter(SVG + 'polygon')]
        self.assertEqual(structures, ['aba', 'aba', 'b'])
        self.assertEqual(len([e for e in root.iter(SVG + 'line') if e.get('class') == 'zero-axis']), 1)

    def test_growth_sheet(self):
        chart = growth_chart(6)
        root = ET.fromstring(render_growth_sheet(chart))
        words = [g.get('data-word') for g in root.iter(SVG + 'g')]
        self.assertEqual(words, [node.word for node in chart.nodes])
