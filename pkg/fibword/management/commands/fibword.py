"""
Command-line surface of the fibword library.

    python manage.py fibword gen --n 3
    python manage.py fibword check --word bb
    python manage.py fibword analyze displacement --rule double-letter --n 13

Exit status is 0 on success, 1 when check finds the word illegal and 2 on
usage or argument-domain errors.
"""
import argparse
import logging
from pathlib import Path as FilePath

from django.core.management.base import BaseCommand, CommandError

from fibword import __version__
from fibword.conf import fibword_settings
from fibword.exceptions import FibwordError, PrimitivityError
from fibword.firehose import find_firehose_angle
from fibword.fractal import box_count_dimension
from fibword.golden import Golden
from fibword.intersections import self_intersections
from fibword.legality import BoundedFactor, legality_report, oracle_is_factor
from fibword.render import RenderStyle, render_deviation_svg, render_growth_sheet, render_path_svg
from fibword.serializers import render_path, render_report, round_sig
from fibword.spectral import incidence, is_primitive, perron, power
from fibword.turtle import (
    DOUBLE_LETTER,
    bbox,
    bbox_ratio,
    bounding_box,
    displacement,
    get_rule,
    half_turn_symmetry,
    trace,
)
from fibword.words import (
    OMEGA,
    fib_word,
    fib_word_concat,
    factor_complexity,
    is_palindrome,
    iterate,
    max_power,
    parse_substitution,
    strip_leading_aba,
    swap_last_two,
    trim_last_two,
    word_stats,
)
from fibword.wordstruct import (
    central_letter,
    components_frame,
    decompose_theorem31,
    digram_frequencies,
    digram_pairs,
    direction_parity,
    displacement_class,
    factorize_aba_baaba,
    nested_embedding,
    refine_baaba,
)
from fibword.zero_line import deviation_diagram, growth_chart, max_deviation, zero_excursions

logger = logging.getLogger(__name__)

FORMS = ('auto', 'F', 'W', 'T', 'star')
FACTOR_SCHEMES = ('aba-baaba', 'digram', 'nested', 'theorem31')
CLASSIFY_KINDS = ('parity', 'displacement', 'central-letter')
ANALYZE_METRICS = (
    'displacement', 'bbox', 'intersections', 'symmetry',
    'dimension', 'structures', 'max-deviation', 'track',
)
RENDER_KINDS = ('path', 'deviation', 'growth')


def _fmt(value) -> str:
    if isinstance(value, Golden):
        return str(value)
    if isinstance(value, float):
        return f"{round_sig(value):g}" if abs(value) < 1e15 else repr(value)
    return str(value)


def _pair(values) -> str:
    return f"({', '.join(_fmt(v) for v in values)})"


def _brackets(pieces) -> str:
    return ''.join(f"({piece})" for piece in pieces)


class Command(BaseCommand):
    help = 'Fibonacci word generation, legality, structure, drawing and fractal analysis'
    requires_system_checks = []

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--json', action='store_true', help='Emit a JSON report')
        common.add_argument('--out', help='Write the output to this file instead of stdout')
        common.add_argument('--identify-reversal', action='store_const', const=True, default=None,
                            help='Identify excursions with their time reversal')
        common.add_argument('--parity-base', type=int, choices=(0, 1), default=None,
                            help='Index of the first letter for the odd-even rule')

        word_source = argparse.ArgumentParser(add_help=False)
        word_source.add_argument('--n', type=int, help='Index of the Fibonacci word')
        word_source.add_argument('--word', help='Explicit word (overrides --n)')
        word_source.add_argument('--form', choices=FORMS, default='auto',
                                 help='F_n, W_n, T_n or F*_n; auto picks W_n for double-letter, F_n otherwise')
        word_source.add_argument('--rule', default='to-and-fro',
                                 help='Drawing rule name or angle:<deg>')

        sub = parser.add_subparsers(dest='subcommand', required=True)

        gen = sub.add_parser('gen', parents=[common], help='Generate a word')
        gen.add_argument('--n', type=int, required=True)
        gen.add_argument('--form', choices=FORMS, default='F')
        gen.add_argument('--construction', choices=('substitution', 'concat'), default='substitution')
        gen.add_argument('--subst', help='Substitution name or a:ab,b:a rules')
        gen.add_argument('--seed', help='Seed word for --subst (default: first letter)')

        check = sub.add_parser('check', parents=[common], help='Decide factor legality')
        check.add_argument('--word', required=True)
        check.add_argument('--closed-left', action='store_true')
        check.add_argument('--closed-right', action='store_true')
        check.add_argument('--oracle', action='store_true', help='Cross-check with the substring oracle')

        stats = sub.add_parser('stats', parents=[common], help='Letter counts and word facts')
        stats.add_argument('--n', type=int, required=True)
        stats.add_argument('--complexity', type=int, help='Factor complexity up to this length')
        stats.add_argument('--max-block', type=int, help='Highest repetition with blocks up to this length')

        factorize = sub.add_parser('factorize', parents=[common], help='Structural factorizations')
        factorize.add_argument('--scheme', choices=FACTOR_SCHEMES, default='aba-baaba')
        factorize.add_argument('--n', type=int)
        factorize.add_argument('--word')
        factorize.add_argument('--refine', action='store_true', help='Split baaba as (ba)(aba)')

        spectral = sub.add_parser('spectral', parents=[common], help='Incidence matrix and Perron data')
        spectral.add_argument('--subst', default='theta')
        spectral.add_argument('--power', type=int, default=1)

        classify = sub.add_parser('classify', parents=[common], help='Parity, displacement or central letter')
        classify.add_argument('--kind', choices=CLASSIFY_KINDS, default='displacement')
        classify.add_argument('--n', type=int, required=True)

        trace_parser = sub.add_parser('trace', parents=[common, word_source], help='Trace a path')
        trace_parser.add_argument('--svg', help='Also write the path as SVG')

        analyze = sub.add_parser('analyze', parents=[common, word_source], help='Measure a traced path')
        analyze.add_argument('metric', choices=ANALYZE_METRICS)
        analyze.add_argument('--sizes', type=float, nargs='+', help='Box sizes for dimension')

        growth = sub.add_parser('growth', parents=[common], help='Growth chart of aba/baaba words')
        growth.add_argument('--max-tiles', type=int, default=30)
        growth.add_argument('--svg', help='Also write the growth sheet as SVG')

        search = sub.add_parser('search-angle', parents=[common], help='Fire-hose angle search')
        search.add_argument('--n', type=int, default=12)
        search.add_argument('--lo', type=float, default=130.0)
        search.add_argument('--hi', type=float, default=145.0)
        search.add_argument('--tolerance', type=float)

        render = sub.add_parser('render', parents=[common, word_source], help='Write SVG')
        render.add_argument('--kind', choices=RENDER_KINDS, default='path')
        render.add_argument('--overlay', action='append', choices=('bbox', 'center'), default=[])
        render.add_argument('--max-tiles', type=int, default=30)
        render.add_argument('--svg', help='Output file (same as --out)')

    # plumbing

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        handler = getattr(self, f"handle_{subcommand.replace('-', '_')}")
        logger.debug("fibword %s with %s", subcommand, options)
        try:
            output = handler(options)
        except FibwordError as exc:
            raise CommandError(f"{exc.__class__.__name__}: {exc.detail}", returncode=2) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        if output is not None:
            self._emit(output, options)

    def _conventions(self, options) -> dict:
        return {
            'parity_base': options.get('parity_base'),
            'identify_reversal': options.get('identify_reversal'),
        }

    def _convention_line(self, options) -> str:
        parity = options.get('parity_base')
        identify = options.get('identify_reversal')
        heading = tuple(fibword_settings.HEADING)
        parity = fibword_settings.PARITY_BASE if parity is None else parity
        identify = fibword_settings.IDENTIFY_REVERSAL if identify is None else identify
        return (
            f"# conventions: heading={_pair(heading)} parity_base={parity} "
            f"identify_reversal={str(identify).lower()} version={__version__}"
        )

    def _report(self, options, command, inputs, outputs, lines):
        if options['json']:
            return render_report(command, inputs, outputs, **self._conventions(options))
        return '\n'.join(list(lines) + [self._convention_line(options)])

    def _emit(self, output, options):
        target = options.get('out') or options.get('svg')
        if target and (options.get('out') or options['subcommand'] == 'render'):
            data = output if isinstance(output, bytes) else output.encode('utf-8') + b'\n'
            FilePath(target).write_bytes(data)
            self.stdout.write(f"Wrote {target}")
            return
        self.stdout.write(output.decode('utf-8') if isinstance(output, bytes) else output)

    def _word(self, options, rule=None) -> str:
        if options.get('word') is not None:
            return options['word']
        n = options.get('n')
        if n is None:
            raise CommandError('Pass --n or --word', returncode=2)
        if rule is not None and rule.name == 'omega':
            return OMEGA.iterate('F', n)
        form = options.get('form', 'F')
        if form == 'auto':
            form = 'W' if rule is not None and rule.name == DOUBLE_LETTER.name else 'F'
        return {
            'F': fib_word,
            'W': trim_last_two,
            'T': swap_last_two,
            'star': strip_leading_aba,
        }[form](n)

    def _path(self, options):
        rule = get_rule(options['rule'])
        word = self._word(options, rule)
        return trace(word, rule, parity_base=options.get('parity_base'))

    def _inputs(self, options, *names) -> dict:
        return {name: options.get(name) for name in names if options.get(name) is not None}

    # subcommands

    def handle_gen(self, options):
        n = options['n']
        if options.get('subst'):
            subst = parse_substitution(options['subst'])
            word = iterate(subst, options.get('seed') or subst.alphabet[0], n)
        elif options['construction'] == 'concat':
            word = fib_word_concat(n)
        else:
            word = self._word(options)
        outputs = {'word': word, 'length': len(word)}
        inputs = self._inputs(options, 'n', 'form', 'construction', 'subst', 'seed')
        return self._report(options, 'gen', inputs, outputs, [word])

    def handle_check(self, options):
        factor = BoundedFactor(options['word'], not options['closed_left'], not options['closed_right'])
        report = legality_report(factor)
        verdict = 'legal' if report.legal else 'illegal'
        outputs = {
            'factor': str(factor),
            'verdict': verdict,
            'rounds': report.rounds,
            'base_word': report.base_word,
            'frontiers': [[str(f) for f in frontier] for frontier in report.frontiers],
            'pruned': [{'word': p.word, 'reason': p.reason} for p in report.pruned],
        }
        lines = [verdict, f"rounds: {report.rounds}"]
        if report.legal:
            lines.append(f"base: {report.base_word or '(empty)'}")
        elif report.pruned:
            lines.append(f"reason: {report.pruned[-1].reason} in {report.pruned[-1].word}")
        if options['oracle']:
            oracle = oracle_is_factor(factor.word)
            outputs['oracle'] = 'legal' if oracle else 'illegal'
            lines.append(f"oracle: {outputs['oracle']}")
        inputs = {'word': factor.word, 'left_open': factor.left_open, 'right_open': factor.right_open}
        self._emit(self._report(options, 'check', inputs, outputs, lines), options)
        if not report.legal:
            raise CommandError(f"{factor} is illegal", returncode=1)

    def handle_stats(self, options):
        n = options['n']
        count_a, count_b, length = word_stats(fib_word(n))
        outputs = {'count_a': count_a, 'count_b': count_b, 'length': length}
        lines = [f"count_a: {count_a}", f"count_b: {count_b}", f"length: {length}"]
        if n >= 1:
            w = trim_last_two(n)
            outputs['w_palindrome'] = is_palindrome(w)
            outputs['central_letter'] = central_letter(n)
            lines += [
                f"W_{n} palindrome: {str(outputs['w_palindrome']).lower()}",
                f"central letter: {outputs['central_letter'] or '(empty)'}",
            ]
        if options.get('complexity'):
            outputs['complexity'] = factor_complexity(options['complexity'])
            lines.append(f"complexity: {' '.join(map(str, outputs['complexity']))}")
        if options.get('max_block'):
            block, exponent = max_power(fib_word(n), options['max_block'])
            outputs['max_power'] = {'block': block, 'exponent': exponent}
            lines.append(f"max power: ({block})^{exponent}")
        return self._report(options, 'stats', self._inputs(options, 'n', 'complexity', 'max_block'), outputs, lines)

    def handle_factorize(self, options):
        scheme = options['scheme']
        n = options.get('n')
        inputs = self._inputs(options, 'scheme', 'n', 'word')
        if scheme in ('nested', 'theorem31') and n is None:
            raise CommandError(f"--scheme {scheme} needs --n", returncode=2)

        if scheme == 'aba-baaba':
            factorization = factorize_aba_baaba(self._word({**options, 'form': 'F'}))
            factors = refine_baaba(factorization) if options['refine'] else factorization.factors
            outputs = {'factors': factors, 'remainder': factorization.remainder,
                       'counts': factorization.counts()}
            lines = [_brackets(factors) + factorization.remainder,
                     f"remainder: {factorization.remainder or '(empty)'}"]
        elif scheme == 'digram':
            word = self._word({**options, 'form': 'F'})
            pairs = digram_pairs(word)
            outputs = {'pairs': pairs, 'count': len(pairs)}
            lines = [_brackets(pairs), f"pairs: {len(pairs)}"]
            if options.get('word') is None:
                freqs = digram_frequencies(n)
                outputs['frequencies'] = dict(zip(('ab', 'aa', 'ba'), freqs))
                lines.append('frequencies: ' + ' '.join(
                    f"{d}={f.numerator}/{f.denominator}" for d, f in outputs['frequencies'].items()
                ))
        elif scheme == 'nested':
            if n % 3:
                raise CommandError(f"Nested embedding factorizes F_3m, got n = {n}", returncode=2)
            components = nested_embedding(n // 3)
            outputs = {'components': [c.index for c in components]}
            lines = [' '.join(f"F_{c.index}" for c in components)]
        else:
            decomposition = decompose_theorem31(n)
            outputs = {'parts': decomposition.parts, 'joints': decomposition.joints,
                       'holds': decomposition.joined() == trim_last_two(n)}
            labels = [f"W_{n - 3}", f"W_{n - 3}", f"W_{n - 6}", f"W_{n - 3}", f"W_{n - 3}"]
            joints = decomposition.joints + ['']
            lines = [''.join(f"{label}({joint})" if joint else label for label, joint in zip(labels, joints)),
                     f"holds: {str(outputs['holds']).lower()}"]
        return self._report(options, 'factorize', inputs, outputs, lines)

    def handle_spectral(self, options):
        subst = parse_substitution(options['subst'])
        matrix = incidence(subst)
        powered = power(matrix, options['power'])
        primitive, exponent = is_primitive(matrix)
        outputs = {
            'alphabet': list(matrix.alphabet),
            'matrix': matrix.tolist(),
            'power': options['power'],
            'matrix_power': powered.tolist(),
            'primitive': primitive,
            'primitive_exponent': exponent,
        }
        lines = [
            f"alphabet: {' '.join(matrix.alphabet)}",
            f"M: {matrix.tolist()}",
            f"M^{options['power']}: {powered.tolist()}",
            f"primitive: {str(primitive).lower()}" + (f" (power {exponent})" if primitive else ''),
        ]
        try:
            data = perron(matrix)
        except PrimitivityError:
            data = None
        if data is not None:
            outputs['perron'] = data
            lines += [
                f"lambda_pf: {_fmt(data.lambda_pf)}",
                f"frequencies: {_pair(data.right_vector)}",
                f"tile lengths: {_pair(data.left_vector)} (unit {data.unit_letter})",
                f"second modulus: {_fmt(data.second_modulus)}",
            ]
        return self._report(options, 'spectral', self._inputs(options, 'subst', 'power'), outputs, lines)

    def handle_classify(self, options):
        kind, n = options['kind'], options['n']
        if kind == 'parity':
            parity = direction_parity(n)
            outputs = {'parity': parity}
            lines = [parity.label]
        elif kind == 'displacement':
            cls = displacement_class(n)
            outputs = {'magnitude': cls.magnitude, 'parity': cls.parity}
            lines = [str(cls)]
        else:
            letter = central_letter(n)
            outputs = {'central_letter': letter}
            lines = [letter or '(empty)']
        return self._report(options, 'classify', self._inputs(options, 'kind', 'n'), outputs, lines)

    def handle_trace(self, options):
        path = self._path(options)
        if options.get('svg'):
            FilePath(options['svg']).write_bytes(render_path_svg(path))
        if options['json']:
            return render_path(path, options.get('n'))
        lines = [
            f"rule: {path.rule}",
            f"tokens: {len(path.tokens)}",
            f"vertices: {len(path.vertices)}",
            f"displacement: {_pair(displacement(path))}",
            f"bbox: {_pair(bbox(path))}",
            f"exact: {str(path.exact).lower()}",
        ]
        return '\n'.join(lines + [self._convention_line(options)])

    def handle_analyze(self, options):
        metric = options['metric']
        inputs = self._inputs(options, 'metric', 'rule', 'n', 'word', 'form')
        if metric == 'structures':
            report = zero_excursions(self._word({**options, 'form': 'F'}), options.get('identify_reversal'))
            outputs = {'structures': report.structures, 'counts': report.counts(),
                       'excursions': len(report.excursions),
                       'open_tail': bool(report.excursions and not report.excursions[-1].closed)}
            lines = [f"structures: {len(report.structures)}"] + report.structures
        elif metric == 'max-deviation':
            if options.get('n') is None:
                raise CommandError('max-deviation needs --n', returncode=2)
            value = max_deviation(options['n'])
            outputs = {'max_deviation': value}
            lines = [f"{value} ({_fmt(float(value))})"]
        elif metric == 'track':
            n = options['n']
            if n is None or n % 3:
                raise CommandError('track needs --n divisible by 3', returncode=2)
            frame = components_frame(n // 3)
            outputs = {'rows': frame.to_dict(orient='records')}
            lines = [frame.to_string(index=False)]
        else:
            path = self._path(options)
            if metric == 'displacement':
                value = displacement(path)
                outputs = {'displacement': value, 'tiles': len(path.tokens)}
                lines = [_pair(value)]
            elif metric == 'bbox':
                width, height = bounding_box(path)
                outputs = {'width': width, 'height': height, 'ratio': bbox_ratio(path)}
                lines = [f"width: {_fmt(width)}", f"height: {_fmt(height)}",
                         f"ratio: {_fmt(outputs['ratio'])}"]
            elif metric == 'intersections':
                report = self_intersections(path)
                outputs = {'proper_crossings': report.proper_crossings,
                           'collinear_overlaps': report.collinear_overlaps,
                           'vertex_touches': report.vertex_touches,
                           'self_avoiding': report.self_avoiding}
                lines = [f"{key}: {str(value).lower()}" for key, value in outputs.items()]
            elif metric == 'symmetry':
                symmetry = half_turn_symmetry(path)
                outputs = {'symmetric': symmetry.symmetric, 'center': symmetry.center}
                lines = [f"symmetric: {str(symmetry.symmetric).lower()}", f"center: {_pair(symmetry.center)}"]
            else:
                result = box_count_dimension(path, options.get('sizes'))
                outputs = {'estimate': result.estimate, 'residual': result.residual,
                           'sizes': result.sizes, 'counts': result.counts, 'anchor': result.anchor}
                lines = [f"estimate: {_fmt(result.estimate)}", f"residual: {_fmt(result.residual)}",
                         f"sizes: {' '.join(_fmt(s) for s in result.sizes)}",
                         f"counts: {' '.join(map(str, result.counts))}"]
        return self._report(options, 'analyze', inputs, outputs, lines)

    def handle_growth(self, options):
        chart = growth_chart(options['max_tiles'])
        if options.get('svg'):
            FilePath(options['svg']).write_bytes(render_growth_sheet(chart))
        outputs = {
            'nodes': len(chart.nodes),
            'horizon': chart.horizon,
            'branch_points': [node.word for node in chart.branch_points],
            'structures': chart.structures,
        }
        lines = [f"nodes: {len(chart.nodes)}", f"branch points: {len(chart.branch_points)}",
                 f"structures: {len(chart.structures)}"] + chart.structures
        return self._report(options, 'growth', self._inputs(options, 'max_tiles'), outputs, lines)

    def handle_search_angle(self, options):
        result = find_firehose_angle(options['n'], options['lo'], options['hi'], options.get('tolerance'))
        outputs = {
            'angle': result.angle,
            'drift': result.drift,
            'straightness': result.straightness,
            'bracket': result.bracket,
            'candidates': result.candidates,
        }
        lines = [f"angle: {result.angle:.2f}", f"drift: {_fmt(result.drift)}",
                 f"straightness: {_fmt(result.straightness)}"]
        inputs = self._inputs(options, 'n', 'lo', 'hi', 'tolerance')
        return self._report(options, 'search-angle', inputs, outputs, lines)

    def handle_render(self, options):
        style = RenderStyle.from_settings()
        kind = options['kind']
        if kind == 'growth':
            return render_growth_sheet(growth_chart(options['max_tiles']), style)
        if kind == 'deviation':
            return render_deviation_svg(deviation_diagram(self._word({**options, 'form': 'F'})), style)
        return render_path_svg(self._path(options), style, overlays=options['overlay'])
