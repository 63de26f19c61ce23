"""
Serializers for fibword reports and paths
"""
import dataclasses
import math
from enum import Enum
from fractions import Fraction

import numpy as np
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from . import __version__
from .conf import fibword_settings
from .golden import Golden
from .turtle import Path, bbox, displacement


def round_sig(value: float, digits: int = None) -> float:
    """Round to the configured number of significant digits."""
    digits = digits or fibword_settings.FLOAT_DIGITS
    if value == 0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def normalize(value):
    """
    Turn library values into JSON-ready data. Golden values keep their exact
    form next to the decimal; fractions keep numerator/denominator.
    """
    if isinstance(value, Golden):
        return {'exact': str(value), 'value': round_sig(float(value))}
    if isinstance(value, Fraction):
        return {'exact': f"{value.numerator}/{value.denominator}", 'value': round_sig(float(value))}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_sig(float(value))
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [normalize(v) for v in items]
    if isinstance(value, np.ndarray):
        return normalize(value.tolist())
    if dataclasses.is_dataclass(value):
        return {f.name: normalize(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return value


def provenance(heading=None, parity_base=None, identify_reversal=None) -> dict:
    return {
        'version': __version__,
        'heading': list(heading if heading is not None else fibword_settings.HEADING),
        'parity_base': parity_base if parity_base is not None else fibword_settings.PARITY_BASE,
        'identify_reversal': (
            identify_reversal if identify_reversal is not None else fibword_settings.IDENTIFY_REVERSAL
        ),
    }


class ReportSerializer(serializers.Serializer):
    """
    Serializer for command reports
    """
    command = serializers.CharField()
    inputs = serializers.DictField()
    outputs = serializers.JSONField()
    provenance = serializers.DictField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['outputs'] = normalize(instance['outputs'])
        return data


class GoldenPairField(serializers.Field):
    """[[m, k], [m, k]] for a vertex whose coordinates are m*phi + k/2."""

    def to_representation(self, value):
        return [list(coordinate.parts()) for coordinate in value]


class PathSerializer(serializers.Serializer):
    """
    Serializer for traced paths
    """
    rule = serializers.CharField()
    n = serializers.IntegerField(allow_null=True)
    vertices = serializers.SerializerMethodField()
    exact_vertices = serializers.SerializerMethodField()
    tokens = serializers.ListField(child=serializers.CharField())
    displacement = serializers.SerializerMethodField()
    bbox = serializers.SerializerMethodField()

    def get_vertices(self, obj):
        return [[round_sig(x), round_sig(y)] for x, y in obj['path'].float_vertices()]

    def get_exact_vertices(self, obj):
        path = obj['path']
        if not path.exact:
            return None
        field = GoldenPairField()
        return [field.to_representation(vertex) for vertex in path.vertices]

    def get_displacement(self, obj):
        return [round_sig(float(v)) for v in displacement(obj['path'])]

    def get_bbox(self, obj):
        return [round_sig(float(v)) for v in bbox(obj['path'])]

    def to_representation(self, instance):
        if isinstance(instance, Path):
            instance = {'path': instance, 'rule': instance.rule, 'n': None, 'tokens': instance.tokens}
        return super().to_representation(instance)


def path_payload(path: Path, n: int = None) -> dict:
    return {'path': path, 'rule': path.rule, 'n': n, 'tokens': path.tokens}


def render_json(data) -> bytes:
    return JSONRenderer().render(data, renderer_context={'indent': 2})


def render_report(command: str, inputs: dict, outputs, **conventions) -> bytes:
    report = {
        'command': command,
        'inputs': normalize(inputs),
        'outputs': outputs,
        'provenance': provenance(**conventions),
    }
    return render_json(ReportSerializer(report).data)


def render_path(path: Path, n: int = None) -> bytes:
    return render_json(PathSerializer(path_payload(path, n)).data)
