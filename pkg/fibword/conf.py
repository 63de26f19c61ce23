"""
Library settings

Defaults live here; a project overrides any of them through the FIBWORD
dict in its Django settings:

    FIBWORD = {
        'PARITY_BASE': 1,
        'DEVIATION_STEP': 0.5,
    }
"""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured
from django.core.signals import setting_changed


DEFAULTS = {
    'HEADING': (0, -1),
    'PARITY_BASE': 0,
    'IDENTIFY_REVERSAL': False,
    'DEVIATION_STEP': 0.4,
    'ORACLE_CAP': 5000,
    'FIREHOSE_TOLERANCE': 0.01,
    'FIREHOSE_SCAN_STEP': 0.25,
    'FIREHOSE_MIN_STRAIGHTNESS': 0.01,
    'POWER_ITERATION_TOLERANCE': 1e-12,
    'POWER_ITERATION_CAP': 10000,
    'GROWTH_HORIZON_FACTOR': 2,
    'FLOAT_DIGITS': 12,
    'RENDER_STYLE': {
        'stroke_width': 1.0,
        'scale': 10.0,
        'margin': 20.0,
        'path_color': '#1f3a93',
        'fill_color': '#8e44ad',
        'axis_color': '#c0392b',
        'mirror_color': '#27ae60',
        'bbox_color': '#e67e22',
    },
}


class FibwordSettings:
    """
    Lazy view over settings.FIBWORD merged onto DEFAULTS.
    Attribute access reads through to the merged dict and caches the value.
    """

    def __init__(self, defaults=None):
        self.defaults = defaults or DEFAULTS
        self._user_settings = None
        self._cached_attrs = set()

    @property
    def user_settings(self):
        if self._user_settings is None:
            self._user_settings = getattr(settings, 'FIBWORD', {})
            unknown = set(self._user_settings) - set(self.defaults)
            if unknown:
                raise ImproperlyConfigured(
                    f"Unknown FIBWORD setting(s): {', '.join(sorted(unknown))}"
                )
        return self._user_settings

    def __getattr__(self, attr):
        if attr not in self.defaults:
            raise AttributeError(f"Invalid FIBWORD setting: '{attr}'")
        value = self.user_settings.get(attr, self.defaults[attr])
        if attr == 'RENDER_STYLE':
            value = {**self.defaults[attr], **value}
        self._cached_attrs.add(attr)
        setattr(self, attr, value)
        return value

    def reload(self):
        for attr in self._cached_attrs:
            delattr(self, attr)
        self._cached_attrs.clear()
        self._user_settings = None


fibword_settings = FibwordSettings(DEFAULTS)


def reload_fibword_settings(*args, **kwargs):
    if kwargs.get('setting') == 'FIBWORD':
        fibword_settings.reload()


setting_changed.connect(reload_fibword_settings)
