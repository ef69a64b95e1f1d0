"""
Settings access for library code.

The math apps are importable without a configured Django project (handy in
a shell or notebook); in that case every lookup falls back to the default.
"""
from django.conf import settings

DEFAULTS = {
    'BREADTHLAB_JOBS': 1,
    'BREADTHLAB_COSET_BUDGET': 3 ** 10,
    'BREADTHLAB_SAMPLE_SIZE': 10_000,
    'BREADTHLAB_SEED': 0,
    'BREADTHLAB_SEARCH_BUDGET': 2_000_000,
    'BREADTHLAB_WITNESS_LIMIT': 20,
}


def lab_setting(name: str, default=None):
    if default is None:
        default = DEFAULTS.get(name)
    if not settings.configured:
        return default
    return getattr(settings, name, default)
