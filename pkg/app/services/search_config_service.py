"""
Resolution and validation of the search configuration used by the classifier.
An explicit dict wins, then the active Flask app's config, then Config defaults.
"""

from flask import current_app, has_app_context

from config import Config

SEARCH_KEYS = {
    'brute_max': 'BRUTE_MAX',
    'brute_max_limit': 'BRUTE_MAX_LIMIT',
    'brute_prefilter': 'BRUTE_PREFILTER',
    'workers': 'WORKERS',
    'isomorphism_budget': 'ISOMORPHISM_BUDGET',
    'derive_max': 'DERIVE_MAX',
}


def get_search_config(overrides=None):
    """
    Get the search configuration as a lowercase-keyed dict.
    Keys missing from overrides fall back to the app config or Config.
    """
    if has_app_context():
        source = current_app.config
        config = {key: source.get(setting, getattr(Config, setting)) for key, setting in SEARCH_KEYS.items()}
    else:
        config = {key: getattr(Config, setting) for key, setting in SEARCH_KEYS.items()}

    for key, value in (overrides or {}).items():
        if key not in SEARCH_KEYS:
            raise KeyError(f"Unknown search setting: {key}")
        if value is not None:
            config[key] = value
    return config


def get_available_prefilters():
    """Get list of available brute-force prefilters."""
    return [
        ('star', 'Star equations before group closure'),
        ('none', 'Group closure only'),
    ]


def validate_search_config(config):
    """
    Validate a search configuration dictionary.
    Returns (is_valid, error_message).
    """
    if not isinstance(config, dict):
        return False, "Configuration must be a dictionary"

    if config.get('brute_prefilter') not in [name for name, _ in get_available_prefilters()]:
        return False, f"Unknown prefilter: {config.get('brute_prefilter')}"

    integer_validations = [
        ('brute_max', 0, config.get('brute_max_limit', 14)),
        ('brute_max_limit', 2, 16),
        ('workers', 1, 256),
        ('isomorphism_budget', 0, 1000),
        ('derive_max', 0, 1000),
    ]

    for field, min_val, max_val in integer_validations:
        value = config.get(field)
        if not isinstance(value, int) or isinstance(value, bool) or not (min_val <= value <= max_val):
            return False, f"{field} must be an integer between {min_val} and {max_val}"

    return True, None
