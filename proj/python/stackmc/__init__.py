"""Stacked Monte Carlo estimators and experiment harness."""

import json
import os
import sys

_ext_dir = os.environ.get("STACKMC_EXTENSION_DIR")
if _ext_dir:
    sys.path.insert(0, _ext_dir)
    try:
        import _stackmc
    finally:
        sys.path.remove(_ext_dir)
else:
    from . import _stackmc

ConfigError = _stackmc.ConfigError
estimate = _stackmc.estimate
paired_stderr = _stackmc.paired_stderr
preset_names = _stackmc.preset_names
preset_description = _stackmc.preset_description
to_csv = _stackmc.to_csv


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def preset(name):
    """Preset configuration as a dict."""
    return json.loads(_stackmc.preset_config(name))


def normalize_config(config):
    """Validated configuration with every default filled in."""
    return json.loads(_stackmc.normalize_config(_text(config)))


def estimator_names(config):
    return _stackmc.estimator_names(_text(config))


def reference_mean(config):
    return _stackmc.reference_mean(_text(config))


def run(config, threads=0):
    """Runs an experiment; returns rows with keys n, estimator, mse, stderr, trials."""
    return _stackmc.run_experiment(_text(config), threads)


def distribution(kind, **params):
    """Distribution spec for estimate(), e.g. distribution("uniform_box", lo=0, hi=1, dim=1)."""
    return json.dumps({"kind": kind, **params})


__all__ = [
    "ConfigError", "distribution", "estimate", "estimator_names", "normalize_config", "paired_stderr",
    "preset", "preset_description", "preset_names", "reference_mean", "run", "to_csv",
]
