"""Python front end to the C++ simulation core.

Scenario overrides are plain dicts with the same keys as the CLI JSON files.
Tables come back as dicts of numpy arrays keyed by column name.
"""

import json

import numpy as np

from . import _cfda
from ._cfda import InfeasibleGeometry, count_notches

__all__ = [
    "InfeasibleGeometry",
    "amplitude_coefficient",
    "capon_map",
    "clutter_spectrum",
    "config",
    "count_notches",
    "gain_sweep",
    "mf_profile",
    "sdr_loss",
    "sinr_sweep",
]


def _text(overrides):
    return json.dumps(overrides) if overrides else ""


def _columns(table):
    names, rows = table
    out = {}
    for i, name in enumerate(names):
        cells = [row[i] for row in rows]
        try:
            out[name] = np.array([float(c) for c in cells])
        except ValueError:
            out[name] = np.array(cells)
    return out


def config(overrides=None, fig_scale=False):
    return json.loads(_cfda.config_json(_text(overrides), fig_scale))


def amplitude_coefficient(delta_f, overrides=None, fig_scale=False, method="spectral"):
    value, _ = _cfda.amplitude_coefficient(_text(overrides), fig_scale, delta_f, method)
    return value


def mf_profile(arch, delta_f=None, overrides=None, fig_scale=False):
    table, peak, peak_range = _cfda.mf_profile(_text(overrides), fig_scale, arch, delta_f)
    return _columns(table), peak, peak_range


def gain_sweep(offsets, trials=200, seed=None, lags=20, overrides=None, fig_scale=False):
    return _columns(_cfda.gain_sweep(_text(overrides), fig_scale, list(offsets), trials, seed, lags))


def sinr_sweep(archs, offsets=(), delta_r=(), overrides=None, fig_scale=False):
    return _columns(_cfda.sinr_sweep(_text(overrides), fig_scale, list(archs), list(offsets), list(delta_r)))


def capon_map(arch, delta_f=None, ranges=(), azimuths=(), overrides=None, fig_scale=False):
    r, a, p = _cfda.capon_map(_text(overrides), fig_scale, arch, delta_f, list(ranges), list(azimuths))
    return np.asarray(r), np.asarray(a), p


def clutter_spectrum(arch, delta_f=None, overrides=None, fig_scale=False):
    return _columns(_cfda.clutter_spectrum(_text(overrides), fig_scale, arch, delta_f))


def sdr_loss(arch, delta_f=None, method="strap", srdc=False, bins=200, overrides=None, fig_scale=False):
    doppler, loss, normalized = _cfda.sdr_loss(_text(overrides), fig_scale, arch, delta_f, method, srdc, bins)
    return np.asarray(doppler), np.asarray(loss), np.asarray(normalized)
