#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Spider diagrams of model fingerprints. Every axis maps its raw feature onto
[0, 1] with outward meaning better, so profiles compare by overall shape.
'''

import math
import logging
import functools

from .model import SpiderConfig, InvalidAxes, EmptyInput
from .fingerprint import FEATURES
from .utils import render_template

logger = logging.getLogger('spider')

DEFAULT_AXES = ('COR', 'COV', 'SIM', 'LNG', 'FBR', 'COH', 'LEN', 'ENT', 'ASL')
AXIS_ALIASES = {'FBR': 'FBR_norm'}
DEFAULT_DASHES = ('', '6,3', '2,3', '8,3,2,3', '12,4', '1,2')
DEFAULT_COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b')
RINGS = (0.25, 0.5, 0.75, 1.0)

def clamp(x):
    return min(max(float(x), 0.0), 1.0)

def percent(x):
    return clamp(x / 100)

def identity(x):
    return clamp(x)

def length(x):
    return clamp(min(x, 2) / 2)

def sentence_length(x):
    # shorter sentences plot outward
    return clamp(1 - min(x, 40) / 40)

def inverse_percent(x):
    return clamp(1 - x / 100)

def word_count(x):
    return clamp(min(x, 500) / 500)

def linear(lo, hi, x):
    return clamp((x - lo) / (hi - lo))

NORMALIZERS = {
    'COR': percent,
    'COV': percent,
    'SIM': identity,
    'LNG': identity,
    'FBR_norm': identity,
    'COH': identity,
    'ENT': identity,
    'SIM_Rw': identity,
    'SIM_Rsc': identity,
    'LNG_Rw': identity,
    'LNG_Rsc': identity,
    'LEN': length,
    'ASL': sentence_length,
    'word_count': word_count,
}
# higher component scores mean harder text
for _f in ('FBR_raw', 'S1', 'S2', 'S3', 'S4', 'W1', 'W2', 'K_S', 'K_W'):
    NORMALIZERS[_f] = inverse_percent

def feature_of(axis):
    return AXIS_ALIASES.get(axis, axis)

def spider_config(axes=None, series_labels=None, dashes=None, colors=None,
                  size=480, ranges=None):
    '''
    Builds a validated SpiderConfig. `ranges` maps an axis to (lo, hi) for a
    linear normalizer; lo > hi inverts the axis.
    '''
    axes = tuple(axes or DEFAULT_AXES)
    if len(axes) < 3:
        raise InvalidAxes('a spider diagram needs at least 3 axes, got %d' % len(axes))
    if len(set(axes)) != len(axes):
        raise InvalidAxes('duplicated axes: %s' % ', '.join(axes))
    unknown = [a for a in axes if feature_of(a) not in FEATURES]
    if unknown:
        raise InvalidAxes('unknown axes: %s' % ', '.join(unknown))
    normalizers = {}
    for a in axes:
        if ranges and a in ranges:
            lo, hi = map(float, ranges[a])
            if lo == hi:
                raise InvalidAxes('empty range for axis %s' % a)
            normalizers[a] = functools.partial(linear, lo, hi)
        else:
            normalizers[a] = NORMALIZERS[feature_of(a)]
    return SpiderConfig(axes, normalizers, tuple(series_labels or ()),
                        tuple(dashes or DEFAULT_DASHES), tuple(colors or DEFAULT_COLORS),
                        int(size))

def _point(cx, cy, r, angle):
    return (cx + r * math.cos(angle), cy + r * math.sin(angle))

def _points(pts):
    return ' '.join('%.2f,%.2f' % p for p in pts)

def _anchor(x, cx):
    if abs(x - cx) < 1:
        return 'middle'
    return 'start' if x > cx else 'end'

def _series_label(cfg, n, mf):
    if n < len(cfg.series_labels):
        return cfg.series_labels[n]
    return str(mf.label) if mf.label is not None else 'series %d' % (n + 1)

def spider_context(series, cfg):
    cx = cy = cfg.size / 2
    radius = cfg.size * 0.34
    n = len(cfg.axes)
    angles = [math.radians(-90 + 360 * k / n) for k in range(n)]
    axes = []
    for axis, angle in zip(cfg.axes, angles):
        x2, y2 = _point(cx, cy, radius, angle)
        lx, ly = _point(cx, cy, radius + 18, angle)
        axes.append({
            'name': axis, 'x2': '%.2f' % x2, 'y2': '%.2f' % y2,
            'lx': '%.2f' % lx, 'ly': '%.2f' % (ly + 4), 'anchor': _anchor(lx, cx),
        })
    rings = [_points(_point(cx, cy, radius * r, a) for a in angles) for r in RINGS]
    polygons = []
    for k, mf in enumerate(series):
        values = [cfg.normalizers[a](mf.mean[feature_of(a)]) for a in cfg.axes]
        polygons.append({
            'label': _series_label(cfg, k, mf),
            'n': mf.n,
            'points': _points(_point(cx, cy, radius * v, a) for v, a in zip(values, angles)),
            'values': ' '.join('%s=%.3f' % av for av in zip(cfg.axes, values)),
            'dash': cfg.dashes[k % len(cfg.dashes)],
            'color': cfg.colors[k % len(cfg.colors)],
            'ly': '%.2f' % (cfg.size + 20 * k + 4),
            'ty': '%.2f' % (cfg.size + 20 * k + 8),
        })
    return {
        'width': cfg.size,
        'height': cfg.size + 20 * len(polygons) + 10,
        'cx': '%.2f' % cx, 'cy': '%.2f' % cy,
        'axes': axes, 'rings': rings, 'series': polygons,
        'legend_x': '%.2f' % (cfg.size * 0.1),
        'legend_x2': '%.2f' % (cfg.size * 0.1 + 30),
        'legend_tx': '%.2f' % (cfg.size * 0.1 + 38),
    }

def render_spider(series, cfg=None, header=''):
    '''
    Renders one overlay diagram, one polygon per ModelFingerprint, as an SVG
    string. Output depends only on the arguments.
    '''
    cfg = cfg or spider_config()
    series = list(series)
    if not series:
        raise EmptyInput('no series to plot')
    if len(cfg.axes) < 3:
        raise InvalidAxes('a spider diagram needs at least 3 axes')
    kvars = spider_context(series, cfg)
    kvars['header'] = header.replace('--', '- -')
    return render_template('spider.svg', **kvars)
