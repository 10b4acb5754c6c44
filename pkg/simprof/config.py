#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import copy
import json
import logging
import importlib.util

from .model import ConfigError
from .utils import canonical_json, sha1hex, wrap_attrdict

logger = logging.getLogger('config')

ENV_PREFIX = 'SIMPROF_'

DEFAULTS = {
    # the classical --verbose switch
    'debug': False,
    'seed': 0,
    # worker threads for per-document work
    'jobs': 4,
    'out_dir': 'out',
    'language': 'de',
    # SQLite file for provider results, None keeps them in memory only
    'cache': None,
    'cache_size': 4096,
    # JSONL {id, title, text}
    'corpus': None,
    'providers': {
        'annotation': {'type': 'builtin'},
        'nli': {'type': 'mock'},
        'embedding': {'type': 'hashing', 'dimension': 256},
        # e.g. {'type': 'languagetool', 'url': 'http://localhost:8081'}
        'checker': None,
        # one provider per model size
        'generation': {
            '1B': {'type': 'mock', 'model_id': 'mock-1B', 'split': True, 'drop': 0.4},
            '4B': {'type': 'mock', 'model_id': 'mock-4B', 'split': True, 'drop': 0.15},
            '12B': {'type': 'mock', 'model_id': 'mock-12B', 'split': False, 'drop': 0.0},
        },
    },
    'readability': {'k': 0.1, 'x0': 50.0},
    'rules': {
        # rule id -> parameter overrides
        'params': {},
        'disabled': [],
        # additional declarative rule sets (JSON)
        'files': [],
        # raise on rules whose annotation layer is missing instead of skipping
        'strict': False,
    },
    'sampler': {
        'window': 5,
        'budget': 1000,
        # rule id -> minimum count, None for the defaults below
        'quotas': None,
        'quota_min': 30,
        'quota_share': 0.03,
        'categories': ['simplicity'],
    },
    'generation': {
        # directory with <strategy>.j2, None for the shipped templates
        'templates': None,
        'fewshot': None,
        # subset of configurations as [{strategy, size, few_shot}], None for all 18
        'labels': None,
    },
    'validation': {
        'tasks': None,
        'reg_strength': 1.0,
        'folds': 5,
        'repeats': 5,
        'trials': 1000,
    },
    'spider': {
        'axes': None,
        'series_labels': None,
        'dashes': None,
        'colors': None,
        'size': 480,
        # axis -> [lo, hi] linear normalizer
        'ranges': None,
    },
}

def merge(base, override):
    '''Recursive dict merge; `override` wins on leaves.'''
    result = copy.deepcopy(base)
    for k, v in (override or {}).items():
        if isinstance(v, dict) and isinstance(result.get(k), dict):
            result[k] = merge(result[k], v)
        else:
            result[k] = copy.deepcopy(v)
    return result

def load_file(filename):
    '''A Python module defining `config = {...}`, or a JSON document.'''
    if not os.path.isfile(filename):
        raise ConfigError('config file not found: %s' % filename)
    if filename.endswith('.json'):
        with open(filename, 'r', encoding='utf-8') as f:
            try:
                return json.load(f)
            except ValueError as ex:
                raise ConfigError('%s: %s' % (filename, ex))
    spec = importlib.util.spec_from_file_location('simprof_user_config', filename)
    module = importlib.util.module_from_spec(spec)
    try:
        spec.loader.exec_module(module)
    except Exception as ex:
        raise ConfigError('%s: %s' % (filename, ex))
    if not isinstance(getattr(module, 'config', None), dict):
        raise ConfigError('%s defines no `config` dict' % filename)
    return module.config

def _parse_env(value):
    try:
        return json.loads(value)
    except ValueError:
        return value

def env_overrides(environ=None):
    '''SIMPROF_PROVIDERS__NLI__URL=... -> {'providers': {'nli': {'url': ...}}}'''
    environ = os.environ if environ is None else environ
    result = {}
    for key in sorted(environ):
        if not key.startswith(ENV_PREFIX):
            continue
        path = [p.lower() for p in key[len(ENV_PREFIX):].split('__') if p]
        if not path:
            continue
        d = result
        for p in path[:-1]:
            d = d.setdefault(p, {})
            if not isinstance(d, dict):
                raise ConfigError('conflicting environment override %s' % key)
        d[path[-1]] = _parse_env(environ[key])
    return result

def _fix_case(config, overrides):
    # env names are upper-cased; match keys such as '12B' case-insensitively
    fixed = {}
    for k, v in overrides.items():
        if isinstance(config, dict):
            k = next((ck for ck in config if str(ck).lower() == k), k)
            sub = config.get(k)
        else:
            sub = None
        fixed[k] = _fix_case(sub, v) if isinstance(v, dict) else v
    return fixed

def strip_secrets(obj):
    if isinstance(obj, dict):
        return {k: strip_secrets(v) for k, v in obj.items() if k != 'api_key'}
    elif isinstance(obj, list):
        return [strip_secrets(v) for v in obj]
    return obj

def config_hash(config):
    return sha1hex(canonical_json(strip_secrets(config)))

def load_config(filename=None, overrides=None, environ=None):
    '''
    Defaults, then the config file, then SIMPROF_* variables, then
    command line `overrides`. Returns the merged, attribute-wrapped dict.
    '''
    config = copy.deepcopy(DEFAULTS)
    if filename:
        config = merge(config, load_file(filename))
    config = merge(config, _fix_case(config, env_overrides(environ)))
    config = merge(config, overrides)
    validate(config)
    return wrap_attrdict(config)

def validate(config):
    readability = config.get('readability') or {}
    if not float(readability.get('k', 0)) > 0:
        raise ConfigError('readability.k must be > 0')
    axes = (config.get('spider') or {}).get('axes')
    if axes is not None and len(axes) < 3:
        raise ConfigError('spider.axes needs at least 3 axes')
    if int(config.get('jobs', 1)) < 1:
        raise ConfigError('jobs must be >= 1')
    return config
