#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import re
import json
import hashlib
import functools
import collections

from .model import __version__, TOOLKIT

import jinja2

re_ws = re.compile(r'\s+')

normalize_ws = lambda s: re_ws.sub(' ', s).strip()
sha1hex = lambda s: hashlib.sha1(s.encode('utf-8')).hexdigest()

class AttrDict(dict):
    def __init__(self, *args, **kwargs):
        super(AttrDict, self).__init__(*args, **kwargs)
        self.__dict__ = self

def wrap_attrdict(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            obj[k] = wrap_attrdict(v)
        return AttrDict(obj)
    elif isinstance(obj, list):
        for k, v in enumerate(obj):
            obj[k] = wrap_attrdict(v)
        return obj
    else:
        return obj

class LRUCache(collections.UserDict):
    def __init__(self, maxlen):
        self.capacity = maxlen
        self.data = collections.OrderedDict()

    def __getitem__(self, key):
        value = self.data.pop(key)
        self.data[key] = value
        return value

    def get(self, key, default=None):
        try:
            value = self.data.pop(key)
            self.data[key] = value
            return value
        except KeyError:
            return default

    def __setitem__(self, key, value):
        try:
            self.data.pop(key)
        except KeyError:
            if len(self.data) >= self.capacity:
                self.data.popitem(last=False)
        self.data[key] = value

def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(',', ':'))

def artifact_header(config_hash, seed):
    return collections.OrderedDict((
        ('toolkit', TOOLKIT),
        ('version', __version__),
        ('config_hash', config_hash),
        ('seed', seed),
    ))

def header_comment(header):
    return ' '.join('%s=%s' % kv for kv in header.items())

def read_jsonl(filename):
    '''Yields records, skipping the artifact header line.'''
    with open(filename, 'r', encoding='utf-8') as f:
        for ln in f:
            ln = ln.strip()
            if not ln:
                continue
            obj = json.loads(ln)
            if 'header' in obj and len(obj) == 1:
                continue
            yield obj

def write_jsonl(filename, records, header=None, mode='w'):
    with open(filename, mode, encoding='utf-8') as f:
        if header is not None:
            f.write(json.dumps({'header': header}, ensure_ascii=False) + '\n')
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + '\n')

def jsonable(obj):
    '''Converts nested namedtuples into plain JSON-friendly structures.'''
    if hasattr(obj, '_asdict'):
        return collections.OrderedDict(
            (k, jsonable(v)) for k, v in obj._asdict().items())
    elif isinstance(obj, dict):
        return collections.OrderedDict((k, jsonable(v)) for k, v in obj.items())
    elif isinstance(obj, (list, tuple, frozenset, set)):
        if isinstance(obj, (frozenset, set)):
            obj = sorted(obj)
        return [jsonable(v) for v in obj]
    elif hasattr(obj, 'item'):
        # numpy scalars
        return obj.item()
    return obj

TEMPLATES = os.path.join(os.path.dirname(__file__), 'templates')

@functools.lru_cache(maxsize=None)
def template_env():
    env = jinja2.Environment(
        loader=jinja2.FileSystemLoader(TEMPLATES),
        autoescape=jinja2.select_autoescape(('svg', 'xml', 'html')),
        keep_trailing_newline=True, undefined=jinja2.StrictUndefined)
    env.filters['pm'] = lambda m, s: '%.1f ± %.1f' % (m, s)
    return env

def render_template(name, **kvars):
    return template_env().get_template(name).render(**kvars)
