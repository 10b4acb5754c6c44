#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .model import ConfigError
from .annotation import BuiltinAnnotator, SpacyAnnotator, HttpAnnotator, StaticAnnotator
from .nli import MockNli, HttpNli, TransformersNli
from .embedding import HashingEmbedding, StaticEmbedding, HttpEmbedding
from .generation import MockGenerator, HttpGenerator
from .langtool import LanguageToolChecker
from .cache import MemoryCache, SQLiteCache

annotators = {
'builtin': BuiltinAnnotator,
'spacy': SpacyAnnotator,
'http': HttpAnnotator,
'static': StaticAnnotator
}

nli = {
'mock': MockNli,
'http': HttpNli,
'transformers': TransformersNli
}

embeddings = {
'hashing': HashingEmbedding,
'mock': HashingEmbedding,
'static': StaticEmbedding,
'http': HttpEmbedding
}

generators = {
'mock': MockGenerator,
'http': HttpGenerator
}

checkers = {
'languagetool': LanguageToolChecker
}

def create(registry, kind, config):
    '''Instantiates the provider named by config['type'].'''
    config = dict(config or {})
    name = config.get('type')
    try:
        cls = registry[name]
    except KeyError:
        raise ConfigError('unrecognized %s provider: %r' % (kind, name))
    return cls(config)

def create_cache(filename=None, maxlen=4096):
    if filename:
        return SQLiteCache(filename, maxlen)
    return MemoryCache(maxlen)
