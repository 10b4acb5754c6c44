#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import re
import logging

from .model import EmbeddingProvider, ProviderFailure, DimensionMismatch
from .remote import JsonEndpoint
from .utils import sha1hex

import numpy as np

logger = logging.getLogger('embed')

re_word = re.compile(r'\w+')

def embed(provider, texts, cache=None):
    '''Embeds texts, cached per (model_id, text hash). Returns a 2-d array.'''
    vectors = [None] * len(texts)
    todo = []
    for n, t in enumerate(texts):
        hit = cache.get('embedding', '%s|%s' % (provider.model_id, sha1hex(t))) \
            if cache is not None else None
        if hit is None:
            todo.append(n)
        else:
            vectors[n] = hit
    if todo:
        fresh = provider.embed([texts[n] for n in todo])
        if len(fresh) != len(todo):
            raise ProviderFailure('%s returned %d vectors for %d texts' % (
                provider.provider_id, len(fresh), len(todo)))
        for n, v in zip(todo, fresh):
            v = [float(x) for x in v]
            vectors[n] = v
            if cache is not None:
                cache.set('embedding', '%s|%s' % (provider.model_id, sha1hex(texts[n])), v)
    dims = set(len(v) for v in vectors)
    if len(dims) > 1:
        raise DimensionMismatch('%s returned vectors of sizes %s' % (
            provider.provider_id, sorted(dims)))
    return np.array(vectors, dtype=float).reshape(len(texts), -1)


class HashingEmbedding(EmbeddingProvider):
    '''
    Deterministic bag-of-words vectors: every lower-cased word is hashed
    into one of `dimension` buckets. A constant bias component keeps every
    vector non-zero, so unrelated texts stay comparable.
    '''
    default_concurrency = 16

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', 'hashing')
        self.dimension = int(self.dimension or 256)
        self.bias = float(self.config.get('bias', 0.1))

    def vector(self, text):
        v = np.zeros(self.dimension)
        v[0] = self.bias
        for w in re_word.findall(text.lower()):
            h = int(sha1hex(w)[:8], 16)
            v[1 + h % (self.dimension - 1)] += 1.0
        return v

    def embed(self, texts):
        return [self.vector(t).tolist() for t in texts]


class StaticEmbedding(EmbeddingProvider):
    '''Fixed vectors from `vectors` (text -> list), falling back to hashing.'''

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', 'static')
        self.vectors = self.config.get('vectors') or {}
        self.fallback = HashingEmbedding({'dimension': self.dimension or len(
            next(iter(self.vectors.values()), ())) or 256})

    def embed(self, texts):
        return [list(self.vectors[t]) if t in self.vectors else self.fallback.vector(t).tolist()
                for t in texts]


class HttpEmbedding(EmbeddingProvider):
    '''POSTs {model, texts}, receives {embeddings: [[float, ...], ...]}.'''

    def __init__(self, config=None):
        super().__init__(config)
        self.endpoint = JsonEndpoint(
            self.config.get('url'), self.config.get('timeout', 60),
            self.config.get('attempts', 3), api_key=self.config.get('api_key'))

    def embed(self, texts):
        with self.guard:
            ret = self.endpoint.post({'model': self.model_id, 'texts': list(texts)})
        try:
            vectors = ret['embeddings']
        except (KeyError, TypeError):
            raise ProviderFailure('malformed embedding response: %.200r' % ret)
        if self.dimension and any(len(v) != self.dimension for v in vectors):
            raise DimensionMismatch('%s: expected dimension %d' % (self.endpoint.url, self.dimension))
        return vectors

    def close(self):
        self.endpoint.close()
