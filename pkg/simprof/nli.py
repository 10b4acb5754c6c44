#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import re
import math
import logging

from . import lexicon
from .model import NliProvider, NliJudgment, ProviderFailure
from .remote import JsonEndpoint
from .utils import sha1hex

logger = logging.getLogger('nli')

re_word = re.compile(r'\w+')

def make_judgment(entailment, neutral, contradiction):
    '''Validates three-way probabilities and renormalizes them to sum 1.'''
    probs = (float(entailment), float(neutral), float(contradiction))
    if any(not math.isfinite(p) or p < 0 for p in probs):
        raise ProviderFailure('invalid NLI probabilities %r' % (probs,))
    total = sum(probs)
    if total <= 0:
        raise ProviderFailure('NLI probabilities sum to zero')
    if abs(total - 1) > 1e-6:
        probs = tuple(p / total for p in probs)
    return NliJudgment(*probs)

def normalize_labels(scores):
    '''{label: score} with model-specific label names -> NliJudgment.'''
    ren = {}
    for k, v in scores.items():
        k = k.lower()
        if 'entail' in k:
            ren['entailment'] = v
        elif 'contrad' in k:
            ren['contradiction'] = v
        elif 'neutral' in k:
            ren['neutral'] = v
    return make_judgment(ren.get('entailment', 0.0), ren.get('neutral', 0.0),
                         ren.get('contradiction', 0.0))

def judge(nli, pairs, cache=None):
    '''
    Judges (premise, hypothesis) pairs in batches of nli.max_batch, with
    results cached per (model_id, premise hash, hypothesis hash).
    '''
    result = [None] * len(pairs)
    todo = []
    keys = []
    for n, (p, h) in enumerate(pairs):
        key = '%s|%s|%s' % (nli.model_id, sha1hex(p), sha1hex(h))
        keys.append(key)
        hit = cache.get('nli', key) if cache is not None else None
        if hit is None:
            todo.append(n)
        else:
            result[n] = NliJudgment(*hit)
    for start in range(0, len(todo), nli.max_batch):
        batch = todo[start:start + nli.max_batch]
        judgments = nli.judge([pairs[n] for n in batch])
        if len(judgments) != len(batch):
            raise ProviderFailure('%s returned %d judgments for %d pairs' % (
                nli.provider_id, len(judgments), len(batch)))
        for n, j in zip(batch, judgments):
            result[n] = j
            if cache is not None:
                cache.set('nli', keys[n], list(j))
    return result


class MockNli(NliProvider):
    '''
    Deterministic stand-in. Judgments come from, in order: `premises`
    (premise text -> {entailment, neutral, contradiction}), `fixed`, or a
    lexical-overlap heuristic where a negation mismatch reads as contradiction.
    '''
    default_concurrency = 16

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', 'mock-nli')
        self.premises = self.config.get('premises') or {}
        self.fixed = self.config.get('fixed')

    def _overlap(self, premise, hypothesis):
        pw = set(w.lower() for w in re_word.findall(premise))
        hw = set(w.lower() for w in re_word.findall(hypothesis))
        if not pw:
            return NliJudgment(0.05, 0.9, 0.05)
        o = len(pw & hw) / len(pw)
        if bool(pw & lexicon.negations) != bool(hw & lexicon.negations):
            c = 0.1 + 0.7 * o
            return NliJudgment(0.05, 1 - 0.05 - c, c)
        e = 0.05 + 0.85 * o
        return NliJudgment(e, 1 - e - 0.05, 0.05)

    def judge(self, pairs):
        result = []
        for p, h in pairs:
            probs = self.premises.get(p) or self.fixed
            if probs:
                result.append(normalize_labels(probs))
            else:
                result.append(self._overlap(p, h))
        return result


class HttpNli(NliProvider):
    '''POSTs {model, pairs: [{premise, hypothesis}]}, receives {results: [...]}.'''

    def __init__(self, config=None):
        super().__init__(config)
        self.endpoint = JsonEndpoint(
            self.config.get('url'), self.config.get('timeout', 120),
            self.config.get('attempts', 3), api_key=self.config.get('api_key'))

    def judge(self, pairs):
        with self.guard:
            ret = self.endpoint.post({
                'model': self.model_id,
                'pairs': [{'premise': p, 'hypothesis': h} for p, h in pairs]})
        try:
            return [normalize_labels(r) for r in ret['results']]
        except (KeyError, TypeError, AttributeError):
            raise ProviderFailure('malformed NLI response: %.200r' % ret)

    def close(self):
        self.endpoint.close()


class TransformersNli(NliProvider):
    '''Cross-encoder NLI through a transformers text-classification pipeline.'''

    def __init__(self, config=None):
        super().__init__(config)
        try:
            from transformers import pipeline
        except ImportError as ex:
            raise ProviderFailure('transformers is not installed: %s' % ex)
        self.pipe = pipeline('text-classification', model=self.model_id,
                             tokenizer=self.model_id, top_k=None,
                             device=self.config.get('device', -1))

    def judge(self, pairs):
        with self.guard:
            out = self.pipe([{'text': p, 'text_pair': h} for p, h in pairs],
                            truncation=True)
        return [normalize_labels({s['label']: s['score'] for s in scores}) for scores in out]
