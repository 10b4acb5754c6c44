#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
German readability index from sentence and word complexity. Six linear
component scores map raw text statistics onto anchor ranges: a value at the
lower anchor scores 0 and one at the upper anchor 100. Scores are not
clamped, the sigmoid normalization absorbs values outside [0, 100].
'''

import math
import collections

from .model import FbrInputs, FbrComponentSpec, FbrResult, ReadabilityConfig, EmptyDocument
from .text import word_tokens

COMPONENTS = collections.OrderedDict((
    ('S1', FbrComponentSpec('S1', 12.37, 12.37, 24.12)),
    ('S2', FbrComponentSpec('S2', 41.77, 41.77, 67.42)),
    ('S3', FbrComponentSpec('S3', 22.10, 22.10, 52.59)),
    ('S4', FbrComponentSpec('S4', 21.90, 21.90, 64.67)),
    ('W1', FbrComponentSpec('W1', 1.936, 1.936, 2.339)),
    ('W2', FbrComponentSpec('W2', 10.75, 10.75, 21.21)),
))

SENTENCE_COMPONENTS = ('S1', 'S2', 'S3', 'S4')
WORD_COMPONENTS = ('W1', 'W2')

def fbr_inputs(doc):
    words_per_sentence = []
    syllables_per_sentence = []
    syllables = []
    for s in doc.sentences:
        words = word_tokens(s)
        if not words:
            continue
        words_per_sentence.append(len(words))
        syllables_per_sentence.append(sum(t.syllable_count for t in words))
        syllables.extend(t.syllable_count for t in words)
    if not syllables:
        raise EmptyDocument('%s: no word tokens' % doc.raw.source_id)
    n_sent = len(words_per_sentence)
    pct = lambda n, total: 100.0 * n / total
    return FbrInputs(
        x_S1=sum(syllables_per_sentence) / n_sent,
        x_S2=pct(sum(1 for n in words_per_sentence if n > 6), n_sent),
        x_S3=pct(sum(1 for n in words_per_sentence if n > 16), n_sent),
        x_S4=pct(sum(1 for n in words_per_sentence if n > 20), n_sent),
        x_W1=sum(syllables) / len(syllables),
        x_W2=pct(sum(1 for n in syllables if n > 3), len(syllables)),
    )

def component_score(spec, x):
    return (x - spec.lower_anchor) * 100 / (spec.upper_anchor - spec.lower_anchor)

def fbr_raw(inputs):
    components = collections.OrderedDict(
        (name, component_score(spec, getattr(inputs, 'x_' + name)))
        for name, spec in COMPONENTS.items())
    K_S = sum(components[n] for n in SENTENCE_COMPONENTS) / len(SENTENCE_COMPONENTS)
    K_W = sum(components[n] for n in WORD_COMPONENTS) / len(WORD_COMPONENTS)
    return FbrResult((K_S + K_W) / 2, K_S, K_W, components)

def fbr_normalized(raw, cfg=ReadabilityConfig()):
    '''sigmoid(k * (x0 - raw)): 0.5 at x0, higher is easier.'''
    z = cfg.k * (cfg.x0 - raw)
    # numerically stable on both tails
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)

def validate_config(cfg):
    if not cfg.k > 0:
        raise ValueError('readability.k must be > 0, got %r' % cfg.k)
    return cfg
