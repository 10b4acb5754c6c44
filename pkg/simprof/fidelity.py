#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Content correctness (COR), content coverage (COV) and coherence (COH).

Each source sentence is a premise and the whole simplification is the
hypothesis. COR averages the absence of contradiction, COV averages
entailment weighted by embedding similarity.
'''

import logging

from . import nli as nli_mod
from . import embedding as embedding_mod
from .model import (
    FidelityEntry, FidelityEvidence, ZeroVector, DimensionMismatch,
    EmptySimplification, EmptySource
)
from .utils import normalize_ws

import numpy as np

logger = logging.getLogger('fidelity')

def cosine_similarity(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch('vectors of shape %s and %s' % (a.shape, b.shape))
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ZeroVector('cosine similarity of a zero vector')
    return float(np.clip(np.dot(a, b) / (na * nb), -1.0, 1.0))

def _check(source, simplification):
    if source is None or not source.sentences:
        raise EmptySource('source has no sentences')
    if simplification is None or not simplification.sentences \
            or not simplification.raw.content.strip():
        raise EmptySimplification('%s: empty simplification' % source.raw.source_id)

def hypothesis(source, simplification, max_length=None):
    '''
    The simplification text, cut at a sentence boundary so that the longest
    premise plus the hypothesis fit into max_length characters. At least the
    first sentence is kept. Returns (text, sentences used, truncated).
    '''
    sentences = [normalize_ws(s.text) for s in simplification.sentences]
    if not max_length:
        return ' '.join(sentences), len(sentences), False
    budget = max_length - max(len(s.text) for s in source.sentences)
    used = 1
    length = len(sentences[0])
    while used < len(sentences) and length + 1 + len(sentences[used]) <= budget:
        length += 1 + len(sentences[used])
        used += 1
    return ' '.join(sentences[:used]), used, used < len(sentences)

def _judgments(source, simplification, nli, cache):
    hyp, used, truncated = hypothesis(source, simplification, nli.max_length)
    if truncated:
        logger.warning('%s: hypothesis truncated to %d of %d sentences',
                       source.raw.source_id, used, len(simplification.sentences))
    pairs = [(normalize_ws(s.text), hyp) for s in source.sentences]
    return nli_mod.judge(nli, pairs, cache), used, truncated

def _similarities(source, simplification, embed, cache):
    texts = [normalize_ws(s.text) for s in source.sentences]
    texts.append(' '.join(normalize_ws(s.text) for s in simplification.sentences))
    vectors = embedding_mod.embed(embed, texts, cache)
    hyp = vectors[-1]
    return [max(0.0, cosine_similarity(v, hyp)) for v in vectors[:-1]]

def content_fidelity(source, simplification, nli, embed, cache=None):
    '''Returns (COR, COV, FidelityEvidence) from one pass over the providers.'''
    _check(source, simplification)
    judgments, used, truncated = _judgments(source, simplification, nli, cache)
    sims = _similarities(source, simplification, embed, cache)
    entries = tuple(FidelityEntry(i, j, sim, j.p_entailment * sim)
                    for i, (j, sim) in enumerate(zip(judgments, sims)))
    cor = 100.0 * sum(1 - e.judgment.p_contradiction for e in entries) / len(entries)
    cov = 100.0 * sum(e.cov_term for e in entries) / len(entries)
    return cor, cov, FidelityEvidence(entries, used, truncated)

def content_correctness(source, simplification, nli, cache=None):
    _check(source, simplification)
    judgments, used, truncated = _judgments(source, simplification, nli, cache)
    entries = tuple(FidelityEntry(i, j, None, None) for i, j in enumerate(judgments))
    score = 100.0 * sum(1 - j.p_contradiction for j in judgments) / len(judgments)
    return score, FidelityEvidence(entries, used, truncated)

def content_coverage(source, simplification, nli, embed, cache=None):
    _, cov, evidence = content_fidelity(source, simplification, nli, embed, cache)
    return cov, evidence

def coherence(simplification, embed, cache=None):
    '''Mean adjacent-sentence cosine, mapped to [0, 1]. One sentence is 1.0.'''
    if simplification is None or not simplification.sentences:
        raise EmptySimplification('empty simplification')
    if len(simplification.sentences) == 1:
        return 1.0
    vectors = embedding_mod.embed(
        embed, [normalize_ws(s.text) for s in simplification.sentences], cache)
    cosines = [cosine_similarity(a, b) for a, b in zip(vectors, vectors[1:])]
    return (sum(cosines) / len(cosines) + 1) / 2
