#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Benchmark subset selection. Excerpts are profiled once against the rule
set, then a greedy max-coverage pass picks a fixed-size subset that meets a
minimum count of excerpts per violated rule wherever the corpus allows.
'''

import math
import heapq
import logging
import collections

from .rules import apply_rules
from .text import excerpt_document
from .model import ExcerptProfile, SamplingPlan, BudgetExceedsCorpus, EmptyInput

import numpy as np

logger = logging.getLogger('sampler')

def profile_excerpt(excerpt, rules, strict=True):
    doc = excerpt_document(excerpt)
    counts = collections.Counter(v.rule_id for v in apply_rules(doc, rules, strict))
    return ExcerptProfile(excerpt.excerpt_id, frozenset(counts),
                          collections.OrderedDict(sorted(counts.items())))

def profile_record(profile):
    return collections.OrderedDict((
        ('excerpt_id', profile.excerpt_id),
        ('violated_rule_ids', sorted(profile.violated_rule_ids)),
        ('violation_counts', profile.violation_counts),
    ))

def profile_from_record(rec):
    return ExcerptProfile(rec['excerpt_id'], frozenset(rec['violated_rule_ids']),
                          collections.OrderedDict(sorted(rec['violation_counts'].items())))

def rule_distribution(profiles, rule_ids=None):
    '''rule_id -> % of excerpts violating it. Rules in `rule_ids` are listed even at 0.'''
    profiles = list(profiles)
    if not profiles:
        raise EmptyInput('no excerpt profiles')
    counts = collections.Counter(r for p in profiles for r in p.violated_rule_ids)
    ids = list(rule_ids) if rule_ids is not None else sorted(counts)
    return collections.OrderedDict(
        (r, 100.0 * counts[r] / len(profiles)) for r in ids)

def default_quotas(rule_ids, budget, minimum=30, share=0.03):
    q = max(minimum, math.ceil(share * budget))
    return collections.OrderedDict((r, q) for r in rule_ids)

def _check(profiles, budget):
    ids = [p.excerpt_id for p in profiles]
    if len(set(ids)) != len(ids):
        raise ValueError('duplicated excerpt ids in profiles')
    if budget > len(profiles):
        raise BudgetExceedsCorpus('budget %d exceeds the %d available excerpts' % (
            budget, len(profiles)))

def greedy_sample(profiles, plan=SamplingPlan()):
    '''
    Selects plan.budget excerpt ids. Each step takes the excerpt violating the
    most rules whose quota is still unmet, ties going to the lower excerpt_id.
    Gains only shrink as quotas fill up, so stale heap entries are upper
    bounds and get re-evaluated lazily.
    '''
    profiles = list(profiles)
    _check(profiles, plan.budget)
    quotas = plan.quotas
    if quotas is None:
        quotas = default_quotas(sorted(set(
            r for p in profiles for r in p.violated_rule_ids)), plan.budget)
    deficit = {r: q for r, q in quotas.items() if q > 0}
    by_id = {p.excerpt_id: p for p in profiles}

    def gain(p):
        return sum(1 for r in p.violated_rule_ids if deficit.get(r, 0) > 0)

    heap = [(-gain(p), p.excerpt_id) for p in profiles]
    heapq.heapify(heap)
    selected = []
    while heap and len(selected) < plan.budget:
        neg, eid = heapq.heappop(heap)
        g = gain(by_id[eid])
        if g != -neg:
            heapq.heappush(heap, (-g, eid))
            continue
        selected.append(eid)
        for r in by_id[eid].violated_rule_ids:
            if deficit.get(r, 0) > 0:
                deficit[r] -= 1
    unmet = sorted(r for r, d in deficit.items() if d > 0)
    if unmet:
        logger.debug('quotas left unmet: %s', ', '.join(unmet))
    return selected

def random_sample(profiles, size, seed=0):
    '''Uniform sample without replacement, in corpus order.'''
    profiles = list(profiles)
    _check(profiles, size)
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(len(profiles), size=size, replace=False))
    return [profiles[i].excerpt_id for i in idx]

def coverage_report(profiles, selected, quotas):
    '''
    Per rule: quota, excerpts available in the corpus, excerpts achieved in
    the selection and their share of it. Logs a warning for every quota the
    corpus could have met but the selection did not.
    '''
    profiles = list(profiles)
    chosen = set(selected)
    available = collections.Counter(r for p in profiles for r in p.violated_rule_ids)
    achieved = collections.Counter(r for p in profiles if p.excerpt_id in chosen
                                   for r in p.violated_rule_ids)
    report = collections.OrderedDict()
    for r in sorted(set(quotas) | set(available)):
        q = quotas.get(r, 0)
        report[r] = collections.OrderedDict((
            ('quota', q),
            ('available', available[r]),
            ('achieved', achieved[r]),
            ('share', 100.0 * achieved[r] / len(chosen) if chosen else 0.0),
        ))
        if achieved[r] < q:
            if available[r] >= q:
                logger.warning('rule %s: quota %d unmet, %d selected of %d available',
                               r, q, achieved[r], available[r])
            else:
                logger.warning('rule %s: quota %d exceeds the %d excerpts available',
                               r, q, available[r])
    return report
