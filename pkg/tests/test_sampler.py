#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import collections
import logging

import numpy as np
import pytest

from conftest import make_doc, FIN

from simprof.model import ExcerptProfile, SamplingPlan, BudgetExceedsCorpus, EmptyInput
from simprof.rules import make_rule, make_ruleset
from simprof.sampler import (
    profile_excerpt, profile_record, profile_from_record, rule_distribution,
    default_quotas, greedy_sample, random_sample, coverage_report
)
from simprof.text import extract_windows

NEGATED = [('Er', 'PRON', {}), ('kommt', 'VERB', FIN), ('nicht', 'PART', {}), ('.', 'PUNCT', {})]
CLEAN = [('Sie', 'PRON', {}), ('geht', 'VERB', FIN), ('.', 'PUNCT', {})]


def profile(n, *rules):
    eid = 'a:%05d' % n
    return ExcerptProfile(eid, frozenset(rules),
                          collections.OrderedDict((r, 1) for r in sorted(rules)))


def corpus(n=10000, n_rules=20, seed=1):
    '''Rule k is violated by roughly 0.6% to 8% of the excerpts.'''
    rng = np.random.default_rng(seed)
    rates = np.linspace(0.006, 0.08, n_rules)
    hits = rng.random((n, n_rules)) < rates
    return [profile(i, *('R%02d' % k for k in np.flatnonzero(hits[i]))) for i in range(n)]


# most and least frequent violations in a news corpus
SHARES = collections.OrderedDict((
    ('sentence_length', 0.8471), ('long_words', 0.7299), ('abstract_words', 0.7068),
    ('anglicisms', 0.1257), ('negation', 0.1016), ('technical_terms', 0.0337),
))


def planted_corpus(seed, n=10000):
    '''Each rule is violated by exactly its share of the n excerpts.'''
    rng = np.random.default_rng(seed)
    names = list(SHARES)
    hits = np.zeros((n, len(names)), dtype=bool)
    for k, share in enumerate(SHARES.values()):
        hits[rng.choice(n, int(round(share * n)), replace=False), k] = True
    return [profile(i, *(names[k] for k in np.flatnonzero(hits[i]))) for i in range(n)]


class TestProfile:

    def test_excerpt(self):
        (excerpt,) = extract_windows(make_doc([NEGATED, CLEAN], source_id='art'), window=2)
        rules = make_ruleset('t', '1', [make_rule('negation', 'simplicity'),
                                        make_rule('passive_voice', 'simplicity')])
        p = profile_excerpt(excerpt, rules)
        assert p.excerpt_id == 'art:0000'
        assert p.violated_rule_ids == {'negation'}
        assert p.violation_counts == {'negation': 1}

    def test_record(self):
        p = profile(3, 'b', 'a')
        assert profile_from_record(profile_record(p)) == p

    def test_distribution(self):
        ps = [profile(0, 'a'), profile(1, 'a', 'b'), profile(2), profile(3)]
        assert rule_distribution(ps, ['a', 'b', 'c']) == {'a': 50.0, 'b': 25.0, 'c': 0.0}
        with pytest.raises(EmptyInput):
            rule_distribution([])


class TestGreedy:

    def test_quotas_met(self):
        profiles = corpus()
        rules = sorted(set(r for p in profiles for r in p.violated_rule_ids))
        quotas = default_quotas(rules, 1000)
        assert set(quotas.values()) == {30}
        selected = greedy_sample(profiles, SamplingPlan(1000, quotas))
        assert len(selected) == len(set(selected)) == 1000
        report = coverage_report(profiles, selected, quotas)
        for r in rules:
            assert report[r]['achieved'] >= 30

    def test_rare_rule_against_random(self):
        budget, rare = 1000, 'technical_terms'
        greedy, uniform = [], []
        for seed in range(100):
            profiles = planted_corpus(seed)
            quotas = default_quotas(list(SHARES), budget)
            selected = greedy_sample(profiles, SamplingPlan(budget, quotas))
            report = coverage_report(profiles, selected, quotas)
            assert all(report[r]['achieved'] >= 30 for r in SHARES), seed
            greedy.append(report[rare]['achieved'])
            uniform.append(coverage_report(
                profiles, random_sample(profiles, budget, seed=seed), quotas)[rare]['achieved'])
        assert np.mean(uniform) == pytest.approx(33.7, abs=2.0)
        assert sum(1 for c in uniform if c < 30) >= 10
        # holds for rules rarer than budget / corpus size
        assert min(greedy) >= np.mean(uniform)

    def test_raising_a_quota(self):
        profiles = corpus(3000, 8, seed=2)
        rule = 'R04'
        available = sum(1 for p in profiles if rule in p.violated_rule_ids)
        counts = []
        for q in (0, 60, available):
            quotas = default_quotas(['R%02d' % k for k in range(8)], 600)
            quotas[rule] = q
            selected = greedy_sample(profiles, SamplingPlan(600, quotas))
            counts.append(coverage_report(profiles, selected, quotas)[rule]['achieved'])
        assert counts == sorted(counts)
        assert counts[1] >= 60
        assert counts[2] == available

    def test_deterministic(self):
        profiles = corpus(2000, 8)
        plan = SamplingPlan(100, None)
        assert greedy_sample(profiles, plan) == greedy_sample(list(reversed(profiles)), plan)

    def test_max_gain_first(self):
        ps = [profile(0, 'a'), profile(1, 'a', 'b'), profile(2, 'b'), profile(3)]
        assert greedy_sample(ps, SamplingPlan(2, {'a': 1, 'b': 1})) == ['a:00001', 'a:00000']

    def test_ties_to_lower_id(self):
        ps = [profile(2, 'a'), profile(1, 'a'), profile(0)]
        assert greedy_sample(ps, SamplingPlan(1, {'a': 1})) == ['a:00001']

    def test_budget_exceeds_corpus(self):
        with pytest.raises(BudgetExceedsCorpus):
            greedy_sample([profile(0)], SamplingPlan(2))

    def test_duplicate_ids(self):
        with pytest.raises(ValueError):
            greedy_sample([profile(0), profile(0)], SamplingPlan(1))


class TestQuotas:

    def test_default(self):
        assert default_quotas(['a'], 1000) == {'a': 30}
        assert default_quotas(['a', 'b'], 2000) == {'a': 60, 'b': 60}
        assert default_quotas(['a'], 100, minimum=5) == {'a': 5}


class TestRandom:

    def test_sample(self):
        profiles = corpus(500, 3)
        a = random_sample(profiles, 50, seed=4)
        assert a == random_sample(profiles, 50, seed=4)
        assert len(set(a)) == 50
        assert a == sorted(a)


class TestCoverage:

    def test_report(self, caplog):
        ps = [profile(0, 'a'), profile(1, 'a', 'b'), profile(2)]
        with caplog.at_level(logging.WARNING, logger='sampler'):
            report = coverage_report(ps, ['a:00000', 'a:00002'], {'a': 1, 'b': 1, 'c': 2})
        assert report['a'] == {'quota': 1, 'available': 2, 'achieved': 1, 'share': 50.0}
        assert report['b']['achieved'] == 0
        assert report['c']['available'] == 0
        messages = [r.getMessage() for r in caplog.records]
        assert 'rule b: quota 1 unmet, 0 selected of 1 available' in messages
        assert 'rule c: quota 2 exceeds the 0 excerpts available' in messages
