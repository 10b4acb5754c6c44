#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Comprehensibility (simplicity) and grammar (correctness) rules.

A matcher is built by a registered factory from the rule parameters and is
called per sentence as matcher(sentence, sub_clauses). It returns indices
whose meaning depends on the rule level:

    word      sentence-relative token indices
    clause    indices into sub_clauses
    sentence  any non-empty list flags the whole sentence
'''

import os
import json
import logging
import collections

from . import lexicon
from .model import Rule, RuleSet, Violation, RuleScore, MissingAnnotation, EmptyDocument, ConfigError

logger = logging.getLogger('rules')

CATEGORIES = ('simplicity', 'correctness')
LEVELS = ('word', 'clause', 'sentence')

Matcher = collections.namedtuple('Matcher', 'factory level requires description')

matchers = collections.OrderedDict()

def register_matcher(name, level, requires=()):
    def wrapper(func):
        matchers[name] = Matcher(func, level, frozenset(requires),
                                 ' '.join((func.__doc__ or '').split()))
        return func
    return wrapper

def _words(sentence):
    return [(i, t) for i, t in enumerate(sentence.tokens) if t.is_word]

def _clause_tokens(sentence, sc):
    a, b = sc.token_range
    return sentence.tokens[a:b]

def _load_lexicon(params, builtin=frozenset()):
    words = set(builtin)
    for fn in params.get('lexicon') or ():
        words.update(lexicon.load_wordlist(fn))
    return frozenset(words)

### simplicity

@register_matcher('sentence_length', 'sentence')
def sentence_length(params):
    '''Sentence has more than `max_words` words.'''
    limit = params.get('max_words', 20)
    return lambda s, scs: [0] if len(_words(s)) > limit else []

@register_matcher('long_word', 'word')
def long_word(params):
    '''Word has more than `max_syllables` syllables or `max_chars` characters.'''
    max_syl = params.get('max_syllables', 3)
    max_chars = params.get('max_chars', 16)
    return lambda s, scs: [i for i, t in _words(s)
                           if t.syllable_count > max_syl or len(t.text) > max_chars]

@register_matcher('negation', 'word')
def negation(params):
    '''Negation word such as "nicht", "kein", "nie".'''
    words = _load_lexicon(params, lexicon.negations)
    return lambda s, scs: [i for i, t in _words(s) if t.text.lower() in words]

@register_matcher('passive_voice', 'clause', ('morphology',))
def passive_voice(params):
    '''Clause in passive voice.'''
    return lambda s, scs: [k for k, sc in enumerate(scs) if any(
        t.morph.get('Voice') == 'Pass' for t in _clause_tokens(s, sc))]

@register_matcher('subordinate_clause', 'clause', ('pos',))
def subordinate_clause(params):
    '''Subordinate clause introduced by a conjunction.'''
    return lambda s, scs: [k for k, sc in enumerate(scs) if sc.kind == 'subordinate']

@register_matcher('relative_clause', 'clause', ('pos', 'morphology'))
def relative_clause(params):
    '''Relative clause.'''
    return lambda s, scs: [k for k, sc in enumerate(scs) if sc.kind == 'relative']

@register_matcher('genitive_case', 'word', ('morphology',))
def genitive_case(params):
    '''Word in the genitive case.'''
    return lambda s, scs: [i for i, t in _words(s) if t.morph.get('Case') == 'Gen']

@register_matcher('subjunctive_mood', 'clause', ('morphology',))
def subjunctive_mood(params):
    '''Clause with a verb in the subjunctive mood.'''
    return lambda s, scs: [k for k, sc in enumerate(scs) if any(
        t.morph.get('Mood') == 'Sub' for t in _clause_tokens(s, sc))]

@register_matcher('abstract_words', 'word', ('pos',))
def abstract_words(params):
    '''Abstract noun, recognized by its suffix (-ung, -heit, -keit, ...).'''
    suffixes = tuple(params.get('suffixes') or lexicon.abstract_suffixes)
    def match(s, scs):
        hits = []
        for i, t in _words(s):
            low = t.text.lower()
            if t.pos == 'NOUN' and any(low.endswith(x) and len(low) > len(x) + 2
                                       for x in suffixes):
                hits.append(i)
        return hits
    return match

@register_matcher('simple_past', 'clause', ('pos', 'morphology'))
def simple_past(params):
    '''Lexical verb in the simple past, where the perfect is easier.'''
    return lambda s, scs: [k for k, sc in enumerate(scs) if any(
        t.pos == 'VERB' and t.morph.get('VerbForm') == 'Fin' and t.morph.get('Tense') == 'Past'
        for t in _clause_tokens(s, sc))]

@register_matcher('one_idea', 'sentence', ('pos',))
def one_idea(params):
    '''Sentence with more than one main clause.'''
    limit = params.get('max_main_clauses', 1)
    return lambda s, scs: [0] if sum(1 for sc in scs if sc.kind == 'main') > limit else []

@register_matcher('anglicisms', 'word')
def anglicisms(params):
    '''English loan word.'''
    words = _load_lexicon(params, lexicon.anglicisms)
    return lambda s, scs: [i for i, t in _words(s) if t.text.lower() in words]

@register_matcher('technical_terms', 'word')
def technical_terms(params):
    '''Technical term from the configured lexicon files.'''
    words = _load_lexicon(params)
    return lambda s, scs: [i for i, t in _words(s) if t.text.casefold() in words]

### correctness

@register_matcher('typo', 'word')
def typo(params):
    '''Misspelled word: not in the dictionary, or orthographically implausible.'''
    words = _load_lexicon(params)
    def implausible(text):
        if not text.isalpha() or len(text) < 3:
            return False
        low = text.lower()
        if any(low[i] == low[i + 1] == low[i + 2] == low[i + 3] for i in range(len(low) - 3)):
            return True
        if len(low) > 3 and not any(c in 'aeiouyäöü' for c in low) and not text.isupper():
            return True
        # "DEr", "HAus"
        return len(text) > 3 and text[:2].isupper() and text[2:].islower()
    def match(s, scs):
        hits = []
        for i, t in _words(s):
            if words:
                if t.text.isalpha() and t.text.casefold() not in words and not (
                        t.pos == 'PROPN' or t.text.isupper()):
                    hits.append(i)
            elif implausible(t.text):
                hits.append(i)
        return hits
    return match

@register_matcher('duplicated_word', 'word')
def duplicated_word(params):
    '''The same word twice in a row.'''
    def match(s, scs):
        hits = []
        toks = s.tokens
        for i in range(1, len(toks)):
            a, b = toks[i - 1], toks[i]
            if a.is_word and b.is_word and not b.text.isdigit() \
                    and a.text.lower() == b.text.lower():
                hits.append(i)
        return hits
    return match

@register_matcher('capitalization', 'word')
def capitalization(params):
    '''Sentence starting with a lowercase letter.'''
    def match(s, scs):
        words = _words(s)
        if words and words[0][1].text[:1].islower():
            return [words[0][0]]
        return []
    return match

@register_matcher('confused_words', 'word')
def confused_words(params):
    '''Commonly confused word forms ("seid"/"seit", "wieder"/"wider").'''
    def match(s, scs):
        words = _words(s)
        hits = []
        for n, (i, t) in enumerate(words):
            entry = lexicon.confused_words.get(t.text.lower())
            if entry is None:
                continue
            nxt = words[n + 1][1].text if n + 1 < len(words) else None
            if entry[1] is None or entry[1](nxt):
                hits.append(i)
        return hits
    return match


BUILTIN = collections.OrderedDict((
    ('simplicity', (
        'sentence_length', 'long_word', 'negation', 'passive_voice',
        'subordinate_clause', 'relative_clause', 'genitive_case',
        'subjunctive_mood', 'abstract_words', 'simple_past', 'one_idea',
        'anglicisms', 'technical_terms',
    )),
    ('correctness', ('typo', 'duplicated_word', 'capitalization', 'confused_words')),
))

def make_rule(rule_id, category, matcher=None, params=None, level=None, description=None):
    name = matcher or rule_id
    try:
        m = matchers[name]
    except KeyError:
        raise ConfigError('rule %s: unknown matcher %r' % (rule_id, name))
    if category not in CATEGORIES:
        raise ConfigError('rule %s: unknown category %r' % (rule_id, category))
    if level is not None and level != m.level:
        raise ConfigError('rule %s: matcher %s works on %s level, not %s' % (
            rule_id, name, m.level, level))
    params = dict(params or {})
    if isinstance(params.get('lexicon'), str):
        params['lexicon'] = [params['lexicon']]
    return Rule(rule_id, category, m.level, description or m.description,
                m.factory(params), m.requires, params)

def make_ruleset(name, version, rules):
    rules = tuple(rules)
    if not rules:
        raise ConfigError('rule set %s is empty' % name)
    seen = set()
    for r in rules:
        if r.id in seen:
            raise ConfigError('rule set %s: duplicate rule id %s' % (name, r.id))
        seen.add(r.id)
    return RuleSet(name, version, rules)

def builtin_ruleset(category, params=None, disabled=()):
    '''
    The shipped rules of one category. `params` maps rule ids to parameter
    overrides such as {'sentence_length': {'max_words': 25}}.
    '''
    if category not in BUILTIN:
        raise ConfigError('unknown rule category %r' % category)
    params = params or {}
    return make_ruleset('builtin-' + category, '1', (
        make_rule(rid, category, params=params.get(rid))
        for rid in BUILTIN[category] if rid not in disabled))

def load_ruleset(filename):
    '''
    Reads a declarative rule set:

        {"name": ..., "version": ...,
         "rules": [{"id", "category", "matcher"?, "level"?, "params"?,
                    "description"?}]}

    Lexicon paths are relative to the file.
    '''
    with open(filename, 'r', encoding='utf-8') as f:
        obj = json.load(f)
    base = os.path.dirname(os.path.abspath(filename))
    rules = []
    for r in obj.get('rules', ()):
        params = dict(r.get('params') or {})
        lex = params.get('lexicon')
        if lex:
            lex = [lex] if isinstance(lex, str) else lex
            params['lexicon'] = [os.path.join(base, p) for p in lex]
        rules.append(make_rule(r['id'], r['category'], r.get('matcher'), params,
                               r.get('level'), r.get('description')))
    return make_ruleset(obj.get('name', os.path.basename(filename)),
                        str(obj.get('version', '1')), rules)

def ruleset_record(rules):
    return collections.OrderedDict((
        ('name', rules.name),
        ('version', rules.version),
        ('rules', [collections.OrderedDict((
            ('id', r.id), ('category', r.category), ('level', r.level),
            ('params', r.params), ('description', r.description)))
            for r in rules.rules]),
    ))

def _word_indices(tokens, a=0):
    return tuple(a + i for i, t in enumerate(tokens) if t.is_word)

def _span(tokens):
    return (tokens[0].char_span[0], tokens[-1].char_span[1])

def _violations(rule, j, sentence, scs, hits):
    if rule.level == 'sentence':
        if hits:
            yield Violation(rule.id, j, sentence.char_span,
                            _word_indices(sentence.tokens), tuple(range(len(scs))))
    elif rule.level == 'clause':
        for k in sorted(set(hits)):
            a, b = scs[k].token_range
            yield Violation(rule.id, j, _span(sentence.tokens[a:b]),
                            _word_indices(sentence.tokens[a:b], a), (k,))
    else:
        for i in sorted(set(hits)):
            yield Violation(rule.id, j, sentence.tokens[i].char_span, (i,), tuple(
                k for k, sc in enumerate(scs)
                if sc.token_range[0] <= i < sc.token_range[1]))

def apply_rules(doc, rules, strict=False):
    '''
    Runs every rule on every sentence. Rules needing an annotation layer the
    document lacks raise MissingAnnotation when `strict`, and are skipped
    with a warning otherwise.
    '''
    result = []
    for rule in rules.rules:
        missing = rule.requires - doc.capabilities
        if missing:
            exc = MissingAnnotation(rule.id, sorted(missing)[0])
            if strict:
                raise exc
            logger.warning('%s: skipped, %s', doc.raw.source_id, exc)
            continue
        for j, (sentence, scs) in enumerate(zip(doc.sentences, doc.sub_clauses)):
            result.extend(_violations(rule, j, sentence, scs, rule.matcher(sentence, scs)))
    return result

def squared_harmonic_mean(R_w, R_sc):
    if R_w <= 0 or R_sc <= 0:
        return 0.0
    return (2 / (1 / R_w + 1 / R_sc)) ** 2

def rule_score(doc, violations, category=None, categories=None):
    '''
    R_w: share of word tokens without violation; R_sc: share of sub-clauses
    without violation; S: their squared harmonic mean. With `categories`
    (rule id -> category), violations of other categories are ignored.
    '''
    if category is not None and categories is not None:
        violations = [v for v in violations if categories.get(v.rule_id) == category]
    n_words = sum(1 for s in doc.sentences for t in s.tokens if t.is_word)
    n_clauses = sum(len(scs) for scs in doc.sub_clauses)
    if not n_words:
        raise EmptyDocument('%s: no word tokens' % doc.raw.source_id)
    if not n_clauses:
        raise EmptyDocument('%s: no sub-clauses' % doc.raw.source_id)
    bad_words = set()
    bad_clauses = set()
    for v in violations:
        bad_words.update((v.sentence_index, i) for i in v.violating_token_indices)
        bad_clauses.update((v.sentence_index, k) for k in v.violating_subclause_indices)
    R_w = (n_words - len(bad_words)) / n_words
    R_sc = (n_clauses - len(bad_clauses)) / n_clauses
    return RuleScore(R_w, R_sc, squared_harmonic_mean(R_w, R_sc), tuple(violations))

def word_ratio(doc, violations):
    '''R_w alone, for documents without sub-clauses.'''
    n_words = sum(1 for s in doc.sentences for t in s.tokens if t.is_word)
    if not n_words:
        raise EmptyDocument('%s: no word tokens' % doc.raw.source_id)
    bad = set((v.sentence_index, i) for v in violations for i in v.violating_token_indices)
    return (n_words - len(bad)) / n_words
