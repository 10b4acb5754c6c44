#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import threading
import collections

__version__ = '1.0'

TOOLKIT = 'simprof'

RawText = collections.namedtuple('RawText', (
    'content',   # Document text: str
    'source_id', # Opaque, non-empty identifier: str
    'language'   # BCP-47 tag: str
), defaults=('de',))

Token = collections.namedtuple('Token', (
    'text',           # Surface form: str
    'char_span',      # (start, end) into the document content, half-open
    'is_word',        # False for punctuation and symbols
    'syllable_count', # >= 1 for words, 0 otherwise
    'pos',            # Coarse UD part of speech: str
    'morph',          # Feature map, e.g. {'VerbForm': 'Fin', 'Tense': 'Past'}
    'head_index'      # Sentence-relative head index, or own index
))

Sentence = collections.namedtuple('Sentence', (
    'text',            # str
    'char_span',       # (start, end) into the document content
    'tokens',          # (Token, ...) ordered by offset
    'terminal_punct',  # Ends with . ! ? or …
    'has_finite_verb'  # Any token with VerbForm=Fin
))

SubClause = collections.namedtuple('SubClause', (
    'token_range', # (start, end) sentence-relative token indices, half-open
    'kind'         # 'main', 'subordinate' or 'relative'
))

Entity = collections.namedtuple('Entity', ('text', 'char_span', 'kind'))

SegmentedText = collections.namedtuple('SegmentedText', (
    'raw',          # RawText
    'sentences',    # (Sentence, ...)
    'sub_clauses',  # ((SubClause, ...), ...) one tuple per sentence
    'entities',     # (Entity, ...)
    'capabilities'  # frozenset of annotation layers present
))

class Excerpt(collections.namedtuple('Excerpt', (
        'article_id',   # str
        'window_index', # int, position of the window in the article
        'sentences',    # exactly `window` well-formed Sentences
        'sub_clauses',  # per-sentence SubClause tuples
        'capabilities'
    ))):
    @property
    def excerpt_id(self):
        return '%s:%04d' % (self.article_id, self.window_index)

    @property
    def text(self):
        return ' '.join(s.text for s in self.sentences)

FbrInputs = collections.namedtuple('FbrInputs', (
    'x_S1', # mean sentence length in syllables
    'x_S2', # % sentences with > 6 words
    'x_S3', # % sentences with > 16 words
    'x_S4', # % sentences with > 20 words
    'x_W1', # mean word length in syllables
    'x_W2'  # % words with > 3 syllables
))

FbrComponentSpec = collections.namedtuple('FbrComponentSpec', (
    'name', 'offset', 'lower_anchor', 'upper_anchor'
))

FbrResult = collections.namedtuple('FbrResult', (
    'raw', 'K_S', 'K_W', 'components'
))

ReadabilityConfig = collections.namedtuple('ReadabilityConfig', ('k', 'x0'),
                                           defaults=(0.1, 50.0))

Rule = collections.namedtuple('Rule', (
    'id',          # str, unique within a RuleSet
    'category',    # 'simplicity' or 'correctness'
    'level',       # 'word', 'clause' or 'sentence'
    'description', # str
    'matcher',     # (Sentence, sub_clauses) -> [hit indices]
    'requires',    # frozenset of annotation capabilities
    'params'       # dict of thresholds and lexicon paths
))

RuleSet = collections.namedtuple('RuleSet', ('name', 'version', 'rules'))

Violation = collections.namedtuple('Violation', (
    'rule_id',
    'sentence_index',
    'char_span',
    'violating_token_indices',     # sentence-relative
    'violating_subclause_indices'  # sentence-relative
))

RuleScore = collections.namedtuple('RuleScore', ('R_w', 'R_sc', 'S', 'violations'))

NliJudgment = collections.namedtuple('NliJudgment', (
    'p_entailment', 'p_neutral', 'p_contradiction'
))

FidelityEntry = collections.namedtuple('FidelityEntry', (
    'sentence_index', 'judgment', 'similarity', 'cov_term'
))

FidelityEvidence = collections.namedtuple('FidelityEvidence', (
    'per_source_sentence', # (FidelityEntry, ...)
    'hypothesis_sentences', # number of simplification sentences used
    'truncated'             # hypothesis was cut to the provider limit
))

STRATEGIES = ('plain', 'target', 'rules', 'content')
SIZES = ('1B', '4B', '12B')
FEW_SHOT_STRATEGIES = frozenset(('rules', 'content'))

class ConfigurationLabel(collections.namedtuple('ConfigurationLabel', (
        'prompt_strategy', # one of STRATEGIES, None in aggregated groups
        'model_size',      # one of SIZES, None in aggregated groups
        'few_shot'         # bool for rules/content, None otherwise
    ))):
    def is_valid(self):
        if self.prompt_strategy not in STRATEGIES or self.model_size not in SIZES:
            return False
        if self.prompt_strategy in FEW_SHOT_STRATEGIES:
            return isinstance(self.few_shot, bool)
        return self.few_shot is None

    def todict(self):
        return {'strategy': self.prompt_strategy, 'size': self.model_size,
                'few_shot': self.few_shot}

    @classmethod
    def fromdict(cls, d):
        return cls(d.get('strategy'), d.get('size'), d.get('few_shot'))

    def __str__(self):
        parts = [p for p in (self.prompt_strategy, self.model_size) if p]
        if self.few_shot is not None:
            parts.append('fs' if self.few_shot else 'nofs')
        return '-'.join(parts) or 'all'

def all_labels():
    '''The 18 valid generation configurations, in canonical order.'''
    labels = []
    for strategy in STRATEGIES:
        for size in SIZES:
            if strategy in FEW_SHOT_STRATEGIES:
                labels.append(ConfigurationLabel(strategy, size, False))
                labels.append(ConfigurationLabel(strategy, size, True))
            else:
                labels.append(ConfigurationLabel(strategy, size, None))
    return labels

Fingerprint = collections.namedtuple('Fingerprint', (
    'pair_id',
    'label',    # ConfigurationLabel or None
    'features', # OrderedDict of the 23 canonical features
    'aux',      # OrderedDict of auxiliary length statistics
    'evidence', # dict, JSON-serializable
    'flags'     # sorted tuple of degenerate-case flags
))

ModelFingerprint = collections.namedtuple('ModelFingerprint', (
    'label', 'mean', 'std', 'n'
))

SpiderConfig = collections.namedtuple('SpiderConfig', (
    'axes',          # ordered feature names
    'normalizers',   # feature -> callable mapping raw value to [0, 1]
    'series_labels', # optional legend labels overriding str(label)
    'dashes',        # stroke-dasharray patterns, cycled
    'colors',        # stroke colors, cycled
    'size'           # canvas edge length in px
))

ExcerptProfile = collections.namedtuple('ExcerptProfile', (
    'excerpt_id', 'violated_rule_ids', 'violation_counts'
))

SamplingPlan = collections.namedtuple('SamplingPlan', ('budget', 'quotas'),
                                      defaults=(1000, None))

PromptTemplate = collections.namedtuple('PromptTemplate', (
    'strategy', 'body', 'few_shot_examples'
), defaults=((),))

SimplificationRecord = collections.namedtuple('SimplificationRecord', (
    'pair_id', 'excerpt_id', 'label', 'prompt_hash', 'output_text', 'flags', 'meta'
))

TaskSpec = collections.namedtuple('TaskSpec', (
    'name',
    'target',         # {'strategy': 'target'} style predicate on labels
    'restrict',       # {'size': ['1B', '4B']} row filter applied first, or None
    'feature_subset'  # feature names, None for all 23
), defaults=(None, None))

LinearModel = collections.namedtuple('LinearModel', (
    'features',     # kept feature names
    'weights',      # standardized coefficients, one per kept feature
    'intercept',
    'mean',         # training means of kept features
    'scale',        # training stds of kept features
    'reg_strength',
    'dropped'       # constant columns removed before fitting
))

StudyResult = collections.namedtuple('StudyResult', (
    'task',
    'accuracy_mean', 'accuracy_std',
    'f1_mean', 'f1_std',
    'folds', 'repeats',
    'importance',   # OrderedDict feature -> mean |standardized weight|
    'fold_hash',    # sha1 of fold assignments, for paired comparisons
    'n_samples',
    'positive_rate'
))


class SimprofError(Exception):
    pass

class ConfigError(SimprofError):
    pass

class EmptyInput(SimprofError):
    pass

class EmptyDocument(SimprofError):
    pass

class EmptySimplification(SimprofError):
    pass

class EmptySource(SimprofError):
    pass

class AnnotationFailure(SimprofError):
    pass

class MissingAnnotation(SimprofError):
    def __init__(self, rule_id, capability):
        super().__init__('rule %s needs annotation layer %r' % (rule_id, capability))
        self.rule_id = rule_id
        self.capability = capability

class ProviderFailure(SimprofError):
    pass

class ZeroVector(SimprofError):
    pass

class DimensionMismatch(SimprofError):
    pass

class InvalidAxes(SimprofError):
    pass

class MissingSlot(SimprofError):
    pass

class ConfigInvalid(SimprofError):
    pass

class BudgetExceedsCorpus(SimprofError):
    pass

class DegenerateTask(SimprofError):
    pass

class UnknownFeature(SimprofError):
    pass

class SingularData(SimprofError):
    pass


class Provider:
    '''
    Base for every external component. `concurrency` is the number of calls
    allowed in flight; 1 serializes all calls through `guard`.
    '''
    kind = None
    default_concurrency = 1

    def __init__(self, config=None):
        self.config = config or {}
        self.concurrency = max(int(self.config.get('concurrency', self.default_concurrency)), 1)
        self.guard = threading.BoundedSemaphore(self.concurrency)

    @property
    def provider_id(self):
        return '%s:%s' % (self.kind, self.config.get('model_id') or type(self).__name__)

    def close(self):
        pass

class AnnotationProvider(Provider):
    kind = 'annotation'
    capabilities = frozenset()

    def annotate(self, text: str, language: str) -> dict:
        '''
        Returns the record form {sentences, tokens, entities}, see
        text.build_segmented for the field definitions.
        '''
        raise NotImplementedError

class NliProvider(Provider):
    kind = 'nli'

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', type(self).__name__)
        self.max_batch = int(self.config.get('max_batch', 32))
        # characters of premise + hypothesis, None for unlimited
        self.max_length = self.config.get('max_length')

    def judge(self, pairs) -> list:
        '''pairs: [(premise, hypothesis)] -> [NliJudgment]'''
        raise NotImplementedError

class EmbeddingProvider(Provider):
    kind = 'embedding'

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', type(self).__name__)
        self.dimension = self.config.get('dimension')

    def embed(self, texts) -> list:
        raise NotImplementedError

class GenerationProvider(Provider):
    kind = 'generation'

    def __init__(self, config=None):
        super().__init__(config)
        self.model_id = self.config.get('model_id', type(self).__name__)
        self.params = {
            'temperature': self.config.get('temperature', 0.0),
            'max_tokens': self.config.get('max_tokens', 512),
            'seed': self.config.get('seed', 0),
        }

    def generate(self, prompt: str):
        '''Returns (output_text, metadata dict).'''
        raise NotImplementedError

class GrammarChecker(Provider):
    kind = 'checker'

    def check(self, text: str, language: str) -> list:
        '''Returns [{'offset', 'length', 'rule_id', 'category'}].'''
        raise NotImplementedError
