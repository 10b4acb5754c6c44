#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import logging
import collections

from . import fidelity, readability, rules as rules_mod
from .model import (
    Fingerprint, ModelFingerprint, ConfigurationLabel, ReadabilityConfig,
    EmptySource, EmptySimplification, EmptyInput, MissingAnnotation, ProviderFailure
)
from .text import word_tokens
from .utils import normalize_ws, jsonable, header_comment

import pandas as pd

logger = logging.getLogger('fprint')

# Canonical order. Stable within a major version.
FEATURES = (
    'COR', 'COV', 'SIM', 'LNG', 'FBR_norm', 'FBR_raw', 'COH', 'LEN', 'ENT', 'ASL',
    'S1', 'S2', 'S3', 'S4', 'W1', 'W2', 'K_S', 'K_W',
    'SIM_Rw', 'SIM_Rsc', 'LNG_Rw', 'LNG_Rsc', 'word_count',
)
AUX_FEATURES = ('char_count', 'sentence_count', 'avg_word_length')
SIMPLE_FEATURES = ('char_count', 'word_count', 'sentence_count', 'ASL', 'avg_word_length', 'LEN')
LABEL_COLUMNS = ('strategy', 'size', 'few_shot')

Pair = collections.namedtuple('Pair', (
    'pair_id', 'label',
    'source',         # SegmentedText
    'simplification'  # SegmentedText, None for an empty output
))

Providers = collections.namedtuple('Providers', (
    'nli', 'embedding',
    'rulesets',    # (RuleSet, ...)
    'checker',     # GrammarChecker or None
    'readability', # ReadabilityConfig
    'cache',
    'strict'       # missing annotation layers raise instead of skipping rules
), defaults=(None, ReadabilityConfig(), None, False))

def length_ratio(source, simplification):
    src = len(normalize_ws(source.content))
    if not src:
        raise EmptySource('%s: empty source' % source.source_id)
    return len(normalize_ws(simplification.content)) / src

def _entity_key(text):
    return normalize_ws(text).casefold()

def entity_retention(source, simplification, detail=False):
    for doc in (source, simplification):
        if 'ner' not in doc.capabilities:
            raise MissingAnnotation('ENT', 'ner')
    entities = sorted(set(_entity_key(e.text) for e in source.entities))
    target = _entity_key(simplification.raw.content)
    retained = [e for e in entities if e in target]
    score = len(retained) / len(entities) if entities else 1.0
    return (score, entities, retained) if detail else score

def avg_sentence_length(simplification):
    if simplification is None or not simplification.sentences:
        raise EmptySimplification('no sentences')
    return sum(len(word_tokens(s)) for s in simplification.sentences) / len(simplification.sentences)

def _empty_fingerprint(pair, length, flags):
    features = collections.OrderedDict((f, 0.0) for f in FEATURES)
    features['LEN'] = length
    return Fingerprint(pair.pair_id, pair.label, features,
                       collections.OrderedDict((a, 0.0) for a in AUX_FEATURES),
                       {}, tuple(sorted(flags)))

def _rule_features(doc, providers, flags):
    violations = []
    categories = {}
    for rs in providers.rulesets:
        violations.extend(rules_mod.apply_rules(doc, rs, providers.strict))
        categories.update((r.id, r.category) for r in rs.rules)
    if providers.checker is not None:
        remote, cats = providers.checker.violations(doc)
        violations.extend(remote)
        categories.update(cats)
    n_clauses = sum(len(scs) for scs in doc.sub_clauses)
    scores = {}
    for category in rules_mod.CATEGORIES:
        vs = [v for v in violations if categories.get(v.rule_id) == category]
        if n_clauses:
            rs = rules_mod.rule_score(doc, vs)
            scores[category] = (rs.R_w, rs.R_sc, rs.S)
        else:
            # no finite verb anywhere: clause ratio follows the word ratio
            flags.add('no_subclauses')
            R_w = rules_mod.word_ratio(doc, vs)
            scores[category] = (R_w, R_w, rules_mod.squared_harmonic_mean(R_w, R_w))
    return scores, violations

def build_fingerprint(pair, providers):
    '''
    Computes the 23 canonical features of one (source, simplification) pair.
    Degenerate outputs give a flagged fingerprint with every feature defined.
    '''
    flags = set()
    source, simp = pair.source, pair.simplification
    if simp is None or not simp.sentences:
        return _empty_fingerprint(pair, 0.0, flags | {'empty_output'})
    length = length_ratio(source.raw, simp.raw)
    if not any(word_tokens(s) for s in simp.sentences):
        return _empty_fingerprint(pair, length, flags | {'empty_output'})
    try:
        cor, cov, fev = fidelity.content_fidelity(
            source, simp, providers.nli, providers.embedding, providers.cache)
        coh = fidelity.coherence(simp, providers.embedding, providers.cache)
        scores, violations = _rule_features(simp, providers, flags)
    except ProviderFailure as ex:
        raise ProviderFailure('%s: %s' % (pair.pair_id, ex)) from ex
    if fev.truncated:
        flags.add('hypothesis_truncated')
    inputs = readability.fbr_inputs(simp)
    fbr = readability.fbr_raw(inputs)
    try:
        ent, src_entities, retained = entity_retention(source, simp, detail=True)
    except MissingAnnotation as ex:
        logger.warning('%s: %s, ENT set to 0', pair.pair_id, ex)
        flags.add('no_ner')
        ent, src_entities, retained = 0.0, [], []
    words = [t for s in simp.sentences for t in word_tokens(s)]

    features = collections.OrderedDict((
        ('COR', cor),
        ('COV', cov),
        ('SIM', scores['simplicity'][2]),
        ('LNG', scores['correctness'][2]),
        ('FBR_norm', readability.fbr_normalized(fbr.raw, providers.readability)),
        ('FBR_raw', fbr.raw),
        ('COH', coh),
        ('LEN', length),
        ('ENT', ent),
        ('ASL', avg_sentence_length(simp)),
    ))
    features.update(fbr.components)
    features['K_S'] = fbr.K_S
    features['K_W'] = fbr.K_W
    features['SIM_Rw'], features['SIM_Rsc'] = scores['simplicity'][:2]
    features['LNG_Rw'], features['LNG_Rsc'] = scores['correctness'][:2]
    features['word_count'] = float(len(words))
    for k, v in features.items():
        if not math.isfinite(v):
            logger.warning('%s: %s is not finite, set to 0', pair.pair_id, k)
            features[k] = 0.0
            flags.add('nonfinite')
        else:
            features[k] = float(v)
    aux = collections.OrderedDict((
        ('char_count', float(len(normalize_ws(simp.raw.content)))),
        ('sentence_count', float(len(simp.sentences))),
        ('avg_word_length', sum(len(t.text) for t in words) / len(words)),
    ))
    evidence = collections.OrderedDict((
        ('fidelity', jsonable(fev)),
        ('fbr', collections.OrderedDict((
            ('inputs', jsonable(inputs)), ('K_S', fbr.K_S), ('K_W', fbr.K_W)))),
        ('violations', [jsonable(v) for v in sorted(
            violations, key=lambda v: (v.sentence_index, v.char_span, v.rule_id))]),
        ('entities', collections.OrderedDict((
            ('source', src_entities), ('retained', retained)))),
    ))
    return Fingerprint(pair.pair_id, pair.label, features, aux, evidence,
                       tuple(sorted(flags)))

def to_feature_vector(fp):
    return [float(fp.features[f]) for f in FEATURES]

def aggregate(fingerprints, label=None):
    '''Per-feature mean and population std. Exact sums keep it order-free.'''
    fingerprints = list(fingerprints)
    if not fingerprints:
        raise EmptyInput('no fingerprints to aggregate for %s' % label)
    n = len(fingerprints)
    mean = collections.OrderedDict()
    std = collections.OrderedDict()
    for f in FEATURES:
        values = [fp.features[f] for fp in fingerprints]
        m = math.fsum(values) / n
        mean[f] = min(max(m, min(values)), max(values))
        std[f] = math.sqrt(math.fsum((v - m) ** 2 for v in values) / n)
    return ModelFingerprint(label, mean, std, n)

### serialization

def label_record(label):
    return label.todict() if label is not None else None

def fingerprint_record(fp):
    return collections.OrderedDict((
        ('pair_id', fp.pair_id),
        ('label', label_record(fp.label)),
        ('features', collections.OrderedDict((f, fp.features[f]) for f in FEATURES)),
        ('aux', collections.OrderedDict((a, fp.aux.get(a, 0.0)) for a in AUX_FEATURES)),
        ('flags', list(fp.flags)),
        ('evidence', fp.evidence),
    ))

def fingerprint_from_record(rec):
    label = rec.get('label')
    return Fingerprint(
        rec['pair_id'],
        ConfigurationLabel.fromdict(label) if label else None,
        collections.OrderedDict((f, float(rec['features'][f])) for f in FEATURES),
        collections.OrderedDict((a, float((rec.get('aux') or {}).get(a, 0.0)))
                                for a in AUX_FEATURES),
        rec.get('evidence') or {},
        tuple(rec.get('flags') or ()))

def _few_shot_cell(value):
    if value is None:
        return ''
    return 'true' if value else 'false'

def matrix_frame(fingerprints):
    rows = []
    for fp in fingerprints:
        row = collections.OrderedDict(pair_id=fp.pair_id)
        row.update((f, fp.features[f]) for f in FEATURES)
        row.update((a, fp.aux.get(a, 0.0)) for a in AUX_FEATURES)
        label = fp.label or ConfigurationLabel(None, None, None)
        row['strategy'] = label.prompt_strategy or ''
        row['size'] = label.model_size or ''
        row['few_shot'] = _few_shot_cell(label.few_shot)
        rows.append(row)
    return pd.DataFrame(rows, columns=('pair_id',) + FEATURES + AUX_FEATURES + LABEL_COLUMNS)

def write_matrix(fingerprints, filename, header):
    df = matrix_frame(fingerprints)
    with open(filename, 'w', encoding='utf-8', newline='') as f:
        f.write('# %s\n' % header_comment(header))
        df.to_csv(f, index=False, lineterminator='\n')
    return df

def read_matrix(filename):
    with open(filename, 'r', encoding='utf-8') as f:
        skip = 1 if f.readline().startswith('#') else 0
    text_cols = ('pair_id',) + LABEL_COLUMNS
    df = pd.read_csv(filename, skiprows=skip, dtype={c: str for c in text_cols},
                     keep_default_na=False)
    for c in FEATURES + AUX_FEATURES:
        if c in df.columns:
            df[c] = pd.to_numeric(df[c], errors='raise').astype(float)
    return df
