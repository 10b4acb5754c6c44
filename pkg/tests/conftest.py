#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import sys
sys.path.append(os.path.normpath(os.path.join(os.path.dirname(__file__), '..')))

import pytest
import numpy as np
import pandas as pd

from simprof.annotation import BuiltinAnnotator
from simprof.embedding import HashingEmbedding
from simprof.fingerprint import FEATURES, AUX_FEATURES
from simprof.model import RawText, all_labels
from simprof.nli import MockNli
from simprof.text import build_segmented, segment

FULL_CAPS = frozenset(('segmentation', 'pos', 'morphology', 'ner'))

FIN = {'VerbForm': 'Fin', 'Tense': 'Pres', 'Mood': 'Ind'}

NO_SPACE_BEFORE = frozenset('.,!?;:')

def records_for(sentences, entities=()):
    '''
    Builds annotation records from [[(text, pos, morph), ...], ...].
    Tokens are joined by single spaces, punctuation attaches to the left.
    `entities` are surface strings marked wherever they first occur.
    '''
    content = ''
    tokens = []
    sents = []
    for sent in sentences:
        if content:
            content += ' '
        start = len(content)
        for k, (text, pos, morph) in enumerate(sent):
            if k and text not in NO_SPACE_BEFORE:
                content += ' '
            tokens.append({'text': text, 'start': len(content),
                           'end': len(content) + len(text), 'pos': pos,
                           'morph': dict(morph or {}), 'head': len(tokens), 'dep': ''})
            content += text
        sents.append({'start': start, 'end': len(content)})
    ents = []
    for e in entities:
        i = content.index(e)
        ents.append({'text': e, 'start': i, 'end': i + len(e), 'label': 'LOC'})
    return content, {'sentences': sents, 'tokens': tokens, 'entities': ents}

def make_doc(sentences, entities=(), capabilities=FULL_CAPS, source_id='doc'):
    content, records = records_for(sentences, entities)
    return build_segmented(RawText(content, source_id), records, capabilities)

@pytest.fixture(scope='session')
def annotator():
    return BuiltinAnnotator()

@pytest.fixture
def nli():
    return MockNli()

@pytest.fixture
def embedding():
    return HashingEmbedding({'dimension': 64})

@pytest.fixture
def parse(annotator):
    def parse(text, source_id='doc'):
        return segment(RawText(text, source_id), annotator)
    return parse

def synthetic_matrix(n_per_label=6, separation=2.0, informative=('COR', 'COV', 'SIM', 'ASL', 'LEN'),
                     target='size', seed=0):
    '''
    A feature matrix over all 18 configurations with Gaussian noise. The
    `informative` features shift by `separation` standard deviations between
    the values of the `target` label column.
    '''
    rng = np.random.default_rng(seed)
    rows = []
    for label in all_labels():
        value = {'strategy': label.prompt_strategy, 'size': label.model_size,
                 'few_shot': label.few_shot}[target]
        for n in range(n_per_label):
            row = {'pair_id': 'a:%04d|%s' % (n, label)}
            for f in FEATURES + AUX_FEATURES:
                row[f] = rng.normal()
            for f in informative:
                row[f] += separation * _level(target, value)
            row['strategy'] = label.prompt_strategy
            row['size'] = label.model_size
            row['few_shot'] = '' if label.few_shot is None else ('true' if label.few_shot else 'false')
            rows.append(row)
    return pd.DataFrame(rows)

def _level(target, value):
    if target == 'size':
        return {'1B': 0, '4B': 1, '12B': 2}[value]
    elif target == 'strategy':
        return {'plain': 0, 'target': 1, 'rules': 2, 'content': 3}[value]
    return 1 if value else 0
