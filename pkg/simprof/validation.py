#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Distinguishability study. A linear classifier has to tell from fingerprints
which configuration produced a simplification; if it can, the features are
sensitive to that configuration. Every task is reported next to a
length-only baseline and class-prior guessing.
'''

import json
import logging
import collections

from .model import (
    TaskSpec, LinearModel, StudyResult, STRATEGIES, SIZES, FEW_SHOT_STRATEGIES,
    DegenerateTask, UnknownFeature, SingularData, ConfigInvalid
)
from .fingerprint import FEATURES, AUX_FEATURES, SIMPLE_FEATURES, LABEL_COLUMNS
from .utils import sha1hex

import numpy as np
import pandas as pd
from sklearn.linear_model import LogisticRegression
from sklearn.metrics import accuracy_score, f1_score
from sklearn.model_selection import RepeatedStratifiedKFold
from sklearn.preprocessing import StandardScaler

logger = logging.getLogger('validate')

KNOWN_COLUMNS = frozenset(FEATURES + AUX_FEATURES)

def _cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return '' if value is None else str(value)

def _matches(df, predicate):
    mask = pd.Series(True, index=df.index)
    for col, value in predicate.items():
        if col not in LABEL_COLUMNS:
            raise ConfigInvalid('unknown label column %r' % col)
        values = value if isinstance(value, (list, tuple, set, frozenset)) else (value,)
        mask &= df[col].astype(str).isin([_cell(v) for v in values])
    return mask

def task_features(task):
    features = tuple(task.feature_subset) if task.feature_subset else FEATURES
    unknown = [f for f in features if f not in KNOWN_COLUMNS]
    if unknown:
        raise UnknownFeature('task %s: unknown features %s' % (task.name, ', '.join(unknown)))
    return features

def build_dataset(df, task):
    '''
    Returns (X, y): X a DataFrame of the task's features, y a 0/1 array.
    `restrict` filters rows first, so pairwise tasks see only their groups.
    '''
    features = task_features(task)
    missing = [f for f in features if f not in df.columns]
    if missing:
        raise UnknownFeature('matrix lacks columns %s' % ', '.join(missing))
    if task.restrict:
        df = df[_matches(df, task.restrict)]
    y = _matches(df, task.target).to_numpy().astype(int)
    n_pos = int(y.sum())
    if not n_pos or n_pos == len(y):
        raise DegenerateTask('task %s: %d positive of %d rows' % (task.name, n_pos, len(y)))
    return df.loc[:, list(features)].astype(float).reset_index(drop=True), y

def train_linear(X, y, reg_strength=1.0, seed=0):
    '''
    L2-regularized logistic regression on standardized features. Columns
    that are constant on the training data are dropped with a warning.
    '''
    y = np.asarray(y)
    counts = np.bincount(y, minlength=2)
    if counts.min() < 2:
        raise DegenerateTask('need 2 samples per class, got %s' % counts.tolist())
    std = X.std(axis=0, ddof=0)
    dropped = tuple(c for c in X.columns if not std[c] > 0)
    if dropped:
        logger.warning('constant columns dropped: %s', ', '.join(dropped))
    kept = [c for c in X.columns if c not in dropped]
    if not kept:
        raise SingularData('every feature column is constant')
    scaler = StandardScaler()
    Z = scaler.fit_transform(X[kept].to_numpy())
    clf = LogisticRegression(C=1.0 / reg_strength, random_state=seed, max_iter=1000)
    clf.fit(Z, y)
    return LinearModel(tuple(kept), clf.coef_[0].copy(), float(clf.intercept_[0]),
                       scaler.mean_.copy(), scaler.scale_.copy(), reg_strength, dropped)

def decision_function(model, X):
    Z = (X[list(model.features)].to_numpy() - model.mean) / model.scale
    return Z @ model.weights + model.intercept

def predict(model, X):
    return (decision_function(model, X) > 0).astype(int)

def feature_importance(model, features=None):
    '''|standardized weight| per feature, 0 for dropped columns.'''
    weights = dict(zip(model.features, np.abs(model.weights)))
    names = features or (model.features + model.dropped)
    return collections.OrderedDict((f, float(weights.get(f, 0.0))) for f in names)

def _scores(y_true, y_pred):
    return (100.0 * accuracy_score(y_true, y_pred),
            100.0 * f1_score(y_true, y_pred, zero_division=0))

def fold_hash(splits):
    return sha1hex(';'.join(','.join(map(str, sorted(test))) for _, test in splits))

def make_splits(y, folds=5, repeats=5, seed=0):
    if folds < 2:
        raise ConfigInvalid('folds must be >= 2')
    counts = np.bincount(np.asarray(y), minlength=2)
    if counts.min() < folds:
        raise DegenerateTask('smallest class has %d samples for %d folds' % (counts.min(), folds))
    rskf = RepeatedStratifiedKFold(n_splits=folds, n_repeats=repeats, random_state=seed)
    return list(rskf.split(np.zeros((len(y), 1)), y))

def cross_validate(X, y, reg_strength=1.0, folds=5, repeats=5, seed=0,
                   task=None, executor=None, splits=None):
    '''
    Repeated stratified k-fold. Standardization is fitted on each training
    fold only. Pass `splits` to reuse fold assignments across runs.
    '''
    y = np.asarray(y)
    if splits is None:
        splits = make_splits(y, folds, repeats, seed)

    def run(split):
        train, test = split
        model = train_linear(X.iloc[train], y[train], reg_strength, seed)
        return _scores(y[test], predict(model, X.iloc[test])), \
            feature_importance(model, tuple(X.columns))

    runs = list(executor.map(run, splits) if executor is not None else map(run, splits))
    acc = np.array([r[0][0] for r in runs])
    f1 = np.array([r[0][1] for r in runs])
    importance = collections.OrderedDict(
        (c, float(np.mean([r[1][c] for r in runs]))) for c in X.columns)
    return StudyResult(task, float(acc.mean()), float(acc.std()),
                       float(f1.mean()), float(f1.std()), folds, repeats,
                       importance, fold_hash(splits), len(y), float(y.mean()))

def random_baseline(y, trials=1000, seed=0, task=None):
    '''Guesses positive with the empirical class prior, `trials` times.'''
    y = np.asarray(y).astype(bool)
    p = y.mean()
    rng = np.random.default_rng(seed)
    pred = rng.random((trials, len(y))) < p
    tp = (pred & y).sum(axis=1)
    fp = (pred & ~y).sum(axis=1)
    fn = (~pred & y).sum(axis=1)
    acc = 100.0 * (pred == y).mean(axis=1)
    denom = 2 * tp + fp + fn
    f1 = 100.0 * np.divide(2 * tp, denom, out=np.zeros(trials), where=denom > 0)
    return StudyResult(task, float(acc.mean()), float(acc.std()),
                       float(f1.mean()), float(f1.std()), 0, trials,
                       collections.OrderedDict(), '', len(y), float(p))

def simple_baseline(df, task, **kwargs):
    task = task._replace(feature_subset=SIMPLE_FEATURES)
    X, y = build_dataset(df, task)
    return cross_validate(X, y, task=task.name, **kwargs)

def ablate(df, task, dropped_feature, **kwargs):
    '''Paired runs on identical folds, with and without one feature.'''
    features = task_features(task)
    if dropped_feature not in features:
        raise UnknownFeature('task %s has no feature %s' % (task.name, dropped_feature))
    X, y = build_dataset(df, task)
    splits = make_splits(y, kwargs.get('folds', 5), kwargs.get('repeats', 5),
                         kwargs.get('seed', 0))
    with_ = cross_validate(X, y, task=task.name, splits=splits, **kwargs)
    without = cross_validate(X.drop(columns=[dropped_feature]), y, task=task.name,
                             splits=splits, **kwargs)
    return with_, without

### task catalogue

def default_tasks():
    '''
    One-vs-rest per strategy and size, pairwise size tasks and few-shot
    detection within each few-shot strategy. Returns (tasks, ablations).
    '''
    tasks = []
    for s in STRATEGIES:
        tasks.append(TaskSpec(s.capitalize(), {'strategy': s}))
    for z in SIZES:
        tasks.append(TaskSpec(z, {'size': z}))
    for a, b in (('1B', '4B'), ('4B', '12B'), ('1B', '12B')):
        tasks.append(TaskSpec('%s vs. %s' % (a, b), {'size': a}, {'size': [a, b]}))
    for s in sorted(FEW_SHOT_STRATEGIES, key=STRATEGIES.index):
        tasks.append(TaskSpec('%s FS vs. NoFS' % s.capitalize(), {'few_shot': True},
                              {'strategy': [s]}))
    ablations = [(t.name, 'ASL') for t in tasks if t.restrict is None]
    return tasks, ablations

def load_tasks(filename):
    '''
    JSON: {"tasks": [{"name", "target", "restrict"?, "features"?}],
           "ablations": [[task name, feature], ...]}
    '''
    with open(filename, 'r', encoding='utf-8') as f:
        obj = json.load(f)
    tasks = [TaskSpec(t['name'], t['target'], t.get('restrict'), t.get('features'))
             for t in obj.get('tasks', ())]
    names = set(t.name for t in tasks)
    if len(names) != len(tasks):
        raise ConfigInvalid('%s: duplicated task names' % filename)
    ablations = [tuple(a) for a in obj.get('ablations', ())]
    for name, feature in ablations:
        if name not in names:
            raise ConfigInvalid('%s: ablation of unknown task %s' % (filename, name))
    return tasks, ablations

def run_study(df, tasks, ablations=(), reg_strength=1.0, folds=5, repeats=5,
              seed=0, trials=1000, executor=None):
    '''Runs every task with both baselines, then the ablations.'''
    cv = dict(reg_strength=reg_strength, folds=folds, repeats=repeats,
              seed=seed, executor=executor)
    results = collections.OrderedDict()
    for task in tasks:
        X, y = build_dataset(df, task)
        logger.info('task %s: %d samples, %.1f%% positive', task.name, len(y), 100 * y.mean())
        results[task.name] = collections.OrderedDict((
            ('full', cross_validate(X, y, task=task.name, **cv)),
            ('simple', simple_baseline(df, task, **cv)),
            ('random', random_baseline(y, trials, seed, task.name)),
        ))
    by_name = {t.name: t for t in tasks}
    ablated = []
    for name, feature in ablations:
        with_, without = ablate(df, by_name[name], feature, **cv)
        ablated.append((name, feature, with_, without))
    return results, ablated

def result_record(r):
    return collections.OrderedDict((
        ('task', r.task),
        ('accuracy', [r.accuracy_mean, r.accuracy_std]),
        ('f1', [r.f1_mean, r.f1_std]),
        ('folds', r.folds),
        ('repeats', r.repeats),
        ('n_samples', r.n_samples),
        ('positive_rate', r.positive_rate),
        ('fold_hash', r.fold_hash),
        ('importance', r.importance),
    ))

def study_record(results, ablated):
    return collections.OrderedDict((
        ('tasks', [collections.OrderedDict(
            [('task', name)] + [(k, result_record(v)) for k, v in arms.items()])
            for name, arms in results.items()]),
        ('ablations', [collections.OrderedDict((
            ('task', name), ('feature', feature),
            ('with', result_record(w)), ('without', result_record(wo))))
            for name, feature, w, wo in ablated]),
    ))

def importance_frame(results):
    '''Tasks x canonical features, mean |standardized weight| of the full model.'''
    return pd.DataFrame(
        [[arms['full'].importance.get(f, 0.0) for f in FEATURES] for arms in results.values()],
        index=pd.Index(list(results), name='task'), columns=list(FEATURES))
