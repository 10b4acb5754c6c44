#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import numpy as np
import pandas as pd
import pytest

from conftest import synthetic_matrix

from simprof.fingerprint import FEATURES
from simprof.model import TaskSpec, DegenerateTask, UnknownFeature, SingularData, ConfigInvalid
from simprof.validation import (
    build_dataset, train_linear, predict, feature_importance, make_splits,
    cross_validate, random_baseline, simple_baseline, ablate, default_tasks, load_tasks,
    run_study, study_record, importance_frame
)

PAIRWISE = TaskSpec('1B vs. 4B', {'size': '1B'}, {'size': ['1B', '4B']})


def labels(n, positive):
    return np.array([1] * positive + [0] * (n - positive))


class TestDataset:

    def test_one_vs_rest(self):
        X, y = build_dataset(synthetic_matrix(), TaskSpec('Plain', {'strategy': 'plain'}))
        assert X.shape == (108, 23)
        assert list(X.columns) == list(FEATURES)
        assert y.sum() == 18

    def test_restrict(self):
        X, y = build_dataset(synthetic_matrix(), PAIRWISE)
        assert len(y) == 72
        assert y.sum() == 36

    def test_few_shot(self):
        task = TaskSpec('Rules FS vs. NoFS', {'few_shot': True}, {'strategy': ['rules']})
        X, y = build_dataset(synthetic_matrix(), task)
        assert (len(y), y.sum()) == (36, 18)

    def test_degenerate(self):
        task = TaskSpec('none', {'size': '1B'}, {'size': ['4B']})
        with pytest.raises(DegenerateTask):
            build_dataset(synthetic_matrix(), task)

    def test_unknown_feature(self):
        with pytest.raises(UnknownFeature):
            build_dataset(synthetic_matrix(), TaskSpec('x', {'size': '1B'}, None, ('COR', 'XYZ')))

    def test_unknown_column(self):
        with pytest.raises(ConfigInvalid):
            build_dataset(synthetic_matrix(), TaskSpec('x', {'model': '1B'}))


class TestLinear:

    def test_constant_column_dropped(self):
        df = synthetic_matrix(n_per_label=4)
        df['LEN'] = 1.0
        X, y = build_dataset(df, PAIRWISE)
        model = train_linear(X, y)
        assert model.dropped == ('LEN',)
        assert 'LEN' not in model.features
        imp = feature_importance(model, tuple(X.columns))
        assert imp['LEN'] == 0.0
        assert list(imp) == list(FEATURES)
        assert set(predict(model, X)) <= {0, 1}

    def test_all_constant(self):
        X = pd.DataFrame({'COR': [1.0] * 6, 'COV': [2.0] * 6})
        with pytest.raises(SingularData):
            train_linear(X, labels(6, 3))

    def test_too_few_per_class(self):
        X = pd.DataFrame({'COR': np.arange(6.0)})
        with pytest.raises(DegenerateTask):
            train_linear(X, labels(6, 1))


class TestCrossValidation:

    def test_separable(self):
        df = synthetic_matrix(n_per_label=20, separation=2.0)
        X, y = build_dataset(df, PAIRWISE)
        r = cross_validate(X, y, folds=5, repeats=2)
        assert r.f1_mean >= 95
        top = sorted(r.importance, key=r.importance.get, reverse=True)[:5]
        assert set(top) == {'COR', 'COV', 'SIM', 'ASL', 'LEN'}

    def test_noise(self):
        df = synthetic_matrix(n_per_label=20, separation=0.0)
        X, y = build_dataset(df, PAIRWISE)
        assert cross_validate(X, y, folds=5, repeats=2).accuracy_mean < 70

    def test_signal_outside_length(self):
        df = synthetic_matrix(n_per_label=20, informative=('COR', 'COV', 'SIM', 'COH', 'ENT'))
        X, y = build_dataset(df, PAIRWISE)
        full = cross_validate(X, y, folds=5, repeats=2)
        simple = simple_baseline(df, PAIRWISE, folds=5, repeats=2)
        assert full.f1_mean - simple.f1_mean >= 20

    def test_ablating_the_only_signal(self):
        df = synthetic_matrix(n_per_label=20, informative=('ASL',))
        with_, without = ablate(df, PAIRWISE, 'ASL', folds=5, repeats=2)
        assert with_.f1_mean - without.f1_mean >= 15

    def test_reproducible_folds(self):
        X, y = build_dataset(synthetic_matrix(), PAIRWISE)
        a = cross_validate(X, y, folds=3, repeats=2, seed=5)
        b = cross_validate(X, y, folds=3, repeats=2, seed=5)
        c = cross_validate(X, y, folds=3, repeats=2, seed=6)
        assert a == b
        assert a.fold_hash != c.fold_hash
        assert (a.n_samples, a.positive_rate) == (72, 0.5)

    def test_too_few_for_folds(self):
        with pytest.raises(DegenerateTask):
            make_splits(labels(20, 3), folds=5)
        with pytest.raises(ConfigInvalid):
            make_splits(labels(20, 10), folds=1)

    def test_ablation_paired(self):
        with_, without = ablate(synthetic_matrix(), PAIRWISE, 'ASL', folds=3, repeats=2)
        assert with_.fold_hash == without.fold_hash
        assert 'ASL' in with_.importance
        assert 'ASL' not in without.importance
        with pytest.raises(UnknownFeature):
            ablate(synthetic_matrix(), PAIRWISE, 'char_count')


class TestRandomBaseline:

    @pytest.mark.parametrize('n_pos, acc, f1', [
        (100, 72.2, 16.7),
        (300, 50.0, 50.0),
        (200, 55.6, 33.3),
    ])
    def test_prior(self, n_pos, acc, f1):
        r = random_baseline(labels(600, n_pos), trials=1000, seed=0)
        assert r.accuracy_mean == pytest.approx(acc, abs=1.0)
        assert r.f1_mean == pytest.approx(f1, abs=1.0)
        assert r.positive_rate == pytest.approx(n_pos / 600)

    def test_seeded(self):
        y = labels(60, 10)
        assert random_baseline(y, seed=3) == random_baseline(y, seed=3)


class TestStudy:

    def test_default_tasks(self):
        tasks, ablations = default_tasks()
        assert len(tasks) == 12
        assert [t.name for t in tasks[:4]] == ['Plain', 'Target', 'Rules', 'Content']
        assert tasks[-1] == TaskSpec('Content FS vs. NoFS', {'few_shot': True},
                                     {'strategy': ['content']})
        assert len(ablations) == 7
        assert all(f == 'ASL' for _, f in ablations)

    def test_load_tasks(self, tmp_path):
        fn = tmp_path / 'tasks.json'
        fn.write_text(json.dumps({
            'tasks': [{'name': 'big', 'target': {'size': '12B'}, 'features': ['COR', 'LEN']}],
            'ablations': [['big', 'LEN']],
        }), encoding='utf-8')
        tasks, ablations = load_tasks(str(fn))
        assert tasks == [TaskSpec('big', {'size': '12B'}, None, ['COR', 'LEN'])]
        assert ablations == [('big', 'LEN')]
        fn.write_text(json.dumps({'tasks': [], 'ablations': [['big', 'LEN']]}), encoding='utf-8')
        with pytest.raises(ConfigInvalid):
            load_tasks(str(fn))

    def test_run(self):
        tasks, ablations = default_tasks()
        results, ablated = run_study(synthetic_matrix(), tasks, ablations[:2],
                                     folds=3, repeats=1, trials=50)
        assert list(results) == [t.name for t in tasks]
        for arms in results.values():
            assert list(arms) == ['full', 'simple', 'random']
            assert 0 <= arms['full'].accuracy_mean <= 100
        assert len(ablated) == 2
        record = json.loads(json.dumps(study_record(results, ablated)))
        assert record['tasks'][0]['task'] == 'Plain'
        assert record['ablations'][0]['feature'] == 'ASL'
        assert importance_frame(results).shape == (12, 23)
