#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import json
import xml.etree.ElementTree as ET

import pytest

from simprof import command
from simprof.utils import read_jsonl

SVG = '{http://www.w3.org/2000/svg}'

ARTICLES = [
    ('hund', 'Der Hund schläft. Die Katze spielt.'),
    ('kind', 'Das Kind lacht. Der Vater arbeitet.'),
    ('rhein', 'Der Rhein fließt durch Köln. Er kommt nicht.'),
    ('wetter', 'Die Sonne scheint. Der Wind weht.'),
    ('leer', ''),
]

CONFIG = {
    'sampler': {'window': 2, 'budget': 3, 'quota_min': 1, 'quota_share': 0.0},
    'validation': {'folds': 3, 'repeats': 1, 'trials': 20},
}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith('SIMPROF_'):
            monkeypatch.delenv(key)


@pytest.fixture
def workspace(tmp_path):
    corpus = tmp_path / 'corpus.jsonl'
    with open(str(corpus), 'w', encoding='utf-8') as f:
        for aid, text in ARTICLES:
            f.write(json.dumps({'id': aid, 'title': aid, 'text': text}, ensure_ascii=False) + '\n')
    config = tmp_path / 'config.json'
    config.write_text(json.dumps(CONFIG), encoding='utf-8')
    return tmp_path


def run(ws, out, *argv, config=None):
    return command.main(['--config', str(config or ws / 'config.json'),
                         '--out-dir', str(ws / out)] + list(argv))


def pipeline(ws, out, jobs=4):
    jobs = ['--jobs', str(jobs)]
    assert command.main(jobs + ['--config', str(ws / 'config.json'), '--out-dir', str(ws / out),
                                'sample', str(ws / 'corpus.jsonl')]) == 0
    for cmd in ('generate', 'profile', 'validate', 'report'):
        assert command.main(jobs + ['--config', str(ws / 'config.json'),
                                    '--out-dir', str(ws / out), cmd]) == 0
    return ws / out


def body(path):
    '''The artifact without its header line.'''
    with open(str(path), encoding='utf-8') as f:
        return [l for l in f if not l.startswith(('# toolkit=', '{"header"', '<!--'))]


class TestPipeline:

    def test_artifacts(self, workspace):
        out = pipeline(workspace, 'out')
        excerpts = list(read_jsonl(str(out / 'excerpts.jsonl')))
        assert len(excerpts) == 3
        assert all(e['excerpt_id'].endswith(':0000') for e in excerpts)
        assert len(list(read_jsonl(str(out / 'profiles.jsonl')))) == 4
        with open(str(out / 'excerpts.jsonl'), encoding='utf-8') as f:
            header = json.loads(f.readline())['header']
        assert header['toolkit'] == 'simprof' and header['seed'] == 0
        assert len(header['config_hash']) == 40

        coverage = json.loads((out / 'coverage.json').read_text(encoding='utf-8'))
        assert len(coverage['selected']) == 3

        assert len(list(read_jsonl(str(out / 'simplifications.jsonl')))) == 54
        assert len(list(read_jsonl(str(out / 'fingerprints.jsonl')))) == 54
        matrix = body(out / 'matrix.csv')
        assert matrix[0].startswith('pair_id,')
        assert len(matrix) == 55

        with open(str(out / 'study.json'), encoding='utf-8') as f:
            study = json.load(f)
        assert list(study)[0] == 'header'
        assert [t['task'] for t in study['tasks']][:4] == ['Plain', 'Target', 'Rules', 'Content']
        assert (out / 'study.md').is_file()
        with open(str(out / 'importance.csv'), encoding='utf-8') as f:
            assert f.readline().startswith('# toolkit=simprof')

        root = ET.parse(str(out / 'spider-strategy.svg')).getroot()
        (series,) = [g for g in root.iter(SVG + 'g') if g.get('class') == 'series']
        assert len(list(series.iter(SVG + 'polygon'))) == 4
        assert (out / 'summary-strategy.md').is_file()

    def test_groupings(self, workspace):
        out = pipeline(workspace, 'out')
        for group_by in ('size', 'few_shot', 'config'):
            assert run(workspace, 'out', 'report', '--group-by', group_by) == 0
            assert (out / ('spider-%s.svg' % group_by)).is_file()
        summary = (out / 'summary-size.md').read_text(encoding='utf-8')
        for size in ('1B', '4B', '12B'):
            assert size in summary

    def test_jobs_do_not_change_results(self, workspace):
        a = pipeline(workspace, 'a', jobs=1)
        b = pipeline(workspace, 'b', jobs=4)
        # records are appended in completion order
        assert sorted(body(a / 'simplifications.jsonl')) == \
            sorted(body(b / 'simplifications.jsonl'))
        for name in ('excerpts.jsonl', 'fingerprints.jsonl', 'matrix.csv', 'importance.csv',
                     'spider-strategy.svg'):
            assert body(a / name) == body(b / name), name
        studies = []
        for d in (a, b):
            with open(str(d / 'study.json'), encoding='utf-8') as f:
                study = json.load(f)
            del study['header']
            studies.append(study)
        assert studies[0] == studies[1]

    def test_resume_generation(self, workspace):
        out = pipeline(workspace, 'out')
        before = body(out / 'simplifications.jsonl')
        assert run(workspace, 'out', 'generate') == 0
        assert body(out / 'simplifications.jsonl') == before
        assert run(workspace, 'out', 'generate', '--fresh') == 0
        assert sorted(body(out / 'simplifications.jsonl')) == sorted(before)


class TestExitCodes:

    def test_missing_corpus(self, workspace):
        assert run(workspace, 'out', 'sample', str(workspace / 'none.jsonl')) == 2

    def test_budget_exceeds_corpus(self, workspace):
        assert run(workspace, 'out', 'sample', str(workspace / 'corpus.jsonl'),
                   '--budget', '10') == 2

    def test_bad_config(self, workspace):
        bad = workspace / 'bad.py'
        bad.write_text('settings = {}\n', encoding='utf-8')
        assert run(workspace, 'out', 'sample', config=bad) == 2

    def test_missing_inputs(self, workspace):
        for cmd in ('generate', 'profile', 'validate', 'report'):
            assert run(workspace, 'empty', cmd) == 2

    def test_provider_failure(self, workspace):
        assert run(workspace, 'out', 'sample', str(workspace / 'corpus.jsonl')) == 0
        assert run(workspace, 'out', 'generate') == 0
        config = workspace / 'http.json'
        config.write_text(json.dumps(dict(CONFIG, providers={'nli': {'type': 'http'}})),
                          encoding='utf-8')
        assert run(workspace, 'out', 'profile', config=config) == 3

    def test_out_dir_is_a_file(self, workspace):
        (workspace / 'taken').write_text('', encoding='utf-8')
        assert run(workspace, 'taken', 'sample', str(workspace / 'corpus.jsonl')) == 1
