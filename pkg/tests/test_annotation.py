#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from conftest import make_doc, records_for, FIN

from simprof.annotation import StaticAnnotator, HttpAnnotator, tokenize, split_sentences
from simprof.cache import MemoryCache
from simprof.langtool import LanguageToolChecker, utf16_to_codepoints
from simprof.model import RawText, AnnotationFailure, ProviderFailure
from simprof.text import segment


def morph_of(doc, word):
    return next(t.morph for s in doc.sentences for t in s.tokens if t.text == word)


class TestBuiltinAnnotator:

    def test_tokenize(self):
        assert [s.text for s in tokenize('Das kostet 3,50 Euro, z.B. heute...')] == [
            'Das', 'kostet', '3,50', 'Euro', ',', 'z.B.', 'heute', '...']

    def test_ordinal_before_month(self):
        spans = tokenize('Am 3. Oktober kam er an.')
        assert len(split_sentences(spans)) == 1

    def test_passive(self, parse):
        doc = parse('Das Haus wurde gebaut.')
        assert morph_of(doc, 'wurde')['Voice'] == 'Pass'
        assert morph_of(doc, 'gebaut') == {'VerbForm': 'Part', 'Voice': 'Pass'}

    def test_genitive(self, parse):
        doc = parse('Das Auto des Vaters ist rot.')
        gen = [t.text for t in doc.sentences[0].tokens if t.morph.get('Case') == 'Gen']
        assert gen == ['des', 'Vaters']

    def test_subjunctive(self, parse):
        doc = parse('Er wäre gern hier.')
        assert morph_of(doc, 'wäre') == {'VerbForm': 'Fin', 'Tense': 'Past', 'Mood': 'Sub'}

    def test_subordinate_clause(self, parse):
        doc = parse('Er bleibt, weil es regnet.')
        assert [sc.kind for sc in doc.sub_clauses[0]] == ['main', 'subordinate']

    def test_strong_past(self, parse):
        doc = parse('Er kam spät.')
        assert morph_of(doc, 'kam') == {'VerbForm': 'Fin', 'Tense': 'Past', 'Mood': 'Ind'}

    def test_capabilities(self, annotator):
        assert 'dependency' not in annotator.capabilities
        assert 'ner' in annotator.capabilities


class CountingAnnotator(StaticAnnotator):

    def __init__(self, config=None):
        super().__init__(config)
        self.calls = 0

    def annotate(self, text, language='de'):
        self.calls += 1
        return super().annotate(text, language)


class TestStaticAnnotator:

    def test_records(self):
        content, records = records_for([[('Er', 'PRON', {}), ('kommt', 'VERB', FIN),
                                         ('.', 'PUNCT', {})]])
        ann = StaticAnnotator({'records': {content: records}})
        doc = segment(RawText(content, 'x'), ann)
        assert doc.sentences[0].has_finite_verb

    def test_unknown_text(self):
        with pytest.raises(AnnotationFailure):
            segment(RawText('Er kommt.', 'x'), StaticAnnotator())

    def test_cached(self):
        content, records = records_for([[('Er', 'PRON', {}), ('kommt', 'VERB', FIN),
                                         ('.', 'PUNCT', {})]])
        ann = CountingAnnotator({'records': {content: records}})
        cache = MemoryCache()
        a = segment(RawText(content, 'x'), ann, cache)
        b = segment(RawText(content, 'y'), ann, cache)
        assert ann.calls == 1
        assert a.sentences == b.sentences

    def test_bad_span(self):
        content, records = records_for([[('Er', 'PRON', {}), ('kommt', 'VERB', FIN)]])
        records['tokens'][1]['end'] = 99
        with pytest.raises(AnnotationFailure):
            segment(RawText(content, 'x'), StaticAnnotator({'records': {content: records}}))


class TestHttpAnnotator:

    def test_malformed_response(self, monkeypatch):
        ann = HttpAnnotator({'url': 'http://localhost:1/annotate'})
        monkeypatch.setattr(ann.endpoint, 'post', lambda *a, **kw: {'sentences': []})
        with pytest.raises(AnnotationFailure):
            segment(RawText('Er kommt.', 'x'), ann)

    def test_no_url(self):
        with pytest.raises(ProviderFailure):
            HttpAnnotator({})


class TestLanguageTool:

    def test_utf16_offsets(self):
        convert = utf16_to_codepoints('a\U0001F600b')
        assert convert(0) == 0
        assert convert(3) == 2

    def test_violations(self, monkeypatch):
        doc = make_doc([[('Er', 'PRON', {}), ('kommt', 'VERB', FIN), ('.', 'PUNCT', {})]])
        checker = LanguageToolChecker({'url': 'http://localhost:1',
                                       'simplicity_categories': ['STYLE']})
        monkeypatch.setattr(checker.endpoint, 'post', lambda *a, **kw: {'matches': [
            {'offset': 3, 'length': 5, 'rule': {'id': 'X', 'category': {'id': 'STYLE'}}},
            {'offset': 0, 'length': 2, 'rule': {'id': 'Y', 'category': {'id': 'GRAMMAR'}}},
        ]})
        violations, categories = checker.violations(doc)
        assert [(v.rule_id, v.violating_token_indices) for v in violations] == [
            ('lt:X', (1,)), ('lt:Y', (0,))]
        assert categories == {'lt:X': 'simplicity', 'lt:Y': 'correctness'}
        assert violations[0].violating_subclause_indices == (0,)
