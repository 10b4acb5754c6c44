#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import pytest

from conftest import make_doc, FIN

from simprof.model import RawText, EmptyInput, AnnotationFailure, SimprofError
from simprof.text import (
    count_syllables, segment, word_tokens, is_well_formed, extract_windows,
    excerpt_document, excerpt_record, read_corpus, read_excerpts, has_terminal_punct
)
from simprof.utils import write_jsonl

FINITE = [('Er', 'PRON', {}), ('kommt', 'VERB', FIN), ('.', 'PUNCT', {})]
FRAGMENT = [('Hallo', 'INTJ', {}), ('.', 'PUNCT', {})]


class TestSyllables:

    @pytest.mark.parametrize('word, count', [
        ('Hund', 1), ('Bäckerei', 3), ('Aue', 2), ('Quelle', 2),
        ('Theater', 3), ('Verwaltungsgericht', 5),
    ])
    def test_count(self, word, count):
        assert count_syllables(word) == count

    def test_minimum_one(self):
        assert count_syllables('Pst') == 1

    def test_case_insensitive(self):
        assert count_syllables('AUTO') == count_syllables('auto') == 2


class TestSegment:

    def test_two_sentences(self, parse):
        doc = parse('Der Hund schläft. Die Katze spielt im Garten.')
        assert [s.text for s in doc.sentences] == [
            'Der Hund schläft.', 'Die Katze spielt im Garten.']
        assert [len(word_tokens(s)) for s in doc.sentences] == [3, 5]
        assert all(is_well_formed(s) for s in doc.sentences)

    def test_spans_index_content(self, parse):
        doc = parse('Der Hund schläft.  Die Katze spielt im Garten.')
        for s in doc.sentences:
            assert doc.raw.content[s.char_span[0]:s.char_span[1]] == s.text
            for t in s.tokens:
                assert doc.raw.content[t.char_span[0]:t.char_span[1]] == t.text

    def test_abbreviations_do_not_split(self, parse):
        doc = parse('Dr. Müller kommt z.B. heute.')
        assert len(doc.sentences) == 1

    def test_title_person_entity(self, parse):
        doc = parse('Dr. Müller kommt heute.')
        assert [e.text for e in doc.entities] == ['Müller']

    def test_gazetteer_entity(self, parse):
        doc = parse('Der Rhein fließt durch Köln.')
        assert [e.text for e in doc.entities] == ['Rhein', 'Köln']

    def test_empty_input(self, annotator):
        with pytest.raises(EmptyInput):
            segment(RawText('   \n', 'x'), annotator)

    def test_unsupported_language(self, annotator):
        with pytest.raises(AnnotationFailure):
            segment(RawText('The dog sleeps.', 'x', 'en'), annotator)

    def test_terminal_punct_with_closer(self):
        assert has_terminal_punct('Er sagte: „Komm.“')
        assert not has_terminal_punct('Er sagte: „Komm“')


class TestSubClauses:

    def test_subordinate(self):
        doc = make_doc([[
            ('Ich', 'PRON', {}), ('bleibe', 'VERB', FIN), ('zu', 'ADP', {}),
            ('Hause', 'NOUN', {}), (',', 'PUNCT', {}), ('weil', 'SCONJ', {}),
            ('es', 'PRON', {}), ('regnet', 'VERB', FIN), ('.', 'PUNCT', {}),
        ]])
        scs = doc.sub_clauses[0]
        assert [sc.token_range for sc in scs] == [(0, 5), (5, 9)]
        assert [sc.kind for sc in scs] == ['main', 'subordinate']

    def test_relative(self):
        doc = make_doc([[
            ('Das', 'PRON', {}), ('ist', 'AUX', FIN), ('der', 'DET', {}),
            ('Mann', 'NOUN', {}), (',', 'PUNCT', {}), ('der', 'PRON', {'PronType': 'Rel'}),
            ('dort', 'ADV', {}), ('wohnt', 'VERB', FIN), ('.', 'PUNCT', {}),
        ]])
        assert [sc.kind for sc in doc.sub_clauses[0]] == ['main', 'relative']

    def test_coordination(self):
        doc = make_doc([[
            ('Er', 'PRON', {}), ('kocht', 'VERB', FIN), ('und', 'CCONJ', {}),
            ('sie', 'PRON', {}), ('liest', 'VERB', FIN), ('.', 'PUNCT', {}),
        ]])
        scs = doc.sub_clauses[0]
        assert [sc.token_range for sc in scs] == [(0, 2), (2, 6)]
        assert [sc.kind for sc in scs] == ['main', 'main']

    def test_fronted_subordinate_clause(self, parse):
        doc = parse('Weil es regnet, bleiben wir zu Hause.')
        scs = doc.sub_clauses[0]
        assert [sc.kind for sc in scs] == ['subordinate', 'main']
        assert [sc.token_range for sc in scs] == [(0, 4), (4, 9)]

    def test_comma_between_adjectives(self, parse):
        doc = parse('Weil er einen großen, grünen Apfel kauft, lacht sie.')
        tokens = doc.sentences[0].tokens
        assert [t.pos for t in tokens if t.text == 'grünen'] == ['ADJ']
        assert [sc.kind for sc in doc.sub_clauses[0]] == ['subordinate', 'main']

    def test_no_finite_verb(self):
        doc = make_doc([FRAGMENT])
        assert doc.sub_clauses == ((),)
        assert not is_well_formed(doc.sentences[0])


class TestWindows:

    def test_ill_formed_sentence_restarts_run(self):
        doc = make_doc([FINITE, FINITE, FRAGMENT, FINITE, FINITE, FINITE, FINITE])
        excerpts = extract_windows(doc, 2)
        assert [e.excerpt_id for e in excerpts] == ['doc:0000', 'doc:0001', 'doc:0002']
        assert all(len(e.sentences) == 2 for e in excerpts)

    def test_short_article(self):
        doc = make_doc([FINITE, FINITE])
        assert extract_windows(doc, 5) == []

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            extract_windows(make_doc([FINITE]), 0)

    def test_excerpt_document_offsets(self):
        doc = make_doc([FINITE, FINITE, FINITE])
        ex = extract_windows(doc, 2)[0]
        edoc = excerpt_document(ex)
        assert edoc.raw.content == ex.text == 'Er kommt. Er kommt.'
        for s in edoc.sentences:
            assert edoc.raw.content[s.char_span[0]:s.char_span[1]] == s.text
            for t in s.tokens:
                assert edoc.raw.content[t.char_span[0]:t.char_span[1]] == t.text


class TestFiles:

    def test_read_corpus(self, tmp_path):
        fn = str(tmp_path / 'corpus.jsonl')
        write_jsonl(fn, [{'id': 7, 'title': 'T', 'text': 'Er kommt.'}])
        raws = list(read_corpus(fn))
        assert raws == [RawText('Er kommt.', '7', 'de')]

    def test_read_corpus_missing_text(self, tmp_path):
        fn = tmp_path / 'corpus.jsonl'
        fn.write_text(json.dumps({'id': 1, 'title': 'T'}) + '\n', encoding='utf-8')
        with pytest.raises(SimprofError):
            list(read_corpus(str(fn)))

    def test_excerpt_records(self, tmp_path):
        doc = make_doc([FINITE, FINITE])
        ex = extract_windows(doc, 2)[0]
        fn = str(tmp_path / 'excerpts.jsonl')
        write_jsonl(fn, [excerpt_record(ex)], {'seed': 0})
        stored = read_excerpts(fn)
        assert len(stored) == 1
        assert stored[0].excerpt_id == 'doc:0000'
        assert stored[0].text == ex.text
