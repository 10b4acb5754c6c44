#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Annotation providers. Every provider returns the record form

    {'sentences': [{'start', 'end'}],
     'tokens': [{'text', 'start', 'end', 'pos', 'morph', 'head', 'dep'}],
     'entities': [{'text', 'start', 'end', 'label'}]}

with character offsets into the input and `head` as a document-level token
index. text.build_segmented turns it into a SegmentedText.
'''

import re
import json
import logging
import collections

from . import lexicon
from .model import AnnotationProvider, AnnotationFailure
from .remote import JsonEndpoint
from .utils import normalize_ws

logger = logging.getLogger('annotate')

Span = collections.namedtuple('Span', 'text start end')

re_token = re.compile(r'''(?x)
    (?:[^\W\d_]\.){2,}              # dotted abbreviations: z.B. u.a.
  | \d+(?:[.,:]\d+)*                # numbers
  | [^\W\d_]\w*(?:[-'’]\w+)*        # words and hyphenated compounds
  | \.{3}|…                         # ellipsis
  | \S                              # anything else, one char at a time
''')

TERMINALS = frozenset(('.', '!', '?', '…', '...'))
CLOSERS = frozenset(('"', "'", '“', '”', '»', '«', '’', ')', ']'))
SEGMENT_BREAKS = frozenset((',', ';', ':', '(', ')', '–', '—', '-'))
CAPABILITIES = frozenset(('segmentation', 'pos', 'morphology', 'dependency', 'ner'))

PARTICIPLE_PREFIXES = ('ge', 'be', 'ver', 'er', 'ent', 'zer', 'emp', 'miss', 'über', 'unter')

def _participle_shape(low):
    if low.endswith('iert'):
        return True
    return len(low) >= 5 and low.startswith(PARTICIPLE_PREFIXES) and low.endswith(('t', 'en'))

def tokenize(text):
    return [Span(m.group(0), m.start(), m.end()) for m in re_token.finditer(text)]

def _is_boundary(spans, i):
    tok = spans[i]
    if i + 1 >= len(spans):
        return True
    nxt = spans[i + 1].text
    if tok.text != '.':
        return True
    prev = spans[i - 1] if i else None
    if prev is not None and prev.end == tok.start:
        low = prev.text.lower()
        if low in lexicon.abbreviations:
            if not (low in ('usw', 'etc') and nxt[:1].isupper()):
                return False
        if prev.text.isdigit():
            nlow = nxt.lower()
            # ordinals: "3. Oktober", "19. Jahrhundert"
            if nlow in lexicon.months or nlow.startswith('jahrhundert'):
                return False
    if nxt[:1].islower():
        return False
    return True

def split_sentences(spans):
    '''Returns [(first token index, end token index)], half-open.'''
    ranges = []
    start = 0
    i = 0
    while i < len(spans):
        if spans[i].text in TERMINALS and _is_boundary(spans, i):
            end = i + 1
            while end < len(spans) and spans[end].text in CLOSERS:
                end += 1
            ranges.append((start, end))
            start = i = end
            continue
        i += 1
    if start < len(spans):
        ranges.append((start, len(spans)))
    return ranges


class BuiltinAnnotator(AnnotationProvider):
    '''
    Rule-based German annotator: segmentation, coarse POS, the morphology
    the rules need (VerbForm, Tense, Mood, Voice, Case) and gazetteer NER.
    No dependency layer.
    '''
    capabilities = frozenset(('segmentation', 'pos', 'morphology', 'ner'))
    default_concurrency = 16

    def __init__(self, config=None):
        super().__init__(config)
        self.gazetteer = lexicon.gazetteer(self.config.get('gazetteer'))
        self.max_entity_words = max(
            (len(tokenize(k)) for k in self.gazetteer), default=1)

    @property
    def provider_id(self):
        return 'annotation:builtin'

    def annotate(self, text, language='de'):
        if language.split('-')[0] != 'de':
            raise AnnotationFailure('builtin annotator only handles German, got %r' % language)
        spans = tokenize(text)
        ranges = split_sentences(spans)
        tags = []
        for a, b in ranges:
            tags.extend(self.tag_sentence([s.text for s in spans[a:b]]))
        entities, entity_tokens = self.find_entities(text, spans, ranges)
        tokens = []
        for n, (span, (pos, morph)) in enumerate(zip(spans, tags)):
            if n in entity_tokens and pos == 'NOUN':
                pos = 'PROPN'
            tokens.append({'text': span.text, 'start': span.start, 'end': span.end,
                           'pos': pos, 'morph': morph, 'head': n, 'dep': ''})
        return {
            'sentences': [{'start': spans[a].start, 'end': spans[b - 1].end}
                          for a, b in ranges],
            'tokens': tokens,
            'entities': entities,
        }

    def tag_sentence(self, words):
        n = len(words)
        tags = [None] * n
        morphs = [{} for _ in range(n)]
        lemmas = [None] * n
        segments = [[]]
        seg_fin = 0
        pending_gen = False

        def new_segment():
            nonlocal seg_fin
            if segments[-1]:
                segments.append([])
            seg_fin = 0

        def finite(i, tense, mood='Ind'):
            nonlocal seg_fin
            morphs[i] = {'VerbForm': 'Fin', 'Tense': tense, 'Mood': mood}
            seg_fin += 1

        def demote(i):
            nonlocal seg_fin
            low = words[i].lower()
            if low.startswith('ge') or low.endswith('t'):
                morphs[i] = {'VerbForm': 'Part'}
            else:
                morphs[i] = {'VerbForm': 'Inf'}
            seg_fin -= 1

        for i, w in enumerate(words):
            low = w.lower()
            prev = tags[i - 1] if i else None
            nxt = words[i + 1] if i + 1 < n else None
            nxt_cap = bool(nxt) and nxt[:1].isupper()
            initial = i == 0 or words[i - 1] in SEGMENT_BREAKS
            if not any(c.isalnum() for c in w):
                tags[i] = 'PUNCT'
                if w in SEGMENT_BREAKS:
                    new_segment()
                    pending_gen = False
                continue
            segments[-1].append(i)
            if w[0].isdigit():
                tags[i] = 'NUM'
            elif low == 'sein':
                if nxt_cap:
                    tags[i] = 'DET'
                else:
                    tags[i] = 'AUX'
                    morphs[i] = {'VerbForm': 'Inf'}
                    lemmas[i] = 'sein'
            elif low in lexicon.auxiliaries:
                lemma, tense, mood = lexicon.auxiliaries[low]
                tags[i] = 'AUX'
                lemmas[i] = lemma
                # verb-final clause: "..., weil es verkauft wurde"
                if (prev == 'VERB' and morphs[i - 1].get('VerbForm') == 'Fin'
                        and words[i - 1].lower() not in lexicon.strong_past):
                    demote(i - 1)
                if low in lexicon.ambiguous_auxiliaries and seg_fin:
                    morphs[i] = {'VerbForm': 'Inf'}
                else:
                    finite(i, tense, mood)
            elif low in lexicon.strong_past and (i == 0 or w[0].islower()):
                tags[i] = 'VERB'
                finite(i, 'Past')
            elif low in lexicon.subordinators or (
                    low in lexicon.clause_initial_subordinators and initial and not (
                        low in ('seit', 'bis', 'während') and nxt
                        and nxt.lower() in lexicon.determiners)):
                tags[i] = 'SCONJ'
                segments[-1].pop()
                new_segment()
                segments[-1].append(i)
            elif i and low in lexicon.relative_pronouns and self._is_relative(words, tags, i):
                tags[i] = 'PRON'
                morphs[i] = {'PronType': 'Rel'}
                if low in ('dessen', 'deren'):
                    morphs[i]['Case'] = 'Gen'
                    pending_gen = True
            elif low in lexicon.coordinators:
                tags[i] = 'CCONJ'
                segments[-1].pop()
                new_segment()
                segments[-1].append(i)
            elif low in lexicon.determiners:
                tags[i] = 'DET'
                if low in ('des', 'eines'):
                    morphs[i] = {'Case': 'Gen'}
                    pending_gen = True
            elif low in lexicon.pronouns:
                tags[i] = 'PRON'
                if low in ('dessen', 'deren'):
                    morphs[i] = {'Case': 'Gen'}
                    pending_gen = True
            elif low in lexicon.prepositions:
                if low == 'zu' and nxt and nxt[:1].islower() and nxt.endswith('en'):
                    tags[i] = 'PART'
                else:
                    tags[i] = 'ADP'
            elif low in lexicon.negations and low not in lexicon.determiners:
                tags[i] = 'PART' if low == 'nicht' else 'ADV'
                morphs[i] = {'Polarity': 'Neg'}
            elif low in lexicon.adverbs:
                tags[i] = 'ADV'
            elif w[0].isupper() and (i > 0 or not self._initial_verb(low, nxt)):
                tags[i] = 'NOUN'
                if pending_gen:
                    morphs[i] = {'Case': 'Gen'}
                    pending_gen = False
            else:
                tags[i] = self._content_word(i, low, words, tags, morphs, lemmas,
                                             segments[-1], seg_fin, prev, nxt_cap)
                if tags[i] == 'VERB' and morphs[i].get('VerbForm') == 'Fin':
                    seg_fin += 1

        self._mark_passive(tags, morphs, lemmas, segments)
        return list(zip(tags, morphs))

    @staticmethod
    def _is_relative(words, tags, i):
        low = words[i].lower()
        if words[i - 1] in (',', ';'):
            if low in ('der', 'die', 'das', 'den', 'dem') and i + 1 < len(words) \
                    and words[i + 1][:1].isupper():
                # "..., den Peter kennt" after a noun, an article otherwise
                return i >= 2 and tags[i - 2] in ('NOUN', 'PROPN')
            return True
        if tags[i - 1] == 'ADP' and i >= 2 and words[i - 2] in (',', ';'):
            return not (i + 1 < len(words) and words[i + 1][:1].isupper())
        return False

    @staticmethod
    def _initial_verb(low, nxt):
        return bool(nxt) and low.endswith('t') and (
            nxt.lower() in lexicon.determiners or nxt.lower() in lexicon.pronouns)

    @staticmethod
    def _after_fronted_clause(i, words, tags, morphs):
        '''Verb-second slot right after a sentence-initial subordinate clause.'''
        if i < 2 or words[i - 1] != ',' or tags[0] != 'SCONJ' or i + 1 >= len(words):
            return False
        if not any(morphs[j].get('VerbForm') == 'Fin' for j in range(1, i - 1)):
            return False
        nxt = words[i + 1]
        return (nxt.lower() in lexicon.pronouns or nxt.lower() in lexicon.determiners
                or nxt[:1].isupper())

    @staticmethod
    def _content_word(i, low, words, tags, morphs, lemmas, segment, seg_fin, prev, nxt_cap):
        n = len(words)
        if nxt_cap and (prev in ('DET', 'ADP', 'ADJ', 'NUM', None) or i == 0):
            return 'ADJ'
        if seg_fin:
            has_aux = any(lemmas[j] in ('haben', 'sein', 'werden') for j in segment)
            if has_aux and _participle_shape(low):
                morphs[i] = {'VerbForm': 'Part'}
                return 'VERB'
            if low.endswith('en') and (i + 1 >= n or not words[i + 1][:1].isupper()):
                if prev in ('PART', 'AUX', 'ADV', 'NOUN', 'PRON', 'PROPN', 'VERB'):
                    morphs[i] = {'VerbForm': 'Inf'}
                    return 'VERB'
        else:
            if low in lexicon.strong_present:
                morphs[i] = {'VerbForm': 'Fin', 'Tense': 'Pres', 'Mood': 'Ind'}
                return 'VERB'
            if len(low) > 4 and low.endswith(('te', 'ten', 'test', 'tet')):
                morphs[i] = {'VerbForm': 'Fin', 'Tense': 'Past', 'Mood': 'Ind'}
                return 'VERB'
            if len(low) > 2 and low.endswith('t'):
                morphs[i] = {'VerbForm': 'Fin', 'Tense': 'Pres', 'Mood': 'Ind'}
                return 'VERB'
            if low.endswith('en') and (
                    prev in ('PRON', 'NOUN', 'PROPN', 'NUM')
                    or (i == 1 and prev in ('ADV', 'SCONJ'))):
                morphs[i] = {'VerbForm': 'Fin', 'Tense': 'Pres', 'Mood': 'Ind'}
                return 'VERB'
            if low.endswith('en') and \
                    BuiltinAnnotator._after_fronted_clause(i, words, tags, morphs):
                # "Weil es regnet, bleiben wir ..."
                morphs[i] = {'VerbForm': 'Fin', 'Tense': 'Pres', 'Mood': 'Ind'}
                return 'VERB'
        if low.endswith(('e', 'en', 'er', 'es', 'em')):
            return 'ADJ'
        return 'ADV'

    @staticmethod
    def _mark_passive(tags, morphs, lemmas, segments):
        for seg in segments:
            aux = [j for j in seg if tags[j] == 'AUX' and lemmas[j] == 'werden']
            parts = [j for j in seg if tags[j] == 'VERB' and morphs[j].get('VerbForm') == 'Part']
            if aux and parts:
                for j in aux + parts:
                    morphs[j]['Voice'] = 'Pass'

    def find_entities(self, text, spans, ranges):
        entities = []
        covered = set()
        for a, b in ranges:
            i = a
            while i < b:
                hit = self._gazetteer_match(text, spans, i, b)
                if hit:
                    length, kind = hit
                    entities.append(self._entity(text, spans, i, i + length, kind))
                    covered.update(range(i, i + length))
                    i += length
                    continue
                end = self._titled_person(spans, i, b)
                if end:
                    first = i + 1
                    while spans[first].text == '.' or spans[first].text.lower() in lexicon.person_titles:
                        first += 1
                    entities.append(self._entity(text, spans, first, end, 'PER'))
                    covered.update(range(first, end))
                    i = end
                    continue
                i += 1
        return entities, covered

    def _gazetteer_match(self, text, spans, i, b):
        if not spans[i].text[:1].isupper():
            return None
        for length in range(min(self.max_entity_words, b - i), 0, -1):
            key = normalize_ws(text[spans[i].start:spans[i + length - 1].end]).casefold()
            kind = self.gazetteer.get(key)
            if kind:
                return length, kind
        return None

    @staticmethod
    def _titled_person(spans, i, b):
        if spans[i].text.lower() not in lexicon.person_titles:
            return None
        j = i + 1
        while j < b and (spans[j].text == '.' or spans[j].text.lower() in lexicon.person_titles):
            j += 1
        k = j
        while k < b and spans[k].text[:1].isupper() and spans[k].text.replace('-', '').isalpha():
            k += 1
        return k if k > j else None

    @staticmethod
    def _entity(text, spans, a, b, kind):
        start, end = spans[a].start, spans[b - 1].end
        return {'text': text[start:end], 'start': start, 'end': end, 'label': kind}


class SpacyAnnotator(AnnotationProvider):
    '''In-process spaCy pipeline, imported lazily.'''
    capabilities = CAPABILITIES

    def __init__(self, config=None):
        super().__init__(config)
        try:
            import spacy
        except ImportError as ex:
            raise AnnotationFailure('spacy is not installed: %s' % ex)
        self.model_name = self.config.get('model_id', 'de_core_news_md')
        try:
            self.nlp = spacy.load(self.model_name)
        except OSError as ex:
            raise AnnotationFailure('cannot load spaCy model %s: %s' % (self.model_name, ex))

    def annotate(self, text, language='de'):
        with self.guard:
            doc = self.nlp(text)
        tokens = []
        for t in doc:
            morph = t.morph.to_dict()
            if morph.get('VerbForm') == 'Part' and any(
                    c.lemma_ == 'werden' for c in list(t.children) + [t.head]):
                morph['Voice'] = 'Pass'
            tokens.append({'text': t.text, 'start': t.idx, 'end': t.idx + len(t.text),
                           'pos': t.pos_, 'morph': morph, 'head': t.head.i, 'dep': t.dep_})
        return {
            'sentences': [{'start': s.start_char, 'end': s.end_char} for s in doc.sents],
            'tokens': [t for t in tokens if t['text'].strip()],
            'entities': [{'text': e.text, 'start': e.start_char, 'end': e.end_char,
                          'label': e.label_} for e in doc.ents],
        }


class HttpAnnotator(AnnotationProvider):
    '''POSTs {text, language}, receives the record form.'''

    def __init__(self, config=None):
        super().__init__(config)
        self.capabilities = frozenset(self.config.get('capabilities', CAPABILITIES))
        self.endpoint = JsonEndpoint(
            self.config.get('url'), self.config.get('timeout', 60),
            self.config.get('attempts', 3), api_key=self.config.get('api_key'))

    def annotate(self, text, language='de'):
        with self.guard:
            ret = self.endpoint.post({'text': text, 'language': language})
        if not isinstance(ret, dict) or 'tokens' not in ret:
            raise AnnotationFailure('malformed annotation response: %.200r' % ret)
        return ret

    def close(self):
        self.endpoint.close()


class StaticAnnotator(AnnotationProvider):
    '''
    Precomputed records keyed by the exact text, from `records` in the
    config or a JSON file at `path`.
    '''

    def __init__(self, config=None):
        super().__init__(config)
        self.capabilities = frozenset(self.config.get('capabilities', CAPABILITIES))
        self.records = dict(self.config.get('records') or {})
        if self.config.get('path'):
            with open(self.config['path'], 'r', encoding='utf-8') as f:
                self.records.update(json.load(f))

    def annotate(self, text, language='de'):
        try:
            return self.records[text]
        except KeyError:
            raise AnnotationFailure('no precomputed annotation for %.60r' % text)
