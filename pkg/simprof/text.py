#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import collections

from .model import (
    RawText, Token, Sentence, SubClause, Entity, SegmentedText, Excerpt,
    SimprofError, EmptyInput, AnnotationFailure
)
from .utils import sha1hex, read_jsonl

logger = logging.getLogger('text')

VOWELS = frozenset('aeiouyäöü')
# Two-letter vowel sequences forming one nucleus.
VOWEL_PAIRS = frozenset(('ei', 'ai', 'au', 'eu', 'äu', 'ie', 'aa', 'ee', 'oo'))
TERMINAL_PUNCT = ('.', '!', '?', '…')
TRAILING_CLOSERS = '"\'“”»«’)]'
CLAUSE_COMMAS = frozenset((',', ';', ':', '–', '—'))

def count_syllables(word):
    '''
    Orthographic syllable estimate: every vowel nucleus counts once, where
    a nucleus is a single vowel or one of VOWEL_PAIRS. "qu" is a consonant.
    '''
    w = word.casefold()
    count = 0
    i = 0
    while i < len(w):
        if w[i] in VOWELS and not (w[i] == 'u' and i and w[i - 1] == 'q'):
            count += 1
            i += 2 if w[i:i + 2] in VOWEL_PAIRS else 1
        else:
            i += 1
    return max(count, 1)

def is_word(text):
    return any(c.isalnum() for c in text)

def parse_morph(morph):
    if not morph:
        return {}
    elif isinstance(morph, str):
        # "Case=Gen|Number=Sing"
        return dict(kv.split('=', 1) for kv in morph.split('|') if '=' in kv)
    return dict(morph)

def has_terminal_punct(text):
    return text.rstrip().rstrip(TRAILING_CLOSERS).endswith(TERMINAL_PUNCT)

def is_well_formed(s):
    return bool(s.has_finite_verb and s.terminal_punct)

def word_tokens(sentence):
    return [t for t in sentence.tokens if t.is_word]

def segment(raw, provider, cache=None):
    '''Annotates raw.content with the provider and builds a SegmentedText.'''
    if not raw.content or not raw.content.strip():
        raise EmptyInput('%s: content is empty' % raw.source_id)
    if 'segmentation' not in provider.capabilities:
        raise AnnotationFailure('%s cannot segment text' % provider.provider_id)

    def annotate():
        try:
            return provider.annotate(raw.content, raw.language)
        except AnnotationFailure:
            raise
        except Exception as ex:
            raise AnnotationFailure('%s: %s failed: %s' % (
                raw.source_id, provider.provider_id, ex)) from ex

    if cache is None:
        records = annotate()
    else:
        key = '%s|%s|%s' % (provider.provider_id, sha1hex(raw.content), raw.language)
        records = cache.cached('annotation', key, annotate)
    return build_segmented(raw, records, provider.capabilities)

def _check_tokens(raw, tokens):
    last_end = 0
    for t in tokens:
        if not (0 <= t['start'] < t['end'] <= len(raw.content)) or t['start'] < last_end:
            raise AnnotationFailure('%s: bad token span %r' % (
                raw.source_id, (t['start'], t['end'])))
        last_end = t['end']

def build_segmented(raw, records, capabilities):
    '''
    Turns annotation records into a SegmentedText. Sentence spans are
    stretched so they partition the non-whitespace content: characters the
    provider left between two sentences join the earlier one.
    '''
    content = raw.content
    capabilities = frozenset(capabilities)
    recs = sorted(records.get('tokens') or (), key=lambda t: (t['start'], t['end']))
    recs = [t for t in recs if content[t['start']:t['end']].strip()]
    if not recs:
        raise AnnotationFailure('%s: provider returned no tokens' % raw.source_id)
    _check_tokens(raw, recs)
    doc_index = {id(t): n for n, t in enumerate(recs)}
    by_original = dict(enumerate(records.get('tokens') or ()))

    starts = sorted(set(s['start'] for s in records.get('sentences') or ()))
    firsts = {0}
    pos = 0
    for st in starts:
        while pos < len(recs) and recs[pos]['start'] < st:
            pos += 1
        if pos < len(recs):
            firsts.add(pos)
    firsts = sorted(firsts)

    content_start = len(content) - len(content.lstrip())
    content_end = len(content.rstrip())
    sentences = []
    sub_clauses = []
    use_dependency = 'dependency' in capabilities
    for k, a in enumerate(firsts):
        b = firsts[k + 1] if k + 1 < len(firsts) else len(recs)
        start = content_start if k == 0 else recs[a]['start']
        if k + 1 < len(firsts):
            end = len(content[:recs[b]['start']].rstrip())
        else:
            end = content_end
        tokens = []
        for i, t in enumerate(recs[a:b]):
            head = _sentence_head(t, i, a, b, by_original, doc_index)
            text = content[t['start']:t['end']]
            word = is_word(text)
            tokens.append(Token(
                text, (t['start'], t['end']), word,
                count_syllables(text) if word else 0,
                t.get('pos') or 'X', parse_morph(t.get('morph')), head))
        text = content[start:end]
        sentence = Sentence(
            text, (start, end), tuple(tokens), has_terminal_punct(text),
            any(t.morph.get('VerbForm') == 'Fin' for t in tokens))
        sentences.append(sentence)
        sub_clauses.append(extract_sub_clauses(sentence, use_dependency))

    entities = []
    for e in records.get('entities') or ():
        if 0 <= e['start'] < e['end'] <= len(content):
            entities.append(Entity(content[e['start']:e['end']], (e['start'], e['end']),
                                   e.get('label') or 'MISC'))
        else:
            logger.warning('%s: entity span out of bounds: %r', raw.source_id, e)
    entities.sort(key=lambda e: e.char_span)
    return SegmentedText(raw, tuple(sentences), tuple(sub_clauses),
                         tuple(entities), capabilities)

def _sentence_head(t, i, a, b, by_original, doc_index):
    head = t.get('head')
    if head is None or head not in by_original:
        return i
    h = doc_index.get(id(by_original[head]))
    if h is None or not (a <= h < b):
        return i
    return h - a

def extract_sub_clauses(sentence, use_dependency=False):
    '''
    One contiguous SubClause per finite verb where the clause structure
    allows it. Finite verbs that cannot be separated share a sub-clause.
    '''
    toks = sentence.tokens
    verbs = [i for i, t in enumerate(toks) if t.morph.get('VerbForm') == 'Fin']
    if not verbs:
        return ()
    if use_dependency and any(t.head_index != i for i, t in enumerate(toks)):
        ranges = _dependency_ranges(toks, verbs)
    else:
        ranges = _comma_ranges(toks, verbs)
    return tuple(SubClause(r, _clause_kind(toks, r)) for r in ranges)

def _opens_clause(toks, j):
    t = toks[j]
    if t.pos == 'SCONJ' or t.morph.get('PronType') == 'Rel':
        return True
    return (t.pos == 'ADP' and j + 1 < len(toks)
            and toks[j + 1].morph.get('PronType') == 'Rel')

def _comma_ranges(toks, verbs):
    cuts = [0]
    for j in range(1, len(toks)):
        if toks[j - 1].text in CLAUSE_COMMAS and _opens_clause(toks, j):
            cuts.append(j)
    cuts.append(len(toks))
    merged = []
    carry = None
    for a, b in zip(cuts, cuts[1:]):
        if carry is not None:
            a, carry = carry, None
        if any(a <= v < b for v in verbs):
            merged.append([a, b])
        elif merged:
            merged[-1][1] = b
        else:
            carry = a
    result = []
    for a, b in merged:
        vs = [v for v in verbs if a <= v < b]
        start = a
        for v1, v2 in zip(vs, vs[1:]):
            cut = None
            for c in range(v2 - 1, v1, -1):
                if toks[c].text in CLAUSE_COMMAS:
                    cut = c + 1
                    break
                elif toks[c].pos == 'CCONJ':
                    cut = c
                    break
            if cut is not None and cut > start:
                result.append((start, cut))
                start = cut
        result.append((start, b))
    return result

def _dependency_ranges(toks, verbs):
    verbset = set(verbs)
    owner = []
    for i in range(len(toks)):
        j = i
        seen = set()
        while j not in verbset and toks[j].head_index != j and j not in seen:
            seen.add(j)
            j = toks[j].head_index
        owner.append(j if j in verbset else None)
    # unattached tokens follow their left neighbour
    for i in range(len(owner)):
        if owner[i] is None:
            owner[i] = owner[i - 1] if i else None
    for i in range(len(owner) - 1, -1, -1):
        if owner[i] is None:
            owner[i] = owner[i + 1]
    runs = []
    for i, label in enumerate(owner):
        if runs and runs[-1][0] == label:
            runs[-1][2] = i + 1
        else:
            runs.append([label, i, i + 1])
    changed = True
    while changed:
        changed = False
        for idx, (label, a, b) in enumerate(runs):
            if not (a <= label < b):
                runs[idx][0] = runs[idx - 1][0] if idx else runs[idx + 1][0]
                changed = True
                break
        if changed:
            joined = []
            for run in runs:
                if joined and joined[-1][0] == run[0]:
                    joined[-1][2] = run[2]
                else:
                    joined.append(run)
            runs = joined
    return [(a, b) for _, a, b in runs]

def _clause_kind(toks, rng):
    a, b = rng
    verb = next(i for i in range(a, b) if toks[i].morph.get('VerbForm') == 'Fin')
    for j in range(a, verb):
        t = toks[j]
        if t.morph.get('PronType') == 'Rel':
            if j == a or toks[j - 1].text in CLAUSE_COMMAS or (
                    toks[j - 1].pos == 'ADP' and (j - 1 == a or toks[j - 2].text in CLAUSE_COMMAS)):
                return 'relative'
        elif t.pos == 'SCONJ':
            return 'subordinate'
    return 'main'

def extract_windows(article, window=5):
    '''
    Non-overlapping runs of `window` consecutive well-formed sentences.
    Any ill-formed sentence restarts the run.
    '''
    if window < 1:
        raise ValueError('window must be >= 1')
    excerpts = []
    run = []
    for k, sentence in enumerate(article.sentences):
        if not is_well_formed(sentence):
            run = []
            continue
        run.append(k)
        if len(run) == window:
            excerpts.append(Excerpt(
                article.raw.source_id, len(excerpts),
                tuple(article.sentences[i] for i in run),
                tuple(article.sub_clauses[i] for i in run),
                article.capabilities))
            run = []
    return excerpts

def read_corpus(filename, language='de'):
    '''Yields RawText from JSONL records {id, title, text}.'''
    for n, rec in enumerate(read_jsonl(filename)):
        try:
            yield RawText(rec['text'], str(rec['id']), rec.get('language', language))
        except KeyError as ex:
            raise SimprofError('%s: record %d lacks field %s' % (filename, n + 1, ex))

def excerpt_record(excerpt):
    return collections.OrderedDict((
        ('excerpt_id', excerpt.excerpt_id),
        ('article_id', excerpt.article_id),
        ('window_index', excerpt.window_index),
        ('text', excerpt.text),
    ))

StoredExcerpt = collections.namedtuple('StoredExcerpt', (
    'excerpt_id', 'article_id', 'window_index', 'text'))

def read_excerpts(filename):
    '''Excerpt records as StoredExcerpt, in file order.'''
    return [StoredExcerpt(r['excerpt_id'], r['article_id'], int(r['window_index']), r['text'])
            for r in read_jsonl(filename)]

def excerpt_from_record(rec, provider, cache=None):
    '''Rebuilds an Excerpt from its stored text.'''
    doc = segment(RawText(rec['text'], rec['excerpt_id']), provider, cache)
    return Excerpt(rec['article_id'], int(rec['window_index']),
                   doc.sentences, doc.sub_clauses, doc.capabilities)

def excerpt_document(excerpt):
    '''The excerpt as a SegmentedText, offsets relative to excerpt.text.'''
    content = excerpt.text
    sentences = []
    offset = 0
    for s in excerpt.sentences:
        shift = offset - s.char_span[0]
        sentences.append(s._replace(
            char_span=(offset, offset + len(s.text)),
            tokens=tuple(t._replace(char_span=(t.char_span[0] + shift, t.char_span[1] + shift))
                         for t in s.tokens)))
        offset += len(s.text) + 1
    return SegmentedText(RawText(content, excerpt.excerpt_id), tuple(sentences),
                         tuple(excerpt.sub_clauses), (), excerpt.capabilities)
