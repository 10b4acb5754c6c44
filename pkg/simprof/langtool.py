#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import bisect
import logging

from .model import GrammarChecker, Violation, ProviderFailure
from .remote import JsonEndpoint

logger = logging.getLogger('langtool')

def utf16_to_codepoints(text):
    '''Returns a function mapping UTF-16 code unit offsets to code point offsets.'''
    units = []
    pos = 0
    for ch in text:
        units.append(pos)
        pos += 2 if ord(ch) > 0xFFFF else 1
    units.append(pos)
    return lambda off: bisect.bisect_left(units, off)

class LanguageToolChecker(GrammarChecker):
    '''
    Remote checker speaking the LanguageTool /v2/check protocol. Matches are
    reported as rule ids "lt:<ID>"; the category decides whether they count
    against simplicity or correctness.
    '''

    def __init__(self, config=None):
        super().__init__(config)
        self.endpoint = JsonEndpoint(
            self.config.get('url'), self.config.get('timeout', 60),
            self.config.get('attempts', 3), api_key=self.config.get('api_key'))
        self.offsets = self.config.get('offsets', 'utf16')
        self.simplicity_categories = frozenset(self.config.get('simplicity_categories', ()))
        self.disabled = frozenset(self.config.get('disabled_rules', ()))

    @property
    def provider_id(self):
        return 'checker:languagetool'

    def check(self, text, language='de'):
        with self.guard:
            ret = self.endpoint.post(data={'text': text, 'language': language},
                                     path='/v2/check')
        try:
            raw = ret['matches']
        except (KeyError, TypeError):
            raise ProviderFailure('malformed checker response: %.200r' % ret)
        convert = utf16_to_codepoints(text) if self.offsets == 'utf16' else (lambda x: x)
        matches = []
        for m in raw:
            rule = m.get('rule') or {}
            rule_id = rule.get('id') or m.get('rule_id')
            if not rule_id or rule_id in self.disabled:
                continue
            start = convert(m['offset'])
            end = convert(m['offset'] + m['length'])
            matches.append({
                'offset': start, 'length': end - start, 'rule_id': 'lt:' + rule_id,
                'category': (rule.get('category') or {}).get('id') or m.get('category', ''),
            })
        return matches

    def category_of(self, match):
        return 'simplicity' if match['category'] in self.simplicity_categories else 'correctness'

    def violations(self, doc):
        '''
        Checks the whole document and maps every match onto the sentence and
        word tokens it overlaps. Returns (violations, {rule_id: category}).
        '''
        result = []
        categories = {}
        for m in self.check(doc.raw.content, doc.raw.language):
            start, end = m['offset'], m['offset'] + max(m['length'], 1)
            for j, s in enumerate(doc.sentences):
                if s.char_span[1] <= start or s.char_span[0] >= end:
                    continue
                toks = tuple(i for i, t in enumerate(s.tokens) if t.is_word
                             and t.char_span[0] < end and t.char_span[1] > start)
                if not toks:
                    continue
                scs = tuple(k for k, sc in enumerate(doc.sub_clauses[j])
                            if any(sc.token_range[0] <= i < sc.token_range[1] for i in toks))
                result.append(Violation(m['rule_id'], j, (max(start, s.char_span[0]),
                                        min(end, s.char_span[1])), toks, scs))
                categories[m['rule_id']] = self.category_of(m)
        return result, categories

    def close(self):
        self.endpoint.close()
