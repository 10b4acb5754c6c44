#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Closed-class word lists and small lexicons for German.
'''

import os
import functools

DATADIR = os.path.join(os.path.dirname(__file__), 'data')

determiners = frozenset((
    'der', 'die', 'das', 'den', 'dem', 'des',
    'ein', 'eine', 'einen', 'einem', 'einer', 'eines',
    'kein', 'keine', 'keinen', 'keinem', 'keiner', 'keines',
    'dieser', 'diese', 'dieses', 'diesen', 'diesem',
    'jener', 'jene', 'jenes', 'jenen', 'jenem',
    'jeder', 'jede', 'jedes', 'jeden', 'jedem',
    'welcher', 'welche', 'welches', 'welchen', 'welchem',
    'meine', 'meinen', 'meinem', 'meiner', 'meines',
    'deine', 'deinen', 'deinem', 'deiner', 'deines',
    'seine', 'seinen', 'seinem', 'seiner', 'seines',
    'ihre', 'ihren', 'ihrem', 'ihrer', 'ihres',
    'unsere', 'unseren', 'unserem', 'unserer', 'unseres', 'unser',
    'eure', 'euren', 'eurem', 'eurer', 'eures',
    'alle', 'allen', 'aller', 'viele', 'vielen', 'einige', 'einigen',
    'mehrere', 'mehreren', 'beide', 'beiden',
))

pronouns = frozenset((
    'ich', 'du', 'er', 'sie', 'es', 'wir', 'ihr', 'man',
    'mich', 'dich', 'sich', 'uns', 'euch', 'ihn', 'ihm', 'ihnen', 'mir', 'dir',
    'jemand', 'niemand', 'nichts', 'etwas', 'alles', 'wer', 'was',
    'dessen', 'deren', 'denen',
))

relative_pronouns = frozenset((
    'der', 'die', 'das', 'den', 'dem', 'dessen', 'deren', 'denen',
    'welcher', 'welche', 'welches', 'welchen', 'welchem', 'wo', 'worin',
    'womit', 'wodurch', 'woraus', 'worauf',
))

prepositions = frozenset((
    'in', 'im', 'ins', 'an', 'am', 'ans', 'auf', 'aus', 'bei', 'beim', 'mit',
    'nach', 'von', 'vom', 'zu', 'zum', 'zur', 'über', 'unter', 'vor', 'hinter',
    'neben', 'zwischen', 'durch', 'für', 'gegen', 'ohne', 'um', 'wegen',
    'trotz', 'statt', 'anstatt', 'innerhalb', 'außerhalb', 'ab', 'laut',
    'gemäß', 'entlang', 'seit', 'bis', 'während',
))

coordinators = frozenset(('und', 'oder', 'aber', 'sondern', 'denn', 'sowie', 'doch'))

# Always subordinating.
subordinators = frozenset((
    'dass', 'weil', 'ob', 'obwohl', 'obgleich', 'nachdem', 'bevor', 'sobald',
    'solange', 'sodass', 'falls', 'indem', 'wenn', 'damit', 'ehe', 'sofern',
    'wohingegen', 'wobei',
))

# Subordinating only at clause start (otherwise preposition or adverb).
clause_initial_subordinators = frozenset((
    'als', 'da', 'seit', 'seitdem', 'bis', 'während', 'wie',
))

adverbs = frozenset((
    'nicht', 'auch', 'noch', 'schon', 'sehr', 'nur', 'hier', 'dort', 'heute',
    'dann', 'jetzt', 'immer', 'oft', 'nie', 'niemals', 'gern', 'gerne',
    'bereits', 'später', 'damals', 'dabei', 'jedoch', 'deshalb', 'daher',
    'also', 'so', 'wieder', 'ebenfalls', 'zudem', 'außerdem', 'etwa', 'fast',
    'meist', 'meistens', 'bald', 'sogar', 'gestern', 'morgen', 'nun', 'zuerst',
    'danach', 'davor', 'darum', 'dazu', 'zusammen', 'heutzutage', 'insgesamt',
    'ungefähr', 'vor allem', 'ja', 'nein', 'mehr', 'weniger', 'viel', 'wenig',
    'nachts', 'abends', 'morgens', 'bisher', 'längst', 'erst', 'kaum',
    'nirgends', 'nirgendwo', 'weder', 'zurück', 'selbst', 'sonst', 'zuletzt',
    'zunächst', 'trotzdem', 'seither', 'ebenso', 'nunmehr', 'teilweise',
    'überwiegend', 'häufig', 'besonders', 'etwas', 'hauptsächlich',
))

# form -> (lemma, tense, mood)
auxiliaries = {
    'bin': ('sein', 'Pres', 'Ind'), 'bist': ('sein', 'Pres', 'Ind'),
    'ist': ('sein', 'Pres', 'Ind'), 'sind': ('sein', 'Pres', 'Ind'),
    'seid': ('sein', 'Pres', 'Ind'),
    'war': ('sein', 'Past', 'Ind'), 'warst': ('sein', 'Past', 'Ind'),
    'waren': ('sein', 'Past', 'Ind'), 'wart': ('sein', 'Past', 'Ind'),
    'sei': ('sein', 'Pres', 'Sub'), 'seien': ('sein', 'Pres', 'Sub'),
    'wäre': ('sein', 'Past', 'Sub'), 'wären': ('sein', 'Past', 'Sub'),
    'habe': ('haben', 'Pres', 'Ind'), 'hast': ('haben', 'Pres', 'Ind'),
    'hat': ('haben', 'Pres', 'Ind'), 'haben': ('haben', 'Pres', 'Ind'),
    'habt': ('haben', 'Pres', 'Ind'),
    'hatte': ('haben', 'Past', 'Ind'), 'hatten': ('haben', 'Past', 'Ind'),
    'hätte': ('haben', 'Past', 'Sub'), 'hätten': ('haben', 'Past', 'Sub'),
    'werde': ('werden', 'Pres', 'Ind'), 'wirst': ('werden', 'Pres', 'Ind'),
    'wird': ('werden', 'Pres', 'Ind'), 'werden': ('werden', 'Pres', 'Ind'),
    'werdet': ('werden', 'Pres', 'Ind'),
    'wurde': ('werden', 'Past', 'Ind'), 'wurden': ('werden', 'Past', 'Ind'),
    'würde': ('werden', 'Past', 'Sub'), 'würden': ('werden', 'Past', 'Sub'),
    'kann': ('können', 'Pres', 'Ind'), 'können': ('können', 'Pres', 'Ind'),
    'konnte': ('können', 'Past', 'Ind'), 'konnten': ('können', 'Past', 'Ind'),
    'könnte': ('können', 'Past', 'Sub'), 'könnten': ('können', 'Past', 'Sub'),
    'muss': ('müssen', 'Pres', 'Ind'), 'müssen': ('müssen', 'Pres', 'Ind'),
    'musste': ('müssen', 'Past', 'Ind'), 'mussten': ('müssen', 'Past', 'Ind'),
    'müsste': ('müssen', 'Past', 'Sub'), 'müssten': ('müssen', 'Past', 'Sub'),
    'soll': ('sollen', 'Pres', 'Ind'), 'sollen': ('sollen', 'Pres', 'Ind'),
    'sollte': ('sollen', 'Past', 'Ind'), 'sollten': ('sollen', 'Past', 'Ind'),
    'will': ('wollen', 'Pres', 'Ind'), 'wollen': ('wollen', 'Pres', 'Ind'),
    'wollte': ('wollen', 'Past', 'Ind'), 'wollten': ('wollen', 'Past', 'Ind'),
    'darf': ('dürfen', 'Pres', 'Ind'), 'dürfen': ('dürfen', 'Pres', 'Ind'),
    'durfte': ('dürfen', 'Past', 'Ind'), 'durften': ('dürfen', 'Past', 'Ind'),
    'dürfte': ('dürfen', 'Past', 'Sub'), 'dürften': ('dürfen', 'Past', 'Sub'),
    'mag': ('mögen', 'Pres', 'Ind'), 'mögen': ('mögen', 'Pres', 'Ind'),
    'mochte': ('mögen', 'Past', 'Ind'), 'mochten': ('mögen', 'Past', 'Ind'),
    'möchte': ('mögen', 'Past', 'Sub'), 'möchten': ('mögen', 'Past', 'Sub'),
}

# Forms that double as infinitives: finite only when no finite verb precedes
# them in the clause segment.
ambiguous_auxiliaries = frozenset((
    'haben', 'werden', 'können', 'müssen', 'sollen', 'wollen', 'dürfen', 'mögen',
))

# Frequent strong and irregular verbs, simple past.
strong_past = frozenset((
    'kam', 'kamen', 'ging', 'gingen', 'sah', 'sahen', 'gab', 'gaben', 'fand',
    'fanden', 'lag', 'lagen', 'stand', 'standen', 'hieß', 'hießen', 'blieb',
    'blieben', 'begann', 'begannen', 'schrieb', 'schrieben', 'nahm', 'nahmen',
    'trat', 'traten', 'fiel', 'fielen', 'zog', 'zogen', 'starb', 'starben',
    'wuchs', 'wuchsen', 'sprach', 'sprachen', 'rief', 'riefen', 'lief',
    'liefen', 'hielt', 'hielten', 'ließ', 'ließen', 'saß', 'saßen', 'wusste',
    'wussten', 'brachte', 'brachten', 'dachte', 'dachten', 'kannte',
    'kannten', 'nannte', 'nannten', 'erhielt', 'erhielten', 'entstand',
    'entstanden', 'gewann', 'gewannen', 'verlor', 'verloren', 'bot', 'boten',
    'flog', 'flogen', 'fuhr', 'fuhren', 'trug', 'trugen', 'schlug', 'schlugen',
))

# Frequent irregular present forms not ending in -t.
strong_present = frozenset(('weiß', 'gibt', 'liegt'))

months = frozenset((
    'januar', 'februar', 'märz', 'april', 'mai', 'juni', 'juli', 'august',
    'september', 'oktober', 'november', 'dezember',
))

abbreviations = frozenset((
    'z', 'b', 'u', 'a', 'd', 'h', 's', 'o', 'bzw', 'usw', 'etc', 'ca', 'dr',
    'prof', 'nr', 'st', 'vgl', 'sog', 'ggf', 'evtl', 'inkl', 'mio', 'mrd',
    'jh', 'jhd', 'bspw', 'hr', 'fr', 'geb', 'gest', 'abb', 'tab', 'str',
    'chr', 'v', 'n', 'ff', 'bd', 'hrsg', 'dt', 'engl', 'lat', 'frz',
))

person_titles = frozenset((
    'herr', 'herrn', 'frau', 'dr', 'prof', 'präsident', 'präsidentin',
    'bundeskanzler', 'bundeskanzlerin', 'bürgermeister', 'bürgermeisterin',
))

negations = frozenset((
    'nicht', 'kein', 'keine', 'keinen', 'keinem', 'keiner', 'keines', 'nie',
    'niemals', 'nichts', 'niemand', 'niemandem', 'niemanden', 'nirgends',
    'nirgendwo', 'weder',
))

abstract_suffixes = ('ung', 'heit', 'keit', 'ismus', 'ität', 'tion', 'schaft',
                     'tum', 'nis', 'ungen', 'heiten', 'keiten', 'ismen',
                     'itäten', 'tionen', 'schaften')

anglicisms = frozenset((
    'meeting', 'event', 'team', 'feedback', 'deadline', 'update', 'download',
    'upload', 'online', 'offline', 'software', 'hardware', 'computer',
    'internet', 'e-mail', 'email', 'job', 'manager', 'management', 'service',
    'shop', 'shopping', 'ticket', 'trend', 'workshop', 'marketing', 'design',
    'performance', 'know-how', 'highlight', 'image', 'fan', 'star', 'show',
    'festival', 'song', 'single', 'album', 'label', 'band', 'hit', 'tour',
    'smartphone', 'app', 'website', 'blog', 'chat', 'startup', 'start-up',
))

# wrong form -> intended form
confused_words = {
    'seid': ('seit', lambda nxt: nxt is not None and (nxt.isdigit() or nxt.lower() in (
        'dem', 'der', 'den', 'jahren', 'langem', 'kurzem', 'wann', 'einigen', 'vielen'))),
    'wiederspiegeln': ('widerspiegeln', None),
    'wiedersprechen': ('widersprechen', None),
    'wiederstand': ('widerstand', None),
    'wiederlegen': ('widerlegen', None),
    'standart': ('standard', None),
    'vorraus': ('voraus', None),
    'garnicht': ('gar nicht', None),
}

@functools.lru_cache(maxsize=16)
def load_wordlist(filename):
    '''One entry per line, '#' starts a comment. Entries are case-folded.'''
    words = set()
    with open(filename, 'r', encoding='utf-8') as f:
        for ln in f:
            ln = ln.split('#', 1)[0].strip()
            if ln:
                words.add(ln.casefold())
    return frozenset(words)

def gazetteer(extra=None):
    '''
    Returns {casefolded entity: kind}. Lines are "<kind>\t<surface form>".
    '''
    entries = {}
    for fn in (os.path.join(DATADIR, 'gazetteer.tsv'), extra):
        if not fn:
            continue
        with open(fn, 'r', encoding='utf-8') as f:
            for ln in f:
                ln = ln.rstrip('\n')
                if not ln or ln.startswith('#') or '\t' not in ln:
                    continue
                kind, name = ln.split('\t', 1)
                entries[name.strip().casefold()] = kind.strip()
    return entries
