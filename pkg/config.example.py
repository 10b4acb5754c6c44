#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# Copy to config.py and pass it with `simprofctl.py --config config.py`.
# Every key is optional; missing keys take the defaults in simprof/config.py.
# Any key can also be set from the environment, for example
#   SIMPROF_PROVIDERS__NLI__URL=http://localhost:8000/nli

config = {
    # the classical --verbose switch
    'debug': False,
    # root random seed, shared by generation, splits and baselines
    'seed': 0,
    # worker threads
    'jobs': 4,
    # where artifacts go
    'out_dir': 'out',
    'language': 'de',
    # SQLite file memoizing annotation, NLI and embedding results
    # None keeps an in-memory LRU cache
    'cache': 'simprof-cache.db',
    # JSONL, one article per line: {"id": ..., "title": ..., "text": ...}
    'corpus': 'corpus.jsonl',
    'providers': {
        # 'builtin' is a rule-based German tokenizer with a gazetteer for
        # entities; 'spacy' needs de_core_news_md for dependency parses
        'annotation': {
            'type': 'spacy',
            'model_id': 'de_core_news_md',
        },
        # 'mock' judges by word overlap, good for dry runs only
        # {'type': 'transformers', 'model_id': ...} runs in-process
        'nli': {
            'type': 'http',
            'url': 'http://localhost:8000/nli',
            'model_id': 'mDeBERTa-v3-base-xnli',
            # premise plus hypothesis longer than this many characters are cut
            'max_length': 512,
            'max_batch': 32,
        },
        'embedding': {
            'type': 'http',
            'url': 'http://localhost:8000/embed',
            'model_id': 'paraphrase-multilingual-mpnet-base-v2',
        },
        # grammar checker feeding the correctness rules, None to skip
        'checker': {
            'type': 'languagetool',
            'url': 'http://localhost:8081',
            # rule categories counted as simplicity violations
            'simplicity_categories': ['STYLE', 'REDUNDANCY'],
        },
        # one chat-completions endpoint per model size
        'generation': {
            '1B': {
                'type': 'http',
                'url': 'http://localhost:8001/v1',
                'path': '/chat/completions',
                'model_id': 'gemma-3-1b-it',
                'temperature': 0.0,
                'max_tokens': 512,
                # 'api_key': 'SECRET',
                # parallel requests to this endpoint
                'concurrency': 4,
            },
            '4B': {
                'type': 'http',
                'url': 'http://localhost:8001/v1',
                'path': '/chat/completions',
                'model_id': 'gemma-3-4b-it',
                'temperature': 0.0,
                'max_tokens': 512,
                'concurrency': 4,
            },
            '12B': {
                'type': 'http',
                'url': 'http://localhost:8002/v1',
                'path': '/chat/completions',
                'model_id': 'gemma-3-12b-it',
                'temperature': 0.0,
                'max_tokens': 512,
                'concurrency': 2,
            },
        },
    },
    # logistic squash of the raw readability score
    'readability': {'k': 0.1, 'x0': 50.0},
    'rules': {
        # rule id -> parameter overrides
        'params': {
            'sentence_length': {'max_words': 15},
            # 'technical_terms': {'lexicon': 'data/fachbegriffe.txt'},
        },
        # rule ids to switch off
        'disabled': [],
        # extra declarative rule sets
        'files': [],
        'strict': False,
    },
    'sampler': {
        # sentences per excerpt
        'window': 5,
        'budget': 1000,
        # rule id -> minimum excerpts, None for max(quota_min, quota_share * budget)
        'quotas': None,
        'quota_min': 30,
        'quota_share': 0.03,
        'categories': ['simplicity'],
    },
    'generation': {
        # directory with plain.j2, target.j2, rules.j2 and content.j2
        'templates': None,
        # {"rules": [{"source": ..., "simplification": ...}], "content": [...]}
        'fewshot': None,
        # restrict the matrix, e.g. [{'strategy': 'plain', 'size': '4B', 'few_shot': None}]
        'labels': None,
    },
    'validation': {
        # JSON task catalogue, None for the built-in one
        'tasks': None,
        'reg_strength': 1.0,
        'folds': 5,
        'repeats': 5,
        'trials': 1000,
    },
    'spider': {
        'axes': ['COR', 'COV', 'SIM', 'LNG', 'FBR', 'COH', 'LEN', 'ENT', 'ASL'],
        # legend entries in series order, None to use the group labels
        'series_labels': None,
        'dashes': None,
        'colors': None,
        'size': 480,
        # axis -> [lo, hi], replaces the built-in normalizer
        'ranges': {'LEN': [0.0, 1.5]},
    },
}
