#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import logging
import concurrent.futures

from . import provider, rules, readability
from .config import config_hash
from .model import ReadabilityConfig, ConfigError
from .fingerprint import Providers
from .utils import artifact_header, wrap_attrdict

logger = logging.getLogger('base')

class ProfilerInstance:
    '''
    Holds the configuration, the worker pool, the cache and the providers of
    one command run. Providers are created on first use.
    '''

    def __init__(self, config):
        self.config = config = wrap_attrdict(config)
        self.seed = int(config.seed)
        self.header = artifact_header(config_hash(config), self.seed)
        self.executor = concurrent.futures.ThreadPoolExecutor(int(config.jobs))
        self.cache = provider.create_cache(config.cache, config.cache_size)
        self._providers = {}
        os.makedirs(config.out_dir, exist_ok=True)
        logging.info('Profiler instance initialized, config %s.', self.header['config_hash'][:12])

    def path(self, name):
        return os.path.join(self.config.out_dir, name)

    def _get(self, key, factory):
        if key not in self._providers:
            self._providers[key] = factory()
            logger.info('Registered provider: %s', self._providers[key].provider_id)
        return self._providers[key]

    @property
    def annotator(self):
        return self._get('annotation', lambda: provider.create(
            provider.annotators, 'annotation', self.config.providers.annotation))

    @property
    def nli(self):
        return self._get('nli', lambda: provider.create(
            provider.nli, 'nli', self.config.providers.nli))

    @property
    def embedding(self):
        return self._get('embedding', lambda: provider.create(
            provider.embeddings, 'embedding', self.config.providers.embedding))

    @property
    def checker(self):
        if not self.config.providers.get('checker'):
            return None
        return self._get('checker', lambda: provider.create(
            provider.checkers, 'checker', self.config.providers.checker))

    def generators(self):
        '''{model size: GenerationProvider}'''
        sizes = self.config.providers.generation or {}
        seed = self.seed
        return {size: self._get('generation:' + size, lambda cfg=cfg: provider.create(
                    provider.generators, 'generation', dict({'seed': seed}, **cfg)))
                for size, cfg in sizes.items()}

    def rulesets(self, categories=rules.CATEGORIES):
        cfg = self.config.rules
        result = [rules.builtin_ruleset(c, cfg.params, cfg.disabled) for c in categories]
        for filename in cfg.files or ():
            rs = rules.load_ruleset(filename)
            result.append(rs._replace(rules=tuple(
                r for r in rs.rules if r.category in categories)))
        return tuple(rs for rs in result if rs.rules)

    def readability(self):
        cfg = self.config.readability
        try:
            return readability.validate_config(ReadabilityConfig(float(cfg.k), float(cfg.x0)))
        except ValueError as ex:
            raise ConfigError(str(ex))

    def providers(self):
        '''The bundle build_fingerprint works with.'''
        return Providers(self.nli, self.embedding, self.rulesets(), self.checker,
                         self.readability(), self.cache, bool(self.config.rules.strict))

    def submit_task(self, fn, *args, **kwargs):
        def func_noerr(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except Exception:
                logger.exception('Async function failed.')
        return self.executor.submit(func_noerr, *args, **kwargs)

    def map(self, fn, iterable):
        '''Ordered parallel map; the first exception propagates.'''
        return list(self.executor.map(fn, iterable))

    def exit(self):
        self.executor.shutdown(wait=True)
        for p in self._providers.values():
            p.close()
        self.cache.close()
        logging.info('Exited cleanly.')
