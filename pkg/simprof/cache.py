#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json
import sqlite3
import logging
import threading

from .utils import LRUCache

logger = logging.getLogger('cache')

class MemoryCache:
    '''JSON values under (namespace, key), held in an LRU only.'''

    def __init__(self, maxlen=4096):
        self.lock = threading.Lock()
        self.lru = LRUCache(maxlen)
        self.hits = self.misses = 0

    def get(self, namespace, key):
        with self.lock:
            value = self.lru.get((namespace, key))
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def set(self, namespace, key, value):
        with self.lock:
            self.lru[(namespace, key)] = value

    def cached(self, namespace, key, func):
        '''Returns the stored value, or computes, stores and returns func().'''
        value = self.get(namespace, key)
        if value is None:
            value = func()
            self.set(namespace, key, value)
        return value

    def commit(self):
        pass

    def close(self):
        logger.debug('cache: %d hits, %d misses', self.hits, self.misses)


class SQLiteCache(MemoryCache):
    '''Persists values in SQLite, with the LRU in front.'''

    def __init__(self, filename, maxlen=4096, wal=True):
        super().__init__(maxlen)
        with self.lock:
            self.conn = sqlite3.connect(filename, check_same_thread=False)
            if wal:
                self.conn.execute('PRAGMA journal_mode=WAL')
            self.conn.execute(
                'CREATE TABLE IF NOT EXISTS cache ('
                    'namespace TEXT NOT NULL,'
                    'key TEXT NOT NULL,'
                    'value TEXT,'
                    'PRIMARY KEY (namespace, key)'
                ')')
            self.conn.commit()

    def get(self, namespace, key):
        value = super().get(namespace, key)
        if value is not None:
            return value
        with self.lock:
            row = self.conn.execute(
                'SELECT value FROM cache WHERE namespace=? AND key=?',
                (namespace, key)).fetchone()
            if row is None:
                return None
            value = json.loads(row[0])
            self.lru[(namespace, key)] = value
            return value

    def set(self, namespace, key, value):
        super().set(namespace, key, value)
        with self.lock:
            self.conn.execute('REPLACE INTO cache (namespace, key, value) VALUES (?,?,?)',
                              (namespace, key, json.dumps(value, ensure_ascii=False)))

    def commit(self):
        with self.lock:
            self.conn.commit()

    def close(self):
        self.commit()
        super().close()
        self.conn.close()
