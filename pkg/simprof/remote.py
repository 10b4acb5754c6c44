#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import time
import logging

from .model import ProviderFailure

import requests

logger = logging.getLogger('remote')

class JsonEndpoint:
    '''
    A JSON-over-HTTP endpoint with a persistent session and a bounded number
    of attempts. Every failure ends in ProviderFailure.
    '''

    def __init__(self, url, timeout=60, attempts=3, headers=None, api_key=None):
        if not url:
            raise ProviderFailure('no endpoint url configured')
        self.url = url
        self.timeout = timeout
        self.attempts = max(int(attempts), 1)
        self.headers = dict(headers or {})
        if api_key:
            self.headers['Authorization'] = 'Bearer ' + api_key
        self.session = requests.Session()

    def change_session(self):
        self.session.close()
        self.session = requests.Session()

    def post(self, payload=None, data=None, path=''):
        att = 1
        last_exc = None
        while att <= self.attempts:
            try:
                req = self.session.post(self.url + path, json=payload, data=data,
                                        headers=self.headers, timeout=self.timeout)
                req.raise_for_status()
                return req.json()
            except (requests.RequestException, ValueError) as ex:
                last_exc = ex
                logger.warning('%s attempt %d failed: %s', self.url, att, ex)
                if att < self.attempts:
                    time.sleep(att * 2)
                    self.change_session()
            att += 1
        raise ProviderFailure('%s failed after %d attempts: %s' % (
            self.url, self.attempts, last_exc))

    def close(self):
        self.session.close()
