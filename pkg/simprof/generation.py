#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Generation harness: renders one prompt per (excerpt, configuration) and
collects the outputs as SimplificationRecords. Output files are append-only
and keyed by pair_id, so an interrupted run resumes where it stopped.
'''

import os
import re
import json
import random
import logging
import collections
import concurrent.futures

from .model import (
    PromptTemplate, SimplificationRecord, ConfigurationLabel, GenerationProvider,
    STRATEGIES, FEW_SHOT_STRATEGIES, all_labels,
    MissingSlot, ConfigInvalid, ProviderFailure
)
from .remote import JsonEndpoint
from .utils import sha1hex, read_jsonl, write_jsonl

import jinja2

logger = logging.getLogger('generate')

DATADIR = os.path.join(os.path.dirname(__file__), 'data')
PROMPTDIR = os.path.join(DATADIR, 'prompts')

re_excerpt_slot = re.compile(r'\{\{-?\s*excerpt\s*-?\}\}')
re_examples_slot = re.compile(r'\{\{-?\s*examples\s*-?\}\}')

_env = jinja2.Environment(undefined=jinja2.StrictUndefined, autoescape=False,
                          keep_trailing_newline=False)

def make_template(strategy, body, few_shot_examples=()):
    if strategy not in STRATEGIES:
        raise ConfigInvalid('unknown prompt strategy %r' % strategy)
    n = len(re_excerpt_slot.findall(body))
    if n != 1:
        raise MissingSlot('%s template has %d excerpt slots, needs exactly 1' % (strategy, n))
    examples = tuple((str(s), str(t)) for s, t in few_shot_examples)
    if examples:
        if strategy not in FEW_SHOT_STRATEGIES:
            raise ConfigInvalid('few-shot examples given for %s prompts' % strategy)
        if not re_examples_slot.search(body):
            raise MissingSlot('%s template has no examples slot' % strategy)
    return PromptTemplate(strategy, body, examples)

def load_templates(directory=None):
    '''{strategy: PromptTemplate} from <directory>/<strategy>.j2, without examples.'''
    directory = directory or PROMPTDIR
    templates = collections.OrderedDict()
    for strategy in STRATEGIES:
        with open(os.path.join(directory, strategy + '.j2'), 'r', encoding='utf-8') as f:
            templates[strategy] = make_template(strategy, f.read())
    return templates

def load_fewshot(filename=None):
    '''{strategy: ((source, simplification), ...)} from a JSON file.'''
    with open(filename or os.path.join(DATADIR, 'fewshot.json'), 'r', encoding='utf-8') as f:
        obj = json.load(f)
    return {k: tuple((p['source'], p['simplification']) for p in v) for k, v in obj.items()}

def format_examples(examples):
    return '\n\n'.join(
        'Beispiel %d\nOriginaltext:\n%s\nVereinfachung:\n%s' % (n, s, t)
        for n, (s, t) in enumerate(examples, 1))

def render_prompt(template, excerpt):
    text = excerpt if isinstance(excerpt, str) else excerpt.text
    try:
        return _env.from_string(template.body).render(
            excerpt=text, examples=format_examples(template.few_shot_examples))
    except jinja2.UndefinedError as ex:
        raise MissingSlot('%s template: %s' % (template.strategy, ex))

def prompt_hash(prompt):
    return sha1hex(prompt)

def pair_id(excerpt_id, label):
    return '%s|%s' % (excerpt_id, label)

def template_for(label, templates, fewshot):
    t = templates[label.prompt_strategy]
    if label.few_shot:
        examples = fewshot.get(label.prompt_strategy)
        if not examples:
            raise ConfigInvalid('no few-shot examples for %s' % label.prompt_strategy)
        return make_template(t.strategy, t.body, examples)
    return t

Job = collections.namedtuple('Job', ('pair_id', 'excerpt_id', 'label', 'prompt', 'provider'))

def check_labels(labels, complete=True):
    labels = list(labels)
    for label in labels:
        if not label.is_valid():
            raise ConfigInvalid('invalid configuration %r' % (label,))
    if len(set(labels)) != len(labels):
        raise ConfigInvalid('duplicated configurations in the matrix')
    if complete and set(labels) != set(all_labels()):
        raise ConfigInvalid('the matrix has %d of the %d configurations' % (
            len(labels), len(all_labels())))
    return labels

def plan_matrix(excerpts, templates, providers, fewshot=None, labels=None):
    '''
    Enumerates every (excerpt, configuration) job. `providers` maps model
    sizes to GenerationProviders; `labels` defaults to all 18 configurations.
    '''
    labels = check_labels(all_labels() if labels is None else labels, labels is None)
    missing = sorted(set(l.model_size for l in labels) - set(providers))
    if missing:
        raise ConfigInvalid('no generation provider for sizes %s' % ', '.join(missing))
    missing = sorted(set(l.prompt_strategy for l in labels) - set(templates))
    if missing:
        raise ConfigInvalid('no prompt template for %s' % ', '.join(missing))
    fewshot = fewshot or {}
    resolved = {l: template_for(l, templates, fewshot) for l in labels}
    jobs = []
    for excerpt in excerpts:
        for label in labels:
            prompt = render_prompt(resolved[label], excerpt)
            jobs.append(Job(pair_id(excerpt.excerpt_id, label), excerpt.excerpt_id,
                            label, prompt, providers[label.model_size]))
    return jobs

def failed_record(job, error):
    meta = {'model_id': job.provider.model_id, 'params': job.provider.params,
            'error': str(error)}
    return SimplificationRecord(job.pair_id, job.excerpt_id, job.label,
                                prompt_hash(job.prompt), '', ('provider_failure',), meta)

def run_job(job):
    '''Provider failures end up as a flagged record, anything else raises.'''
    try:
        text, meta = job.provider.generate(job.prompt)
    except ProviderFailure as ex:
        logger.warning('%s: %s', job.pair_id, ex)
        return failed_record(job, ex)
    text = text or ''
    flags = () if text.strip() else ('empty_output',)
    return SimplificationRecord(job.pair_id, job.excerpt_id, job.label,
                                prompt_hash(job.prompt), text, flags, meta)

def record_json(rec):
    return collections.OrderedDict((
        ('pair_id', rec.pair_id),
        ('excerpt_id', rec.excerpt_id),
        ('label', rec.label.todict()),
        ('prompt_hash', rec.prompt_hash),
        ('output_text', rec.output_text),
        ('flags', list(rec.flags)),
        ('meta', rec.meta),
    ))

def record_from_json(obj):
    return SimplificationRecord(
        obj['pair_id'], obj['excerpt_id'], ConfigurationLabel.fromdict(obj['label']),
        obj.get('prompt_hash', ''), obj.get('output_text') or '',
        tuple(obj.get('flags') or ()), obj.get('meta') or {})

def read_records(filename):
    '''Records sorted by pair_id. On duplicates the first occurrence wins.'''
    records = collections.OrderedDict()
    for obj in read_jsonl(filename):
        rec = record_from_json(obj)
        if rec.pair_id in records:
            logger.warning('%s: duplicate pair_id %s ignored', filename, rec.pair_id)
            continue
        records[rec.pair_id] = rec
    return [records[k] for k in sorted(records)]

def _truncate_torn(out):
    '''
    Cuts a final line that an interrupted run left half-written. Only the
    last line may be torn; a bad line before it raises.
    '''
    with open(out, 'rb') as f:
        data = f.read()
    end = len(data)
    tail = data.rstrip(b'\n')
    start = tail.rfind(b'\n') + 1
    last = tail[start:].strip()
    if not last:
        return
    try:
        json.loads(last.decode('utf-8'))
    except ValueError:
        logger.warning('%s: dropping torn last line (%d bytes)', out, end - start)
        with open(out, 'r+b') as f:
            f.truncate(start)
        return
    if not data.endswith(b'\n'):
        with open(out, 'ab') as f:
            f.write(b'\n')

def _done(out):
    if not os.path.isfile(out) or not os.path.getsize(out):
        return set()
    _truncate_torn(out)
    return set(obj['pair_id'] for obj in read_jsonl(out))

def _sequential(todo):
    for job in todo:
        try:
            yield job, run_job(job)
        except Exception:
            logger.exception('%s: generation crashed', job.pair_id)
            yield job, None

def _completed(futures):
    for fut in concurrent.futures.as_completed(futures):
        try:
            rec = fut.result()
        except Exception:
            logger.exception('%s: generation crashed', futures[fut].pair_id)
            rec = None
        yield futures[fut], rec

def generate_matrix(excerpts, templates, providers, out, fewshot=None, labels=None,
                    submit=None, header=None):
    '''
    Generates the missing records of the matrix and appends them to `out`
    in completion order. `submit(fn, job)` returns a future; without it jobs
    run sequentially. A job that returns None or crashes is recorded as a
    failure. Returns the records written by this call.
    '''
    jobs = plan_matrix(excerpts, templates, providers, fewshot, labels)
    done = _done(out)
    todo = [j for j in jobs if j.pair_id not in done]
    if done:
        logger.info('resuming: %d of %d records present', len(jobs) - len(todo), len(jobs))
    else:
        write_jsonl(out, (), header)
    written = []
    with open(out, 'a', encoding='utf-8') as f:
        if submit is None:
            results = _sequential(todo)
        else:
            results = _completed({submit(run_job, j): j for j in todo})
        for job, rec in results:
            if rec is None:
                rec = failed_record(job, 'generation crashed')
            f.write(json.dumps(record_json(rec), ensure_ascii=False) + '\n')
            f.flush()
            written.append(rec)
    failed = sum(1 for r in written if 'provider_failure' in r.flags)
    if failed:
        logger.warning('%d of %d generations failed', failed, len(written))
    return written


class MockGenerator(GenerationProvider):
    '''
    Deterministic stand-in. Takes the last excerpt block of the prompt, splits
    sentences at commas when `split` is set and drops each sentence after the
    first with probability `drop`, seeded by the prompt and `seed`. Prompts
    matching `fail_pattern` raise ProviderFailure.
    '''
    default_concurrency = 16
    re_sentence = re.compile(r'(?<=[.!?])\s+')

    def __init__(self, config=None):
        super().__init__(config)
        self.marker = self.config.get('marker', 'Ausgangstext:')
        self.split = self.config.get('split', False)
        self.drop = float(self.config.get('drop', 0.0))
        fail = self.config.get('fail_pattern')
        self.fail = re.compile(fail) if fail else None

    def _sentences(self, text):
        for s in self.re_sentence.split(text.strip()):
            if not s:
                continue
            if not self.split:
                yield s
                continue
            parts = [p.strip() for p in s.rstrip('.!?').split(',') if p.strip()]
            for p in parts:
                yield p[0].upper() + p[1:] + '.'

    def generate(self, prompt):
        if self.fail is not None and self.fail.search(prompt):
            raise ProviderFailure('%s: refused prompt' % self.model_id)
        with self.guard:
            text = prompt.rsplit(self.marker, 1)[-1]
            rnd = random.Random('%s|%s' % (sha1hex(prompt), self.params['seed']))
            out = []
            for n, s in enumerate(self._sentences(text)):
                if n and rnd.random() < self.drop:
                    continue
                out.append(s)
        meta = collections.OrderedDict((
            ('model_id', self.model_id), ('params', self.params)))
        return ' '.join(out), meta


class HttpGenerator(GenerationProvider):
    '''
    Chat-completions style endpoint. Request and response are kept verbatim
    in the record metadata.
    '''

    def __init__(self, config=None):
        super().__init__(config)
        self.endpoint = JsonEndpoint(
            self.config.get('url'), self.config.get('timeout', 300),
            self.config.get('attempts', 3), api_key=self.config.get('api_key'))
        self.path = self.config.get('path', '')

    def generate(self, prompt):
        request = collections.OrderedDict((
            ('model', self.model_id),
            ('messages', [{'role': 'user', 'content': prompt}]),
            ('temperature', self.params['temperature']),
            ('max_tokens', self.params['max_tokens']),
            ('seed', self.params['seed']),
        ))
        with self.guard:
            response = self.endpoint.post(request, path=self.path)
        try:
            text = response['choices'][0]['message']['content']
        except (KeyError, IndexError, TypeError):
            raise ProviderFailure('malformed completion response: %.200r' % response)
        meta = collections.OrderedDict((
            ('model_id', self.model_id), ('params', self.params),
            ('request', request), ('response', response)))
        return text or '', meta

    def close(self):
        self.endpoint.close()
