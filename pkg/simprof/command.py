#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Command line surface. Each command reads its inputs from the paths given or
from the output directory, and writes artifacts that carry the config hash
and seed in their header.
'''

import os
import sys
import json
import logging
import argparse
import collections

from . import generation, sampler, validation
from .base import ProfilerInstance
from .config import load_config
from .fingerprint import (
    Pair, build_fingerprint, aggregate, fingerprint_record, fingerprint_from_record,
    write_matrix, read_matrix
)
from .model import (
    __version__, RawText, ConfigurationLabel, SamplingPlan, STRATEGIES, SIZES, all_labels,
    SimprofError, ConfigError, ConfigInvalid, BudgetExceedsCorpus, DegenerateTask,
    UnknownFeature, InvalidAxes, ProviderFailure, AnnotationFailure, EmptyInput
)
from .rules import make_ruleset
from .spider import spider_config, render_spider, feature_of
from .text import segment, read_corpus, extract_windows, excerpt_record, read_excerpts
from .utils import read_jsonl, write_jsonl, header_comment, render_template

logger = logging.getLogger('cmd')

Command = collections.namedtuple('Command', ('func', 'help', 'arguments'))

commands = collections.OrderedDict()

def register_command(name, *arguments):
    '''`arguments` are (args, kwargs) pairs for the subcommand parser.'''
    def wrapper(func):
        commands[name] = Command(func, func.__doc__, arguments)
        return func
    return wrapper

def arg(*args, **kwargs):
    return (args, kwargs)

GROUPINGS = ('strategy', 'size', 'few_shot', 'config', 'pair')

# exit codes
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_PROVIDER = 3

def _input(path, what):
    if not path:
        raise ConfigError('no %s given' % what)
    if not os.path.isfile(path):
        raise ConfigError('%s not found: %s' % (what, path))
    return path

def _write(filename, text):
    with open(filename, 'w', encoding='utf-8', newline='') as f:
        f.write(text)


@register_command('sample',
    arg('corpus', nargs='?', help='JSONL corpus {id, title, text}'),
    arg('--budget', type=int, help='number of excerpts to select'))
def cmd_sample(inst, args):
    '''Cut the corpus into excerpts, profile them against the rules and
    select a subset covering every rule.'''
    config = inst.config
    corpus = _input(args.corpus or config.corpus, 'corpus')
    budget = args.budget or int(config.sampler.budget)
    articles = list(read_corpus(corpus, config.language))
    logger.info('corpus: %d articles', len(articles))

    def annotate(raw):
        try:
            return segment(raw, inst.annotator, inst.cache)
        except EmptyInput:
            logger.warning('article %s is empty, skipped', raw.source_id)

    docs = inst.map(annotate, articles)
    excerpts = [e for d in docs if d is not None
                for e in extract_windows(d, int(config.sampler.window))]
    logger.info('corpus: %d excerpts', len(excerpts))
    rulesets = inst.rulesets(tuple(config.sampler.categories))
    rules = make_ruleset('sampler', '1', [r for rs in rulesets for r in rs.rules])
    strict = bool(config.rules.strict)
    profiles = inst.map(lambda e: sampler.profile_excerpt(e, rules, strict), excerpts)

    rule_ids = [r.id for r in rules.rules]
    quotas = config.sampler.quotas
    if quotas is None:
        quotas = sampler.default_quotas(rule_ids, budget, int(config.sampler.quota_min),
                                        float(config.sampler.quota_share))
    selected = sampler.greedy_sample(profiles, SamplingPlan(budget, dict(quotas)))
    by_id = {e.excerpt_id: e for e in excerpts}
    report = sampler.coverage_report(profiles, selected, quotas)
    corpus_share = sampler.rule_distribution(profiles, list(report))
    for r, row in report.items():
        row['corpus_share'] = corpus_share[r]

    write_jsonl(inst.path('excerpts.jsonl'), (excerpt_record(by_id[i]) for i in selected),
                inst.header)
    write_jsonl(inst.path('profiles.jsonl'), map(sampler.profile_record, profiles),
                inst.header)
    with open(inst.path('coverage.json'), 'w', encoding='utf-8') as f:
        json.dump(collections.OrderedDict((('header', inst.header), ('selected', selected),
                                           ('rules', report))), f, ensure_ascii=False, indent=1)
        f.write('\n')
    _write(inst.path('coverage.md'), render_template(
        'coverage.md', header=header_comment(inst.header), rows=report,
        selected=len(selected), total=len(profiles)))
    logger.info('selected %d of %d excerpts', len(selected), len(profiles))
    return 0


@register_command('generate',
    arg('excerpts', nargs='?', help='excerpt file, default <out-dir>/excerpts.jsonl'),
    arg('--fresh', action='store_true', help='discard existing records instead of resuming'))
def cmd_generate(inst, args):
    '''Generate one simplification per excerpt and configuration.'''
    config = inst.config
    excerpts = read_excerpts(_input(args.excerpts or inst.path('excerpts.jsonl'), 'excerpt file'))
    templates = generation.load_templates(config.generation.templates)
    fewshot = generation.load_fewshot(config.generation.fewshot)
    labels = config.generation.labels
    if labels is not None:
        labels = [ConfigurationLabel.fromdict(d) for d in labels]
    out = inst.path('simplifications.jsonl')
    if args.fresh and os.path.isfile(out):
        os.remove(out)
    written = generation.generate_matrix(
        excerpts, templates, inst.generators(), out, fewshot, labels,
        inst.submit_task, inst.header)
    failed = sum(1 for r in written if 'provider_failure' in r.flags)
    logger.info('generated %d records, %d failed', len(written), failed)
    return 0


@register_command('profile',
    arg('records', nargs='?', help='simplification records, default <out-dir>/simplifications.jsonl'),
    arg('--excerpts', help='excerpt file, default <out-dir>/excerpts.jsonl'))
def cmd_profile(inst, args):
    '''Build the fingerprint of every simplification and the feature matrix.'''
    config = inst.config
    records = generation.read_records(
        _input(args.records or inst.path('simplifications.jsonl'), 'simplification records'))
    sources = {e.excerpt_id: e for e in read_excerpts(
        _input(args.excerpts or inst.path('excerpts.jsonl'), 'excerpt file'))}
    providers = inst.providers()
    annotator = inst.annotator

    def build(rec):
        try:
            excerpt = sources[rec.excerpt_id]
        except KeyError:
            raise ConfigError('%s: unknown excerpt %s' % (rec.pair_id, rec.excerpt_id))
        source = segment(RawText(excerpt.text, excerpt.excerpt_id, config.language),
                         annotator, inst.cache)
        simp = None
        if rec.output_text.strip():
            simp = segment(RawText(rec.output_text, rec.pair_id, config.language),
                           annotator, inst.cache)
        fp = build_fingerprint(Pair(rec.pair_id, rec.label, source, simp), providers)
        if rec.flags:
            fp = fp._replace(flags=tuple(sorted(set(fp.flags) | set(rec.flags))))
        return fp

    fingerprints = inst.map(build, records)
    write_jsonl(inst.path('fingerprints.jsonl'), map(fingerprint_record, fingerprints),
                inst.header)
    write_matrix(fingerprints, inst.path('matrix.csv'), inst.header)
    inst.cache.commit()
    flagged = sum(1 for fp in fingerprints if fp.flags)
    logger.info('profiled %d pairs, %d flagged', len(fingerprints), flagged)
    return 0


@register_command('validate',
    arg('matrix', nargs='?', help='feature matrix, default <out-dir>/matrix.csv'),
    arg('--tasks', help='JSON task catalogue'))
def cmd_validate(inst, args):
    '''Train linear classifiers on the feature matrix for every task.'''
    cfg = inst.config.validation
    df = read_matrix(_input(args.matrix or inst.path('matrix.csv'), 'feature matrix'))
    tasks_file = args.tasks or cfg.tasks
    if tasks_file:
        tasks, ablations = validation.load_tasks(_input(tasks_file, 'task catalogue'))
    else:
        tasks, ablations = validation.default_tasks()
    folds, repeats, trials = int(cfg.folds), int(cfg.repeats), int(cfg.trials)
    results, ablated = validation.run_study(
        df, tasks, ablations, float(cfg.reg_strength), folds, repeats,
        inst.seed, trials, inst.executor)

    record = validation.study_record(results, ablated)
    record['header'] = inst.header
    record.move_to_end('header', last=False)
    with open(inst.path('study.json'), 'w', encoding='utf-8') as f:
        json.dump(record, f, ensure_ascii=False, indent=1)
        f.write('\n')
    _write(inst.path('study.md'), render_template(
        'study.md', header=header_comment(inst.header), results=results, ablated=ablated,
        folds=folds, repeats=repeats, trials=trials))
    with open(inst.path('importance.csv'), 'w', encoding='utf-8', newline='') as f:
        f.write('# %s\n' % header_comment(inst.header))
        validation.importance_frame(results).to_csv(f, float_format='%.6f', lineterminator='\n')
    for name, arms in results.items():
        logger.info('%s: F1 %.1f (simple %.1f, random %.1f)', name, arms['full'].f1_mean,
                    arms['simple'].f1_mean, arms['random'].f1_mean)
    return 0

def group_key(group_by, fp):
    '''The ConfigurationLabel a fingerprint is grouped under, None to leave it out.'''
    label = fp.label or ConfigurationLabel(None, None, None)
    if group_by == 'strategy':
        return ConfigurationLabel(label.prompt_strategy, None, None)
    elif group_by == 'size':
        return ConfigurationLabel(None, label.model_size, None)
    elif group_by == 'few_shot':
        if label.few_shot is None:
            return None
        return ConfigurationLabel(None, None, label.few_shot)
    elif group_by == 'config':
        return label
    raise ConfigError('unknown grouping %r' % group_by)

def _group_order(group_by, key):
    if group_by == 'strategy':
        return (STRATEGIES.index(key.prompt_strategy) if key.prompt_strategy in STRATEGIES
                else len(STRATEGIES), str(key))
    elif group_by == 'size':
        return (SIZES.index(key.model_size) if key.model_size in SIZES else len(SIZES), str(key))
    elif group_by == 'few_shot':
        return (key.few_shot, '')
    labels = all_labels()
    return (labels.index(key) if key in labels else len(labels), str(key))

def group_fingerprints(fingerprints, group_by):
    '''[(label, [Fingerprint])] in canonical group order.'''
    if group_by == 'pair':
        return [(fp.pair_id, [fp]) for fp in sorted(fingerprints, key=lambda f: f.pair_id)]
    groups = collections.defaultdict(list)
    for fp in fingerprints:
        key = group_key(group_by, fp)
        if key is not None:
            groups[key].append(fp)
    return [(k, groups[k]) for k in sorted(groups, key=lambda k: _group_order(group_by, k))]


@register_command('report',
    arg('fingerprints', nargs='?', help='fingerprint file, default <out-dir>/fingerprints.jsonl'),
    arg('--group-by', choices=GROUPINGS, default='strategy', help='series of the overlay'))
def cmd_report(inst, args):
    '''Render an overlay spider diagram and a summary table per group.'''
    fingerprints = [fingerprint_from_record(r) for r in read_jsonl(
        _input(args.fingerprints or inst.path('fingerprints.jsonl'), 'fingerprint file'))]
    groups = group_fingerprints(fingerprints, args.group_by)
    if not groups:
        raise EmptyInput('no fingerprints to group by %s' % args.group_by)
    series = [aggregate(fps, label) for label, fps in groups]
    cfg = spider_config(**{k: v for k, v in inst.config.spider.items() if v is not None})
    header = header_comment(inst.header)
    _write(inst.path('spider-%s.svg' % args.group_by), render_spider(series, cfg, header))
    rows = []
    for n, mf in enumerate(series):
        rows.append({
            'label': cfg.series_labels[n] if n < len(cfg.series_labels) else str(mf.label),
            'n': mf.n,
            'cells': ['%.3f ± %.3f' % (mf.mean[feature_of(a)], mf.std[feature_of(a)])
                      for a in cfg.axes],
        })
    _write(inst.path('summary-%s.md' % args.group_by), render_template(
        'summary.md', header=header, group_by=args.group_by, axes=cfg.axes, rows=rows))
    logger.info('report: %d series by %s', len(series), args.group_by)
    return 0


def parser():
    p = argparse.ArgumentParser(prog='simprofctl.py',
                                description='Reference-free simplification profiler.')
    p.add_argument('--config', help='config file (.py with `config = {...}` or .json)')
    p.add_argument('--seed', type=int, help='root random seed')
    p.add_argument('--out-dir', help='output directory')
    p.add_argument('--jobs', type=int, help='worker threads')
    p.add_argument('--log-level', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    p.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = p.add_subparsers(dest='command', metavar='command')
    sub.required = True
    for name, cmd in commands.items():
        sp = sub.add_parser(name, help=cmd.help.splitlines()[0], description=cmd.help)
        for a, kw in cmd.arguments:
            sp.add_argument(*a, **kw)
    return p

def overrides(args):
    result = {}
    if args.seed is not None:
        result['seed'] = args.seed
    if args.out_dir:
        result['out_dir'] = args.out_dir
    if args.jobs:
        result['jobs'] = args.jobs
    return result

def run(args):
    config = load_config(args.config, overrides(args))
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)
    elif config.debug:
        logging.getLogger().setLevel(logging.DEBUG)
    inst = ProfilerInstance(config)
    try:
        return commands[args.command].func(inst, args)
    finally:
        inst.exit()

def main(argv=None):
    '''Runs one command and maps failures onto exit codes.'''
    args = parser().parse_args(argv)
    try:
        return run(args)
    except (ConfigError, ConfigInvalid, BudgetExceedsCorpus, DegenerateTask,
            UnknownFeature, InvalidAxes) as ex:
        logger.error('%s: %s', type(ex).__name__, ex)
        return EXIT_CONFIG
    except (ProviderFailure, AnnotationFailure) as ex:
        logger.error('%s: %s', type(ex).__name__, ex)
        return EXIT_PROVIDER
    except OSError as ex:
        logger.error('I/O error: %s', ex)
        return EXIT_IO
    except SimprofError as ex:
        logger.exception('%s: %s', type(ex).__name__, ex)
        return EXIT_CONFIG

if __name__ == '__main__':
    sys.exit(main())
