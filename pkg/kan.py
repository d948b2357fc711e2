# coding=utf-8
"""
Command line front end: presentation file -> completed rewrite system ->
per object automata -> regular expressions for the Kan extension sets K_B.

    python kan.py complete presentations/two_cycles.kan
    python kan.py regex presentations/two_cycles.kan --object B1
    python kan.py automaton presentations/two_cycles.kan --object B3 --stage nfa
"""
import argparse
import json
import sys
from typing import List, NamedTuple, Optional

import config
from automata import bfs_order, enumerate_words, to_dot, transition_table
from kan_helpers import CompletionFailure, KanError, logger, words_text
from pipeline.kan_pipeline import KanPipeline
from pipeline.report import build_report, format_report, report_json
from presentation import Path, format_semigroup, load_presentation, semigroup_presentation
from rewriting import act, dump_rules, epsilon, parse_path, parse_term, reduce, tau, term_from_word

STAGES = ('nfa', 'dfa', 'complement', 'minimal')


class Output(NamedTuple):
    text: str
    data: object
    dot: Optional[str] = None


def _pipeline(args) -> KanPipeline:
    return KanPipeline(filename=args.file, max_rounds=args.max_rounds, jobs=args.jobs)


def _objects(pipeline: KanPipeline, args) -> List[str]:
    if args.object is None:
        return list(pipeline.presentation.delta.objects)
    return [args.object]


def cmd_check(args) -> Output:
    p = load_presentation(args.file)
    data = {
        'valid': True,
        'objects': {'A': list(p.gamma.objects), 'B': list(p.delta.objects)},
        'arrows': {'A': [a.name for a in p.gamma.arrows], 'B': [a.name for a in p.delta.arrows]},
        'relations': len(p.relations),
        'elements': list(p.elements),
    }
    text = 'OK: %d objects and %d arrows in A, %d objects and %d arrows in B, %d relations, %d elements\n' % (
        len(p.gamma.objects), len(p.gamma.arrows), len(p.delta.objects), len(p.delta.arrows),
        len(p.relations), len(p.elements))
    return Output(text, data)


def cmd_complete(args) -> Output:
    pipeline = _pipeline(args)
    system = pipeline.system
    result = pipeline.completion
    data = {
        'rules': [str(rule) for rule in system.rules()],
        'rounds': result.rounds,
        'added': result.added,
    }
    return Output(dump_rules(system), data)


def cmd_normalform(args) -> Output:
    pipeline = _pipeline(args)
    term = parse_term(pipeline.presentation, args.term)
    normal_form = reduce(pipeline.system, term, args.max_steps)
    return Output('%s\n' % normal_form, {'term': str(term), 'normal_form': str(normal_form)})


def cmd_action(args) -> Output:
    pipeline = _pipeline(args)
    p = pipeline.presentation
    term = parse_term(p, args.term)
    path = parse_path(p, args.path, tau(p, term))
    result = act(pipeline.system, term, path, args.max_steps)
    return Output('%s\n' % result, {'term': str(term), 'path': str(path), 'result': str(result)})


def cmd_regex(args) -> Output:
    pipeline = _pipeline(args)
    results = pipeline.run_objects(_objects(pipeline, args))

    lines = []
    data = []
    for result in results:
        lines.append('K_%s = %s' % (result['obj'], result['regex_text']))
        lines.append('K_%s is %s' % (result['obj'], result['count']))
        data.append({
            'object': result['obj'],
            'regex': result['regex_text'],
            'finite': result['count'].is_finite,
            'count': result['count'].count,
        })
    return Output('\n'.join(lines) + '\n', data)


def cmd_automaton(args) -> Output:
    pipeline = _pipeline(args)
    result = pipeline.run_object(args.object)
    machine = {
        'nfa': result['nfa'],
        'dfa': result['dfa'],
        'complement': result['kb'],
        'minimal': result['minimal'],
    }[args.stage]

    rows = []
    for state in bfs_order(machine):
        rows.append({
            'state': str(state),
            'accepting': state in machine.accepting,
            'transitions': {
                symbol: sorted(str(t) for t in machine.transitions.get((state, symbol), ()))
                if args.stage == 'nfa' else str(machine.transitions.get((state, symbol), ''))
                for symbol in machine.alphabet},
        })
    name = '%s_%s' % (args.stage, args.object)
    return Output(transition_table(machine), {'object': args.object, 'stage': args.stage, 'states': rows},
                  dot=to_dot(machine, name) if args.format == 'dot' else None)


def _members(pipeline: KanPipeline, obj: str, max_len: int):
    p = pipeline.presentation
    words = enumerate_words(pipeline.run_object(obj)['minimal'], max_len)
    return [term_from_word(p, word) for word in words]


def cmd_members(args) -> Output:
    pipeline = _pipeline(args)
    members = _members(pipeline, args.object, args.max_len)
    return Output(''.join('%s\n' % t for t in members), [str(t) for t in members])


def cmd_semigroup(args) -> Output:
    s = semigroup_presentation(load_presentation(args.file))
    data = {
        'generators': list(s.generators),
        'relations': [[words_text(lhs), words_text(rhs)] for lhs, rhs in s.relations],
    }
    return Output(format_semigroup(s), data)


def cmd_tables(args) -> Output:
    """K_B members up to a length, epsilon on every element and Kb for every arrow b of B."""
    pipeline = _pipeline(args)
    p, r = pipeline.presentation, pipeline.system
    results = pipeline.run_objects()

    members = {}
    lines = []
    data = {'objects': [], 'epsilon': {}, 'arrows': []}
    for result in results:
        obj = result['obj']
        members[obj] = _members(pipeline, obj, args.max_len)
        count = result['count']
        truncated = not count.is_finite or count.count > len(members[obj])
        lines.append('K_%s (%s%s):' % (obj, count, ', up to length %d' % args.max_len if truncated else ''))
        lines.extend('  %s' % t for t in members[obj])
        data['objects'].append({
            'object': obj,
            'members': [str(t) for t in members[obj]],
            'truncated': truncated,
        })

    lines.append('epsilon:')
    for x in p.elements:
        value = epsilon(r, x, args.max_steps)
        lines.append('  %s -> %s' % (x, value))
        data['epsilon'][x] = str(value)

    for arrow in p.delta.arrows:
        lines.append('K%s: K_%s -> K_%s' % (arrow.name, arrow.src, arrow.tgt))
        mapping = {}
        for t in members[arrow.src]:
            image = act(r, t, Path(arrow.src, (arrow.name,)), args.max_steps)
            lines.append('  %s -> %s' % (t, image))
            mapping[str(t)] = str(image)
        data['arrows'].append({'arrow': arrow.name, 'src': arrow.src, 'tgt': arrow.tgt, 'map': mapping})

    return Output('\n'.join(lines) + '\n', data)


def cmd_report(args) -> Output:
    report = build_report(_pipeline(args))
    return Output(format_report(report), report_json(report))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('file', help='presentation file')
    common.add_argument('--format', choices=('text', 'json', 'dot'), default='text')
    common.add_argument('--max-rounds', type=int, default=None,
                        help='completion rounds (default %d)' % config.MAX_COMPLETION_ROUNDS)
    common.add_argument('--max-steps', type=int, default=None,
                        help='rewrite steps per reduction (default %d)' % config.MAX_REWRITE_STEPS)
    common.add_argument('--jobs', type=int, default=config.DEFAULT_JOBS,
                        help='threads for the per object pipelines')

    parser = argparse.ArgumentParser(prog='kan', description='Kan extensions of category actions')
    commands = parser.add_subparsers(dest='name', required=True)

    command = commands.add_parser('check', parents=[common], help='parse and validate a presentation')
    command.set_defaults(command=cmd_check)

    command = commands.add_parser('complete', parents=[common], help='print the completed rewrite system')
    command.set_defaults(command=cmd_complete)

    command = commands.add_parser('normalform', parents=[common], help="normal form of a term 'x | b1 b2'")
    command.add_argument('term')
    command.set_defaults(command=cmd_normalform)

    command = commands.add_parser('action', parents=[common], help='act on a term with a path')
    command.add_argument('term')
    command.add_argument('path')
    command.set_defaults(command=cmd_action)

    command = commands.add_parser('regex', parents=[common], help='regular expression for K_B')
    command.add_argument('--object', default=None, help='object of B (default: all of them)')
    command.set_defaults(command=cmd_regex)

    command = commands.add_parser('automaton', parents=[common], help='automaton of one pipeline stage')
    command.add_argument('--object', required=True)
    command.add_argument('--stage', choices=STAGES, default='nfa')
    command.add_argument('--dot', action='store_true', help='same as --format dot')
    command.set_defaults(command=cmd_automaton)

    command = commands.add_parser('members', parents=[common], help='members of K_B up to a length')
    command.add_argument('--object', required=True)
    command.add_argument('--max-len', type=int, default=config.DEFAULT_MEMBERS_MAX_LEN)
    command.set_defaults(command=cmd_members)

    command = commands.add_parser('semigroup', parents=[common], help='the associated semigroup presentation')
    command.set_defaults(command=cmd_semigroup)

    command = commands.add_parser('tables', parents=[common], help='K_B, epsilon and Kb as tables')
    command.add_argument('--max-len', type=int, default=config.DEFAULT_TABLES_MAX_LEN)
    command.set_defaults(command=cmd_tables)

    command = commands.add_parser('report', parents=[common], help='the whole pipeline for every object')
    command.set_defaults(command=cmd_report)

    return parser


def render(output: Output, output_format: str) -> str:
    if output_format == 'json':
        return json.dumps(output.data, indent=2) + '\n'
    if output_format == 'dot':
        if output.dot is None:
            raise KanError('--format dot is only available for the automaton command')
        return output.dot
    return output.text


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, 'dot', False):
        args.format = 'dot'

    try:
        sys.stdout.write(render(args.command(args), args.format))
    except CompletionFailure as e:
        logger.exception('Command %s failed', args.name)
        sys.stdout.write(dump_rules(e.system))
        sys.stderr.write('error: %s\n' % e)
        return e.exit_code
    except KanError as e:
        logger.exception('Command %s failed', args.name)
        sys.stderr.write('error: %s\n' % e)
        return e.exit_code
    except OSError as e:
        logger.exception('Command %s failed', args.name)
        sys.stderr.write('error: %s\n' % e)
        return KanError.exit_code

    return 0


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
