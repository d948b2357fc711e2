# coding=utf-8
from typing import List, NamedTuple

from pipeline.kan_pipeline import KanPipeline


class PresentationSummary(NamedTuple):
    objects_a: int
    arrows_a: int
    objects_b: int
    arrows_b: int
    relations: int
    elements: int


class ObjectReport(NamedTuple):
    obj: str
    nfa_states: int
    dfa_states: int
    minimal_states: int
    equations: int
    regex: str
    count: str


class PipelineReport(NamedTuple):
    presentation: PresentationSummary
    initial_rules: int
    rules: int
    rounds: int
    added: int
    objects: List[ObjectReport]


def build_report(pipeline: KanPipeline) -> PipelineReport:
    p = pipeline.presentation
    summary = PresentationSummary(
        objects_a=len(p.gamma.objects),
        arrows_a=len(p.gamma.arrows),
        objects_b=len(p.delta.objects),
        arrows_b=len(p.delta.arrows),
        relations=len(p.relations),
        elements=len(p.elements))

    objects = [
        ObjectReport(
            obj=data['obj'],
            nfa_states=len(data['nfa'].states),
            dfa_states=len(data['dfa'].states),
            minimal_states=len(data['minimal'].states),
            equations=data['equations'].size,
            regex=data['regex_text'],
            count=str(data['count']))
        for data in pipeline.run_objects()]

    completion = pipeline.completion
    return PipelineReport(
        presentation=summary,
        initial_rules=len(pipeline.run()['initial']),
        rules=len(completion.system),
        rounds=completion.rounds,
        added=completion.added,
        objects=objects)


def format_report(report: PipelineReport) -> str:
    s = report.presentation
    lines = [
        'presentation: %d objects and %d arrows in A, %d objects and %d arrows in B, %d relations, %d elements' % (
            s.objects_a, s.arrows_a, s.objects_b, s.arrows_b, s.relations, s.elements),
        'completion: %d initial rules, %d rules after %d rounds (%d added)' % (
            report.initial_rules, report.rules, report.rounds, report.added),
    ]
    for o in report.objects:
        lines.append('%s: nfa %d states, dfa %d states, minimal %d states, %d equations, %s' % (
            o.obj, o.nfa_states, o.dfa_states, o.minimal_states, o.equations, o.count))
        lines.append('  K_%s = %s' % (o.obj, o.regex))
    return '\n'.join(lines) + '\n'


def report_json(report: PipelineReport) -> dict:
    return {
        'presentation': report.presentation._asdict(),
        'completion': {
            'initial_rules': report.initial_rules,
            'rules': report.rules,
            'rounds': report.rounds,
            'added': report.added,
        },
        'objects': [o._asdict() for o in report.objects],
    }
