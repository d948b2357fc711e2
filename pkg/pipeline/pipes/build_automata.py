# coding=utf-8
from automata import build_reducible_nfa, complement, complete_dfa, determinize, minimize


def build_nfa(presentation, system, obj: str, **kwargs):
    # the system comes out of complete_system, so the completeness check is skipped
    return {'nfa': build_reducible_nfa(presentation, system, obj, check=False)}


def determinize_nfa(nfa, **kwargs):
    return {'dfa': complete_dfa(determinize(nfa))}


def complement_dfa(dfa, **kwargs):
    return {'kb': complement(dfa)}


def minimize_kb(kb, **kwargs):
    return {'minimal': minimize(kb)}
