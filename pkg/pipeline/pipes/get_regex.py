# coding=utf-8
from automata import count_language, trim
from language import dfa_to_equations, format_term_regex, simplify, solve


def get_equations(minimal, **kwargs):
    return {'equations': dfa_to_equations(trim(minimal))}


def get_regex(presentation, equations, **kwargs):
    regex = simplify(solve(equations)[0])
    return {'regex': regex, 'regex_text': format_term_regex(regex, presentation.elements)}


def get_count(minimal, **kwargs):
    return {'count': count_language(minimal)}
