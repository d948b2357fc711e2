# coding=utf-8
import os

import pytest

from presentation import load_presentation, parse_presentation
from rewriting import Term, complete, initial_system

PRESENTATIONS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'presentations')

COMPLETED_RULES = """\
x1 | b1 -> y1 | id
x1 | b4 -> x1 | id
x2 | b1 -> y2 | id
x2 | b4 -> x2 | id
x3 | b1 -> y1 | id
x3 | b4 -> x1 | id
y1 | b2 b3 -> x1 | id
y2 | b2 b3 -> x2 | id
b1 b2 b3 -> b4
"""

K_B1 = '(x1+x2+x3)|(b5 b3 (b4+b5 b3)* + id)'
K_B2 = '(x1+x2+x3)|b5 b3 (b4+b5 b3)* b1 + (y1+y2)|id'
K_B3 = '(x1+x2+x3)|(b5 b3 (b4+b5 b3)* (b1 b2+b5) + b5) + (y1+y2)|b2'


@pytest.fixture(scope='session')
def example_file():
    return os.path.join(PRESENTATIONS, 'two_cycles.kan')


@pytest.fixture(scope='session')
def finite_file():
    return os.path.join(PRESENTATIONS, 'finite_orbit.kan')


@pytest.fixture(scope='session')
def example_text(example_file):
    with open(example_file, encoding='utf-8') as f:
        return f.read()


@pytest.fixture(scope='session')
def example(example_file):
    return load_presentation(example_file)


@pytest.fixture(scope='session')
def initial(example):
    return initial_system(example)


@pytest.fixture(scope='session')
def completed(initial):
    return complete(initial)


@pytest.fixture(scope='session')
def empty_presentation():
    return parse_presentation('objects B : B1\norder :\n')


@pytest.fixture(scope='session')
def terms_up_to():
    """All terms x|p of a presentation whose flattening has at most max_len symbols."""
    def terms(p, max_len):
        result = []
        stack = [Term(x) for x in reversed(p.elements)] if max_len > 0 else []
        while stack:
            t = stack.pop()
            result.append(t)
            if len(t.sigma()) == max_len:
                continue
            end = p.delta.arrow(t.word[-1]).tgt if t.word else p.start_of(t.element)
            for arrow in reversed(p.delta.arrows):
                if arrow.src == end:
                    stack.append(t.append((arrow.name,)))
        return result

    return terms


@pytest.fixture(scope='session')
def golden_rules():
    return COMPLETED_RULES


@pytest.fixture(scope='session')
def golden_expressions():
    return {'B1': K_B1, 'B2': K_B2, 'B3': K_B3}
