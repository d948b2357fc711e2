import random
import re

import pytest

from automata import Dfa, Dump, Num, Subset, determinize, enumerate_words, equivalent, kb_machine, minimize, trim
from kan_helpers import InvariantViolation, RegexSyntaxError
from language import (EMPTY, ID, Concat, Star, Sym, Union, arden, concat, dfa_to_equations, dfa_to_regex,
                      format_equations, format_regex, format_term_regex, nullable, parse_regex, regex_to_nfa, simplify,
                      solve, star, union)


def language(r, alphabet):
    return determinize(regex_to_nfa(r, alphabet=alphabet))


def random_dfa(rng, alphabet, max_states=6):
    states = [Num(i) for i in range(rng.randint(1, max_states))]
    transitions = {
        (state, symbol): rng.choice(states)
        for state in states for symbol in alphabet if rng.random() < 0.8}
    return Dfa(frozenset(states), tuple(alphabet), states[0], transitions,
               frozenset(s for s in states if rng.random() < 0.4))


def random_regex(rng, alphabet, depth=3):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([EMPTY, ID] + [Sym(symbol) for symbol in alphabet] * 2)
    kind = rng.choice((Concat, Union, Star))
    if kind is Star:
        return Star(random_regex(rng, alphabet, depth - 1))
    return kind(tuple(random_regex(rng, alphabet, depth - 1) for _ in range(rng.randint(2, 3))))


@pytest.fixture(scope='module')
def kb(example, completed):
    return {b: kb_machine(example, completed, b) for b in example.delta.objects}


def test_parse_regex():
    a, b = Sym('a'), Sym('b')

    assert parse_regex('id') == ID
    assert parse_regex('id_B1') == ID
    assert parse_regex('0') == EMPTY
    assert parse_regex('a*') == Star(a)
    assert parse_regex('(y1+y2)|b2') == Concat((Union((Sym('y1'), Sym('y2'))), Sym('b2')))
    assert parse_regex('a b + b*') == Union((Concat((a, b)), Star(b)))
    assert parse_regex('(a + b)* a') == Concat((Star(Union((a, b))), a))


def test_parse_golden_expression(golden_expressions):
    r = parse_regex(golden_expressions['B1'])
    elements = Union((Sym('x1'), Sym('x2'), Sym('x3')))
    loop = Star(Union((Sym('b4'), Concat((Sym('b5'), Sym('b3'))))))

    assert r == Concat((elements, Union((Concat((Sym('b5'), Sym('b3'), loop)), ID))))


@pytest.mark.parametrize('text, position, message', [
    ('', 1, 'empty expression'),
    ('a + ', 5, 'expected an expression'),
    ('(a b', 5, "expected ')'"),
    ('a $', 3, 'unexpected character'),
    ('a )', 3, 'unexpected'),
    ('x1 z', 4, 'unknown symbol'),
])
def test_parse_regex_errors(text, position, message):
    with pytest.raises(RegexSyntaxError, match=re.escape(message)) as e:
        parse_regex(text, alphabet=['a', 'b', 'x1'])

    assert e.value.position == position


def test_simplify():
    a, b = Sym('a'), Sym('b')

    assert concat(ID, a) == a
    assert concat(a, EMPTY, b) == EMPTY
    assert union(EMPTY, a, a) == a
    assert union(ID, Star(a)) == Star(a)
    assert star(EMPTY) == ID
    assert star(Star(a)) == Star(a)
    assert star(union(ID, a)) == Star(a)
    assert simplify(parse_regex('id a (0 + b)')) == Concat((a, b))
    assert simplify(parse_regex('0 + 0')) == EMPTY


def test_nullable():
    assert nullable(parse_regex('id'))
    assert nullable(parse_regex('a* + b'))
    assert not nullable(parse_regex('a* b'))
    assert not nullable(EMPTY)


def test_arden():
    a, b = Sym('a'), Sym('b')

    assert arden(a, b) == Concat((Star(a), b))
    assert arden(EMPTY, b) == b

    with pytest.raises(InvariantViolation):
        arden(Star(a), b)


def test_arden_solution_satisfies_equation():
    alphabet = ('a', 'b')
    for a_text, e_text in [('a b + b', 'a*'), ('a', 'id'), ('b a', 'b + a a'), ('a', '0')]:
        a, e = parse_regex(a_text), parse_regex(e_text)
        x = arden(a, e)
        assert equivalent(language(x, alphabet), language(union(concat(a, x), e), alphabet))


def test_simplify_preserves_language():
    rng = random.Random(7)
    alphabet = ('a', 'b', 'c')

    for _ in range(200):
        r = random_regex(rng, alphabet)
        assert equivalent(language(simplify(r), alphabet), language(r, alphabet)), format_regex(r)


def test_arden_random():
    rng = random.Random(11)
    alphabet = ('a', 'b')

    for _ in range(200):
        a = random_regex(rng, alphabet)
        if nullable(a):
            continue
        e = random_regex(rng, alphabet)
        x = arden(a, e)
        assert equivalent(language(x, alphabet), language(union(concat(a, x), e), alphabet)), format_regex(a)


def test_solve_satisfies_every_equation():
    rng = random.Random(5)
    alphabet = ('a', 'b', 'c')

    for _ in range(100):
        system = dfa_to_equations(random_dfa(rng, alphabet, max_states=4))
        order = rng.sample(range(system.size), system.size)
        for solution in (solve(system), solve(system, order)):
            assert sorted(solution) == list(range(system.size))
            for i in range(system.size):
                rhs = union(system.constants[i], *(
                    concat(c, solution[j]) for (row, j), c in system.coefficients.items() if row == i))
                assert equivalent(language(solution[i], alphabet), language(rhs, alphabet)), i


def test_trivial_equations():
    s = Num(0)
    accept_empty = Dfa(frozenset([s]), ('a',), s, {}, frozenset([s]))
    nothing = Dfa(frozenset([s]), ('a',), s, {}, frozenset())

    assert format_equations(dfa_to_equations(accept_empty)) == 'X0 = id\n'
    assert format_equations(dfa_to_equations(nothing)) == 'X0 = 0\n'
    assert solve(dfa_to_equations(nothing)) == {0: EMPTY}


def test_equations_skip_sinks(kb):
    system = dfa_to_equations(kb['B1'])
    sink = system.states.index(Subset(frozenset([Dump()])))

    assert system.constants[sink] == EMPTY
    assert all(sink not in key for key in system.coefficients)


def test_equation_for_object_state(kb):
    text = format_equations(dfa_to_equations(kb['B1']))

    assert re.search(r'^X(\d+) = b1 X\d+ \+ b4 X\1 \+ b5 X\d+ \+ id$', text, re.M)


def test_solve_order_is_a_permutation(kb):
    system = dfa_to_equations(trim(minimize(kb['B1'])))

    with pytest.raises(InvariantViolation):
        solve(system, [0])


def test_golden_expressions(example, kb, golden_expressions):
    alphabet = example.alphabet_order
    for b, text in golden_expressions.items():
        expected = language(parse_regex(text, alphabet), alphabet)
        assert equivalent(expected, kb[b]), b
        assert enumerate_words(expected, 12) == enumerate_words(kb[b], 12)


def test_dfa_to_regex_example(example, kb):
    alphabet = example.alphabet_order
    for b, machine in kb.items():
        assert equivalent(language(dfa_to_regex(machine), alphabet), machine), b
        ascending = list(range(len(trim(minimize(machine)).states)))
        assert equivalent(language(dfa_to_regex(machine, order=ascending), alphabet), machine), b


def test_dfa_to_regex_random():
    rng = random.Random(99)
    alphabet = ('a', 'b', 'c')

    for _ in range(200):
        d = random_dfa(rng, alphabet)
        size = len(trim(minimize(d)).states)
        shuffled = rng.sample(range(size), size)

        r = dfa_to_regex(d)
        assert equivalent(language(r, alphabet), d)
        assert equivalent(language(dfa_to_regex(d, order=shuffled), alphabet), d)
        assert simplify(parse_regex(format_regex(r))) == r


def test_format_regex():
    assert format_regex(parse_regex('(a + b)* (a b)* + id')) == '(a + b)* (a b)* + id'
    assert format_regex(EMPTY) == '0'
    assert format_regex(parse_regex('a (b + id)')) == 'a (b + id)'


def test_format_term_regex(example, golden_expressions):
    elements = example.elements

    assert format_term_regex(Sym('y1'), elements) == 'y1 | id'
    assert format_term_regex(parse_regex(golden_expressions['B1']), elements) == \
        '(x1 + x2 + x3) | (b5 b3 (b4 + b5 b3)* + id)'
    assert format_term_regex(parse_regex(golden_expressions['B3']), elements) == \
        '(x1 + x2 + x3) | (b5 b3 (b4 + b5 b3)* (b1 b2 + b5) + b5) + (y1 + y2) | b2'
    assert format_term_regex(parse_regex('b1 + x1 b2'), elements) == 'b1 + x1 | b2'
    assert format_term_regex(parse_regex('y1 + y2 + x1 b5 + y2 b2 + y1 b2'), elements) == \
        '(y1 + y2) | id + x1 | b5 + (y2 + y1) | b2'
    assert format_term_regex(parse_regex('(y1 + y2) b2 + x1 b2 + b1'), elements) == '(y1 + y2 + x1) | b2 + b1'
    assert format_term_regex(EMPTY, elements) == '0'
