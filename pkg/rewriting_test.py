import random

import pytest

from kan_helpers import CompletionFailure, StepBudgetExceeded, TermError
from presentation import Path, load_presentation, parse_presentation
from rewriting import (EQ, GT, LT, PRule, Term, TRule, act, complete, completion, critical_pairs, dump_rules, epsilon,
                       initial_system, interreduce, is_complete, lhs_sets, parse_path, parse_term, reduce, reduce_once,
                       reductions, rewrites, shortlex_compare, tau, term_from_word)


def T(element, *word):
    return Term(element, tuple(word))


def test_initial_system(initial):
    assert len(initial.t_rules) == 5
    assert TRule(T('x1', 'b1'), T('y1')) in initial.t_rules
    assert TRule(T('y1', 'b2', 'b3'), T('x1')) in initial.t_rules
    assert initial.p_rules == (PRule(Path('B1', ('b1', 'b2', 'b3')), Path('B1', ('b4',))),)


def test_initial_system_empty(empty_presentation):
    assert len(initial_system(empty_presentation)) == 0


def test_relation_is_oriented(example_text):
    p = parse_presentation(example_text.replace('b1 b2 b3 = b4', 'b4 = b1 b2 b3'))

    assert initial_system(p).p_rules == (PRule(Path('B1', ('b1', 'b2', 'b3')), Path('B1', ('b4',))),)


def test_shortlex_compare(example):
    order = example.alphabet_order

    assert shortlex_compare(T('y1', 'b2', 'b3'), T('x1'), order) == GT
    assert shortlex_compare(T('x1', 'b4'), T('x2', 'b4'), order) == LT
    assert shortlex_compare(Path('B1', ('b4',)), Path('B1', ('b4',)), order) == EQ


def test_reduce_once(completed):
    assert reduce_once(completed, T('x1', 'b1', 'b2')) == T('y1', 'b2')
    assert reduce_once(completed, T('x1', 'b5', 'b3')) is None
    assert reduce_once(completed, T('y1', 'b2', 'b3', 'b4')) == T('x1', 'b4')


def test_reduce_once_prefers_leftmost_path_rule(completed):
    t = T('x1', 'b5', 'b3', 'b1', 'b2', 'b3', 'b1', 'b2', 'b3')

    assert reduce_once(completed, t) == T('x1', 'b5', 'b3', 'b4', 'b1', 'b2', 'b3')


def test_reduce(completed):
    assert reduce(completed, T('y1', 'b2', 'b3', 'b4')) == T('x1')
    assert reduce(completed, T('x3', 'b4')) == T('x1')
    assert reduce(completed, T('x1', 'b5', 'b3')) == T('x1', 'b5', 'b3')


def test_reduce_step_budget(completed):
    with pytest.raises(StepBudgetExceeded):
        reduce(completed, T('y1', 'b2', 'b3', 'b4'), max_steps=1)

    assert reduce(completed, T('y1', 'b2', 'b3', 'b4'), max_steps=2) == T('x1')


def test_tau(example):
    assert tau(example, T('x1', 'b5', 'b3')) == 'B1'
    assert tau(example, T('y1')) == 'B2'
    assert tau(example, T('x1', 'b5')) == 'B3'


def test_act(example, completed):
    assert act(completed, T('x1'), Path('B1', ('b4',))) == T('x1')
    assert act(completed, T('x1', 'b5'), Path('B3', ('b3',))) == T('x1', 'b5', 'b3')
    assert act(completed, T('y1'), Path('B2', ('b2', 'b3'))) == T('x1')

    with pytest.raises(TermError, match='non-composable'):
        act(completed, T('y1'), Path('B1', ('b4',)))


def test_epsilon(completed):
    assert epsilon(completed, 'x1') == T('x1')
    assert epsilon(completed, 'y2') == T('y2')

    with pytest.raises(TermError, match='unknown element'):
        epsilon(completed, 'z')


def test_epsilon_with_identity_image():
    p = parse_presentation("""\
objects A : A1
arrows A : a : A1 -> A1
objects B : B1
X A1 : p q
X a : p -> q ; q -> q
F A1 : B1
F a : id
order : p q
""")
    r = complete(initial_system(p))

    assert r.t_rules == (TRule(T('q'), T('p')),)
    assert epsilon(r, 'q') == T('p')
    assert epsilon(r, 'p') == T('p')


def test_critical_pairs(initial):
    pairs = {(pair.overlap, frozenset([pair.left, pair.right])) for pair in critical_pairs(initial)}

    assert (T('x1', 'b1', 'b2', 'b3'), frozenset([T('x1'), T('x1', 'b4')])) in pairs
    assert (T('x3', 'b1', 'b2', 'b3'), frozenset([T('x1'), T('x3', 'b4')])) in pairs


def test_critical_pairs_without_overlaps():
    p = parse_presentation("""\
objects B : B1 B2
arrows B : c : B1 -> B2 ; e : B1 -> B2
relations B : c = e
order : c e
""")

    assert critical_pairs(initial_system(p)) == []


def test_complete(initial, completed, golden_rules):
    assert dump_rules(completed) == golden_rules
    assert is_complete(completed)
    assert not is_complete(initial)


def test_completion_statistics(initial):
    result = completion(initial)

    assert result.rounds >= 1
    assert result.added >= 3
    assert len(result.system) == 9


def test_complete_fixed_point(completed, empty_presentation):
    assert complete(completed) == completed

    empty = initial_system(empty_presentation)
    assert len(complete(empty)) == 0
    assert is_complete(empty)


def test_complete_round_budget(initial):
    with pytest.raises(CompletionFailure) as e:
        completion(initial, max_rounds=0)

    assert e.value.rounds == 0
    assert e.value.exit_code == 2
    assert len(e.value.system) == len(initial)


def test_interreduce(completed):
    redundant = completed.with_rule(TRule(T('x1', 'b4', 'b4'), T('x1', 'b4')))

    assert interreduce(redundant) == completed


def test_finite_orbit(finite_file):
    p = load_presentation(finite_file)
    r = complete(initial_system(p))

    assert dump_rules(r) == 'c e -> id\ne c -> id\n'
    assert reduce(r, T('u', 'c', 'e', 'c')) == T('u', 'c')


def test_lhs_sets(completed, empty_presentation):
    prefixes = lhs_sets(completed)

    assert prefixes.terms.ppl == {T('y1', 'b2'), T('y2', 'b2')}
    assert prefixes.paths.ppl == {Path('B1', ('b1',)), Path('B1', ('b1', 'b2'))}
    assert prefixes.paths.l == {Path('B1', ('b1', 'b2', 'b3'))}
    assert prefixes.terms.ppl <= prefixes.terms.pl
    assert prefixes.terms.l <= prefixes.terms.pl

    empty = lhs_sets(initial_system(empty_presentation))
    assert not (empty.terms.l or empty.terms.pl or empty.terms.ppl or empty.paths.l or empty.paths.pl)


def test_parse_term(example):
    assert parse_term(example, 'x1 | b5 b3') == T('x1', 'b5', 'b3')
    assert parse_term(example, 'x1 | id') == T('x1')
    assert parse_term(example, 'y1|id_B2') == T('y1')

    with pytest.raises(TermError, match='not in T'):
        parse_term(example, 'x1 | b2')
    with pytest.raises(TermError, match='malformed'):
        parse_term(example, 'x1 b1')
    for text in ('x1', 'x1 |', '| b1', ''):
        with pytest.raises(TermError, match='malformed'):
            parse_term(example, text)
    with pytest.raises(TermError, match='unknown element'):
        parse_term(example, 'z | id')


def test_parse_path(example):
    assert parse_path(example, 'b2 b3', 'B2') == Path('B2', ('b2', 'b3'))
    assert parse_path(example, 'id', 'B3') == Path('B3')

    with pytest.raises(TermError, match='non-composable'):
        parse_path(example, 'b1 b1')


def test_term_from_word(example):
    assert term_from_word(example, ('x1', 'b5', 'b3')) == T('x1', 'b5', 'b3')
    assert term_from_word(example, ('x1', 'b2')) is None
    assert term_from_word(example, ('b1',)) is None
    assert term_from_word(example, ()) is None


def test_reduction_decreases(completed, terms_up_to, example):
    for t in terms_up_to(example, 6):
        previous = t
        for current in reductions(completed, t):
            assert completed.key(current) < completed.key(previous)
            assert current in rewrites(completed, previous)
            assert tau(example, current) == tau(example, previous)
            previous = current


def test_confluence(completed, terms_up_to, example):
    rng = random.Random(1234)

    for t in terms_up_to(example, 8):
        expected = reduce(completed, t)
        current = t
        while True:
            successors = rewrites(completed, current)
            if not successors:
                break
            current = rng.choice(successors)
        assert current == expected


def test_act_associative(completed, terms_up_to, example):
    for t in terms_up_to(example, 6):
        end = tau(example, t)
        for b in example.delta.arrows:
            if b.src != end:
                continue
            for c in example.delta.arrows:
                if c.src != b.tgt:
                    continue
                stepwise = act(completed, act(completed, t, Path(b.src, (b.name,))), Path(c.src, (c.name,)))
                assert stepwise == act(completed, t, Path(b.src, (b.name, c.name)))
