import pytest

from kan_helpers import CompletionFailure
from pipeline.pipes.build_automata import build_nfa, complement_dfa, determinize_nfa, minimize_kb
from pipeline.pipes.general import complete_system, load_presentation
from pipeline.pipes.get_regex import get_count, get_equations, get_regex


def test_load_presentation(example_file, example_text, example):
    assert load_presentation(filename=example_file)['presentation'] == example
    assert load_presentation(text=example_text, filename='ignored.kan')['presentation'] == example


def test_complete_system(example, golden_rules):
    result = complete_system(presentation=example, max_rounds=None, unused='value')

    assert len(result['initial']) == 6
    assert len(result['system']) == 9
    assert result['completion'].system == result['system']


def test_complete_system_round_budget(example):
    with pytest.raises(CompletionFailure):
        complete_system(presentation=example, max_rounds=0)


def test_object_pipes(example, completed):
    data = {'presentation': example, 'system': completed, 'obj': 'B2'}
    for pipe in (build_nfa, determinize_nfa, complement_dfa, minimize_kb, get_equations, get_regex, get_count):
        data.update(pipe(**data))

    assert data['dfa'].is_complete
    assert data['kb'].accepting == data['dfa'].states - data['dfa'].accepting
    assert len(data['minimal'].states) <= len(data['dfa'].states)
    assert '(y1 + y2) | id' in data['regex_text']
    assert str(data['count']) == 'Infinite'
