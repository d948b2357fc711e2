import pytest

from kan_helpers import AutomatonError
from pipeline import func_name, run_pipeline
from pipeline.kan_pipeline import KanPipeline


def test_run_pipeline(mocker):
    first = mocker.Mock(return_value={'b': 2})
    second = mocker.Mock(return_value=None)
    third = mocker.Mock(return_value={'a': 3})

    data = run_pipeline([first, second, third], a=1)

    assert data == {'a': 3, 'b': 2}
    first.assert_called_once_with(a=1)
    second.assert_called_once_with(a=1, b=2)
    third.assert_called_once_with(a=1, b=2)


def test_func_name(mocker):
    assert func_name(run_pipeline) == 'run_pipeline'
    assert func_name(mocker.Mock(name='pipe')) == 'pipe'


def test_presentation_stage(example_file, golden_rules):
    pipeline = KanPipeline(filename=example_file)

    assert len(pipeline.presentation.delta.objects) == 3
    assert len(pipeline.system) == 9
    assert pipeline.completion.system == pipeline.system
    assert pipeline.run() is pipeline.run()


def test_presentation_from_text(example_text):
    assert len(KanPipeline(text=example_text).system) == 9


def test_run_object(example_file):
    pipeline = KanPipeline(filename=example_file)
    result = pipeline.run_object('B2')

    assert result['obj'] == 'B2'
    assert set(result) >= {'nfa', 'dfa', 'kb', 'minimal', 'equations', 'regex', 'regex_text', 'count'}
    assert not result['count'].is_finite
    assert pipeline.run_object('B2') is result


def test_run_object_unknown(example_file):
    with pytest.raises(AutomatonError, match='unknown object'):
        KanPipeline(filename=example_file).run_object('B9')


def test_run_objects_order(example_file):
    sequential = KanPipeline(filename=example_file).run_objects()
    threaded = KanPipeline(filename=example_file, jobs=3).run_objects(['B3', 'B1', 'B2'])

    assert [r['obj'] for r in sequential] == ['B1', 'B2', 'B3']
    assert [r['obj'] for r in threaded] == ['B3', 'B1', 'B2']
    assert {r['obj']: r['regex_text'] for r in sequential} == {r['obj']: r['regex_text'] for r in threaded}
