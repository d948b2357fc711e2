from kan_helpers import (AutomatonError, CompletionFailure, InvariantViolation, KanError, PresentationSyntaxError,
                         RegexSyntaxError, StepBudgetExceeded, timing, words_text)


def test_timing(mocker):
    mock_debug = mocker.patch('kan_helpers.logger.debug')

    @timing
    def add(a, b):
        return a + b

    assert add(1, b=2) == 3
    assert add.__name__ == 'add'
    mock_debug.assert_called_once()
    assert "func:'add' took:" in mock_debug.call_args[0][0]


def test_words_text():
    assert words_text(('b1', 'b2')) == 'b1 b2'
    assert words_text(()) == 'id'


def test_exit_codes():
    assert KanError.exit_code == 1
    assert AutomatonError.exit_code == 1
    assert StepBudgetExceeded.exit_code == 2
    assert CompletionFailure.exit_code == 2
    assert InvariantViolation.exit_code == 3


def test_error_positions():
    e = PresentationSyntaxError(3, 7, 'unexpected token')
    assert str(e) == 'line 3, column 7: unexpected token'
    assert (e.line, e.column) == (3, 7)

    e = RegexSyntaxError(4, 'unknown symbol')
    assert str(e) == 'position 4: unknown symbol'
    assert isinstance(e, KanError)


def test_completion_failure(initial):
    e = CompletionFailure(initial, 5)

    assert e.system is initial
    assert e.rounds == 5
    assert '5 rounds' in str(e)
