# coding=utf-8
import logging
import time
from functools import wraps

import config

logger = logging.getLogger('kan')
handler = logging.FileHandler(config.LOG_FILE)
formatter = logging.Formatter('%(asctime)s %(levelname)s %(funcName)s: %(message)s')
handler.setFormatter(formatter)
logger.addHandler(handler)
logger.setLevel(config.LOG_LEVEL)


class KanError(Exception):
    exit_code = 1


class PresentationSyntaxError(KanError):
    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__('line %d, column %d: %s' % (line, column, message))
        self.line = line
        self.column = column


class PresentationError(KanError):
    pass


class TermError(KanError):
    pass


class RegexSyntaxError(KanError):
    def __init__(self, position: int, message: str) -> None:
        super().__init__('position %d: %s' % (position, message))
        self.position = position


class UnorientableRuleError(KanError):
    pass


class IncompleteSystemError(KanError):
    pass


class AutomatonError(KanError):
    pass


class StepBudgetExceeded(KanError):
    exit_code = 2


class CompletionFailure(KanError):
    exit_code = 2

    def __init__(self, system, rounds: int) -> None:
        super().__init__('completion did not finish within %d rounds' % rounds)
        self.system = system
        self.rounds = rounds


class InvariantViolation(KanError):
    exit_code = 3


def timing(f):
    @wraps(f)
    def timing_wrap(*args, **kw):
        ts = time.time()
        result = f(*args, **kw)
        te = time.time()
        logger.debug('func:%r took: %2.4f sec' % (f.__name__, te - ts))
        return result
    return timing_wrap


def words_text(words) -> str:
    return ' '.join(words) if words else 'id'
