# coding=utf-8
from kan_helpers import logger


def func_name(func):
    if hasattr(func, '__name__'):
        return func.__name__
    else:
        return func._mock_name


def run_pipeline(pipes: list, **data) -> dict:
    """Calls each pipe with everything produced so far; a pipe returns a dict of new data or None."""
    for pipe in pipes:
        logger.info('Calling %s', func_name(pipe))
        result = pipe(**data)
        logger.info('Call result %s: %s', func_name(pipe), sorted(result) if result else result)

        if result:
            data.update(result)

    return data
