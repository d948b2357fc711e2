# coding=utf-8
from typing import Optional

import presentation as presentation_module
from kan_helpers import logger
from rewriting import completion, initial_system


def load_presentation(filename: Optional[str] = None, text: Optional[str] = None, **kwargs):
    if text is None:
        p = presentation_module.load_presentation(filename)
    else:
        p = presentation_module.parse_presentation(text)
    return {'presentation': p}


def complete_system(presentation, max_rounds: Optional[int] = None, **kwargs):
    initial = initial_system(presentation)
    result = completion(initial, max_rounds)
    logger.info('Completed system has %d rules after %d rounds', len(result.system), result.rounds)
    return {'initial': initial, 'system': result.system, 'completion': result}
