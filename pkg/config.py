# coding=utf-8
import logging

LOG_FILE = 'kan.log'
LOG_LEVEL = logging.DEBUG

# Reductions allowed in one reduce() call before the system is declared pathological
MAX_REWRITE_STEPS = 10 ** 6

# Rounds of critical pair resolution before completion gives up
MAX_COMPLETION_ROUNDS = 1000

DEFAULT_MEMBERS_MAX_LEN = 4
DEFAULT_TABLES_MAX_LEN = 3

# Worker threads for the per-object pipelines
DEFAULT_JOBS = 1
