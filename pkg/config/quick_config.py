import os

BASE_DIR = os.path.dirname(os.path.dirname(__file__))
OUTPUT_DIR = os.path.join(BASE_DIR, "results", "quick")

SIZE_GUARD = 64
EXHAUSTIVE_MAX_N = 1000

DEFAULT_SAMPLES = 10_000

EVAL_WORKERS = 1

TABLE_Q_LIST = [3, 4, 5, 7, 16, 64]
TABLE_BRUTE_FORCE_Q_MAX = 5

SELFTEST_Q_MAX = 5

SHOW_PROGRESS = False
