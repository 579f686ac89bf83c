import os

BASE_DIR = os.path.dirname(os.path.dirname(__file__))
OUTPUT_DIR = os.path.join(BASE_DIR, "results")

# largest q a field may be built for; RING_CODEBOOK_GUARD overrides
SIZE_GUARD = 512
# N * K above this needs --force
MAX_CODEBOOK_ENTRIES = 20_000_000
# exhaustive evaluation up to this many codewords, sampled mode beyond
EXHAUSTIVE_MAX_N = 5000

TOLERANCE = 1e-9

DEFAULT_FIXED_J = 1
DEFAULT_FIXED_B = 0

DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 0

EVAL_WORKERS = max(1, int((os.cpu_count() or 1) * 0.5))
EVAL_BLOCK_ROWS = 256

TABLE_Q_LIST = [3, 4, 5, 7, 8, 9, 16, 64, 256]
TABLE_BRUTE_FORCE_Q_MAX = 9

SELFTEST_Q_MAX = 9

SHOW_PROGRESS = True
