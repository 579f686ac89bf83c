#!/usr/bin/env python3
"""
Welch-bound evaluation of codebooks.

evaluate() brute-forces |<c_i, c_k>| over all (or a seeded sample of) distinct
row pairs, in fixed-size blocks that may run on worker threads. Block layout
does not depend on the worker count and the reductions (max, bucket counts,
violation counts) are order-independent, so reports are identical for any
number of workers.
"""
import math
import time
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import tqdm

from utils.codebook import Codebook, CodebookError, pair_inner_products, sample_pairs

BUCKET = 1e-9
DEFAULT_EXHAUSTIVE_MAX_N = 5000
DEFAULT_BLOCK_ROWS = 256


def welch_bound(N: int, K: int) -> float:
    """I_w = sqrt((N - K) / ((N - 1) K))."""
    if K < 1 or N < 2:
        raise CodebookError(f"Welch bound needs N >= 2 and K >= 1, got N={N}, K={K}")
    if N < K:
        raise CodebookError(f"Welch bound needs N >= K, got N={N} < K={K}")
    return math.sqrt((N - K) / ((N - 1) * K))


def _check_q(q: int):
    if q < 2:
        raise CodebookError(f"q must be at least 2, got {q}")


def welch_bound_c1(q: int) -> float:
    _check_q(q)
    return math.sqrt((q * q - q + 1) / (q ** 4 - q ** 3 - q + 1))


def welch_bound_c2(q: int) -> float:
    _check_q(q)
    return math.sqrt((q - 1) / (q ** 3 - q * q - 1))


def ratio_formula_c1(q: int) -> float:
    _check_q(q)
    return math.sqrt((q ** 4 - q ** 3 - q + 1) / ((q * q - q + 1) * (q - 1) ** 2))


def ratio_formula_c2(q: int) -> float:
    _check_q(q)
    return math.sqrt((q ** 3 - q * q - 1) / ((q - 1) * (q - 1) ** 2))


RATIO_FORMULAS = {"C1": ratio_formula_c1, "C2": ratio_formula_c2}


def codebook_size(construction: str, q: int) -> Tuple[int, int]:
    sizes = {"C1": q ** 3, "C2": q * q * (q - 1), "C0": (q - 1) * q ** 3}
    if construction not in sizes:
        raise CodebookError(f"unknown construction {construction!r}")
    return sizes[construction], q * (q - 1)


def allowed_amplitudes(construction: str, q: int) -> List[float]:
    """Off-diagonal amplitudes the closed forms allow for distinct rows."""
    values = [0.0, 1.0 / (q - 1)]
    if construction == "C0" and q > 2:
        values.append(math.sqrt(q) / (q - 1))
    return values


@dataclass
class EvalReport:
    construction: str
    q: int
    N: int
    K: int
    i_max: float
    i_w: float
    ratio: float
    spectrum: List[Tuple[float, int]]
    allowed: List[float]
    violations: int
    pairs: int
    mode: str
    degenerate: bool
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["spectrum"] = [[a, c] for a, c in self.spectrum]
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "EvalReport":
        data = dict(data)
        data["spectrum"] = [(float(a), int(c)) for a, c in data["spectrum"]]
        return cls(**data)

    def csv_row(self) -> List:
        return [self.q, self.N, self.K, self.i_max, self.i_w, self.ratio]


CSV_HEADER = ["q", "N", "K", "i_max", "i_w", "ratio"]


@dataclass
class _BlockResult:
    max_amp: float
    buckets: Counter
    violations: int
    pairs: int


def _summarize(amps: np.ndarray, allowed: np.ndarray, tolerance: float) -> _BlockResult:
    if amps.size == 0:
        return _BlockResult(0.0, Counter(), 0, 0)
    keys, counts = np.unique(np.rint(amps / BUCKET).astype(np.int64), return_counts=True)
    distance = np.min(np.abs(amps[:, None] - allowed[None, :]), axis=1)
    return _BlockResult(
        max_amp=float(amps.max()),
        buckets=Counter(dict(zip(keys.tolist(), counts.tolist()))),
        violations=int(np.count_nonzero(distance > tolerance)),
        pairs=int(amps.size),
    )


def evaluate(
    cb: Codebook,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
    block_rows: int = DEFAULT_BLOCK_ROWS,
    exhaustive_max_n: int = DEFAULT_EXHAUSTIVE_MAX_N,
    allow_large: bool = False,
    tolerance: float = 1e-9,
    progress: bool = False,
) -> EvalReport:
    if cb.N == 0:
        raise CodebookError("empty codebook")
    if cb.N < 2:
        raise CodebookError(f"need at least two codewords, got N={cb.N}")
    if mode == "exhaustive" and cb.N > exhaustive_max_n and not allow_large:
        raise CodebookError(
            f"exhaustive evaluation of N={cb.N} exceeds {exhaustive_max_n}; use sampled mode or force it"
        )
    if mode not in ("exhaustive", "sampled"):
        raise CodebookError(f"unknown mode {mode!r}")
    if mode == "sampled" and samples < 1:
        raise CodebookError(f"sampled mode needs a positive sample count, got {samples}")

    start = time.time()
    allowed = np.array(allowed_amplitudes(cb.construction, cb.q))
    workers = max(1, int(workers))

    if mode == "exhaustive":
        vectors = cb.vectors()
        conj = vectors.conj().T

        def run(start_row: int) -> _BlockResult:
            stop = min(start_row + block_rows, cb.N)
            gram = vectors[start_row:stop] @ conj
            rows = np.arange(start_row, stop)
            upper = np.arange(cb.N)[None, :] > rows[:, None]
            return _summarize(np.abs(gram[upper]), allowed, tolerance)

        tasks = list(range(0, cb.N, block_rows))
    else:
        rows_i, rows_k = sample_pairs(cb.N, samples, seed)
        chunk = block_rows * 64

        def run(start_pair: int) -> _BlockResult:
            sl = slice(start_pair, start_pair + chunk)
            amps = np.abs(pair_inner_products(cb, rows_i[sl], rows_k[sl]))
            return _summarize(amps, allowed, tolerance)

        tasks = list(range(0, samples, chunk))

    logging.info(
        f"Evaluating {cb.construction} over GF({cb.q}) (N={cb.N}, K={cb.K}), "
        f"mode={mode}, {len(tasks)} block(s), {workers} worker(s)"
    )

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(tqdm.tqdm(
            executor.map(run, tasks), total=len(tasks),
            desc=f"{cb.construction} q={cb.q}", unit="block", disable=not progress,
        ))

    buckets: Counter = Counter()
    for r in results:
        buckets.update(r.buckets)
    i_max = max(r.max_amp for r in results)
    i_w = welch_bound(cb.N, cb.K) if cb.N >= cb.K else 0.0

    report = EvalReport(
        construction=cb.construction,
        q=cb.q,
        N=cb.N,
        K=cb.K,
        i_max=i_max,
        i_w=i_w,
        ratio=i_max / i_w if i_w > 0 else math.inf,
        spectrum=[(key * BUCKET, count) for key, count in sorted(buckets.items())],
        allowed=allowed.tolist(),
        violations=sum(r.violations for r in results),
        pairs=sum(r.pairs for r in results),
        mode=mode,
        degenerate=cb.degenerate,
        elapsed=time.time() - start,
    )
    logging.debug(f"Evaluation finished in {report.elapsed:.2f} seconds")
    return report


def ratio_error(report: EvalReport) -> Optional[float]:
    """|measured ratio - closed-form ratio|, None for constructions without one."""
    formula = RATIO_FORMULAS.get(report.construction)
    if formula is None:
        return None
    return abs(report.ratio - formula(report.q))
