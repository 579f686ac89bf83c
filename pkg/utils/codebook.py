#!/usr/bin/env python3
"""
Codebooks over R = F_q + uF_q built from the ring's characters.

Every codeword is indexed by (j, a, b, c) and has the entry

    psi_j(t0) chi_a(t1) chi_b(t0) chi_c(t0 t1)      (scaled by 1/sqrt(K))

at the unit t = t0(1 + u t1). C1 fixes j, C2 fixes b, C0 lets all four range.
Entries are stored as exponents of the n-th roots of unity, n = p(q-1).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from utils.finite_field import FieldElement, FieldSpec, SizeGuardError, div, mul, neg
from utils.characters import (
    AdditiveCharIndex,
    MultCharIndex,
    additive_char,
    mult_char,
    root_order,
    root_table,
)
from utils.local_ring import gauss_sum_ring_closed

CONSTRUCTIONS = ("C1", "C2", "C0")
DEFAULT_MAX_ENTRIES = 20_000_000
PAIR_CHUNK = 16384


class CodebookError(ValueError):
    pass


@dataclass(frozen=True)
class Codebook:
    construction: str
    spec: FieldSpec
    fixed_param: Optional[int]
    params: np.ndarray = field(repr=False, compare=False)       # N x 4 of (j, a, b, c)
    entries: np.ndarray = field(repr=False, compare=False)      # N x K exponents mod n_root
    coord_order: np.ndarray = field(repr=False, compare=False)  # K x 2 of (t0, t1)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def N(self) -> int:
        return int(self.entries.shape[0])

    @property
    def K(self) -> int:
        return int(self.entries.shape[1])

    @property
    def n_root(self) -> int:
        return root_order(self.spec)

    @property
    def degenerate(self) -> bool:
        return self.q == 2

    def vectors(self) -> np.ndarray:
        """Complex N x K matrix with unit-norm rows."""
        return root_table(self.n_root)[self.entries] / np.sqrt(self.K)


def coordinate_order(spec: FieldSpec) -> np.ndarray:
    """(t0, t1) pairs, t0 over F_q^* then t1 over F_q; column = idx(t0) * q + idx(t1)."""
    q = spec.q
    t0 = np.repeat(np.arange(1, q), q)
    t1 = np.tile(np.arange(q), q - 1)
    return np.stack([t0, t1], axis=1)


def construction_params(spec: FieldSpec, construction: str, fixed_param: Optional[int]) -> np.ndarray:
    """Row index tuples (j, a, b, c) in lexicographic encoding order."""
    q = spec.q
    if construction == "C1":
        j = fixed_param % (q - 1)
        abc = np.indices((q, q, q)).reshape(3, -1).T
        return np.column_stack([np.full(len(abc), j), abc])
    if construction == "C2":
        if not 0 <= fixed_param < q:
            raise CodebookError(f"fixed b={fixed_param} is not an element of GF({q})")
        jac = np.indices((q - 1, q, q)).reshape(3, -1).T
        return np.column_stack([jac[:, 0], jac[:, 1], np.full(len(jac), fixed_param), jac[:, 2]])
    if construction == "C0":
        return np.indices((q - 1, q, q, q)).reshape(4, -1).T
    raise CodebookError(f"unknown construction {construction!r}")


def row_exponents(spec: FieldSpec, params: np.ndarray, coords: np.ndarray) -> np.ndarray:
    q = spec.q
    n = root_order(spec)
    t0, t1 = coords[:, 0], coords[:, 1]
    t0t1 = spec.mul_table[t0, t1]
    # chi_x(y) exponent for every pair of encodings
    chi = (spec.trace_table[spec.mul_table] * (q - 1)) % n
    psi = (np.arange(q - 1)[:, None] * spec.log_array[t0][None, :] * spec.p) % n
    j, a, b, c = (params[:, i][:, None] for i in range(4))
    return (psi[j[:, 0]] + chi[a, t1] + chi[b, t0] + chi[c, t0t1]) % n


def _build(spec: FieldSpec, construction: str, fixed_param: Optional[int],
           force: bool, max_entries: int) -> Codebook:
    q = spec.q
    sizes = {"C1": q ** 3, "C2": q * q * (q - 1), "C0": (q - 1) * q ** 3}
    n_rows, k = sizes[construction], q * (q - 1)
    if n_rows * k > max_entries and not force:
        raise SizeGuardError(
            f"{construction} over GF({q}) has {n_rows} x {k} entries, above the guard of {max_entries}"
        )
    coords = coordinate_order(spec)
    params = construction_params(spec, construction, fixed_param)
    entries = row_exponents(spec, params, coords)
    if q == 2:
        logging.warning(f"{construction} over GF(2) is degenerate: I_max = 1 and rows repeat")
    logging.debug(f"Built {construction} over GF({q}): N={len(params)}, K={k}")
    return Codebook(construction, spec, fixed_param, params, entries, coords)


def build_c1(spec: FieldSpec, j: MultCharIndex, force: bool = False,
             max_entries: int = DEFAULT_MAX_ENTRIES) -> Codebook:
    return _build(spec, "C1", j.j % (spec.q - 1), force, max_entries)


def build_c2(spec: FieldSpec, b: FieldElement, force: bool = False,
             max_entries: int = DEFAULT_MAX_ENTRIES) -> Codebook:
    return _build(spec, "C2", b.encoding, force, max_entries)


def build_c0(spec: FieldSpec, force: bool = False,
             max_entries: int = DEFAULT_MAX_ENTRIES) -> Codebook:
    return _build(spec, "C0", None, force, max_entries)


def build_codebook(spec: FieldSpec, construction: str, fixed_j: int = 1, fixed_b: int = 0,
                   force: bool = False, max_entries: int = DEFAULT_MAX_ENTRIES) -> Codebook:
    construction = construction.upper()
    if construction == "C1":
        return build_c1(spec, MultCharIndex(fixed_j), force, max_entries)
    if construction == "C2":
        if not 0 <= fixed_b < spec.q:
            raise CodebookError(f"fixed b={fixed_b} is not an element of GF({spec.q})")
        return build_c2(spec, spec.element(fixed_b), force, max_entries)
    if construction == "C0":
        return build_c0(spec, force, max_entries)
    raise CodebookError(f"unknown construction {construction!r}")


# ==============================================================================
# Inner products
# ==============================================================================

def inner_product(cb: Codebook, i: int, k: int) -> complex:
    """(1/K) sum of entry_i * conj(entry_k), from exact exponent differences."""
    for idx in (i, k):
        if not 0 <= idx < cb.N:
            raise CodebookError(f"row {idx} out of range [0, {cb.N})")
    diff = (cb.entries[i] - cb.entries[k]) % cb.n_root
    return complex(root_table(cb.n_root)[diff].sum() / cb.K)


def pair_inner_products(cb: Codebook, rows_i: np.ndarray, rows_k: np.ndarray) -> np.ndarray:
    roots = root_table(cb.n_root)
    out = np.empty(len(rows_i), dtype=complex)
    for s in range(0, len(rows_i), PAIR_CHUNK):
        e = s + PAIR_CHUNK
        diff = (cb.entries[rows_i[s:e]] - cb.entries[rows_k[s:e]]) % cb.n_root
        out[s:e] = roots[diff].sum(axis=1) / cb.K
    return out


def row_difference(cb: Codebook, i: int, k: int) -> Tuple[int, int, int, int]:
    """(j_i - j_k mod q-1, a_i - a_k, b_i - b_k, c_i - c_k) as encodings."""
    spec = cb.spec
    pi, pk = cb.params[i], cb.params[k]
    dj = int((pi[0] - pk[0]) % (spec.q - 1))
    da, db, dc = (int(spec.add_table[pi[t], spec.neg_table[pk[t]]]) for t in (1, 2, 3))
    return dj, da, db, dc


def predicted_inner_product_c1(spec: FieldSpec, a: FieldElement, b: FieldElement,
                               c: FieldElement) -> complex:
    q = spec.q
    K = q * (q - 1)
    if a.is_zero() and b.is_zero() and c.is_zero():
        raise CodebookError("row difference (0, 0, 0) does not come from two distinct rows")
    if a.is_zero() and c.is_zero():
        return complex(-q / K)
    if not a.is_zero() and not c.is_zero():
        arg = neg(spec, div(spec, mul(spec, a, b), c))
        return q / K * additive_char(spec, AdditiveCharIndex(spec.one), arg).to_complex()
    return 0j


def predicted_inner_product_c2(spec: FieldSpec, j: MultCharIndex, a: FieldElement,
                               c: FieldElement) -> complex:
    q = spec.q
    K = q * (q - 1)
    if j.j % (q - 1) == 0 and a.is_zero() and c.is_zero():
        raise CodebookError("row difference (0, 0, 0) does not come from two distinct rows")
    if not a.is_zero() and not c.is_zero():
        return q / K * mult_char(spec, j, neg(spec, div(spec, a, c))).to_complex()
    return 0j


def predicted_inner_product_c0(spec: FieldSpec, j: MultCharIndex, a: FieldElement,
                               b: FieldElement, c: FieldElement) -> complex:
    """Inner product of rows whose indices differ by (j, a, b, c): G_R / K."""
    if j.j % (spec.q - 1) == 0 and a.is_zero() and b.is_zero() and c.is_zero():
        raise CodebookError("row difference (0, 0, 0, 0) does not come from two distinct rows")
    return gauss_sum_ring_closed(spec, j, a, b, c) / (spec.q * (spec.q - 1))


def predicted_inner_product(cb: Codebook, i: int, k: int) -> complex:
    if i == k:
        return 1 + 0j
    spec = cb.spec
    dj, da, db, dc = row_difference(cb, i, k)
    a, b, c = spec.element(da), spec.element(db), spec.element(dc)
    if cb.construction == "C1":
        return predicted_inner_product_c1(spec, a, b, c)
    if cb.construction == "C2":
        return predicted_inner_product_c2(spec, MultCharIndex(dj), a, c)
    return predicted_inner_product_c0(spec, MultCharIndex(dj), a, b, c)


def predicted_table(cb: Codebook) -> np.ndarray:
    """Closed-form inner product for every index difference (j, a, b, c)."""
    spec = cb.spec
    q = spec.q
    table = np.full((q - 1, q, q, q), np.nan, dtype=complex)
    table[0, 0, 0, 0] = 1.0
    js = [0] if cb.construction == "C1" else range(q - 1)
    bs = [0] if cb.construction == "C2" else range(q)
    for dj in js:
        for da in range(q):
            for db in bs:
                for dc in range(q):
                    if dj == 0 and da == 0 and db == 0 and dc == 0:
                        continue
                    a, b, c = spec.element(da), spec.element(db), spec.element(dc)
                    if cb.construction == "C1":
                        value = predicted_inner_product_c1(spec, a, b, c)
                    elif cb.construction == "C2":
                        value = predicted_inner_product_c2(spec, MultCharIndex(dj), a, c)
                    else:
                        value = predicted_inner_product_c0(spec, MultCharIndex(dj), a, b, c)
                    table[dj, da, db, dc] = value
    return table


def sample_pairs(n_rows: int, count: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Seeded distinct row pairs; independent of how they are later partitioned."""
    if n_rows < 2:
        raise CodebookError("need at least two rows to sample pairs")
    if count < 1:
        raise CodebookError(f"sample count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    rows_i = rng.integers(0, n_rows, size=count)
    rows_k = rng.integers(0, n_rows - 1, size=count)
    rows_k = rows_k + (rows_k >= rows_i)
    return rows_i, rows_k


def all_pairs(n_rows: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n_rows, k=1)


@dataclass
class PredictionCheck:
    pairs: int
    max_deviation: float
    mismatches: int


def verify_predicted(cb: Codebook, mode: str = "exhaustive", samples: int = 100_000,
                     seed: int = 0, tolerance: float = 1e-9) -> PredictionCheck:
    """Compare brute-force inner products with the closed form over row pairs."""
    if mode == "exhaustive":
        rows_i, rows_k = all_pairs(cb.N)
    elif mode == "sampled":
        rows_i, rows_k = sample_pairs(cb.N, samples, seed)
    else:
        raise CodebookError(f"unknown mode {mode!r}")

    spec = cb.spec
    table = predicted_table(cb)
    worst = 0.0
    mismatches = 0
    for s in range(0, len(rows_i), PAIR_CHUNK):
        ri, rk = rows_i[s:s + PAIR_CHUNK], rows_k[s:s + PAIR_CHUNK]
        pi, pk = cb.params[ri], cb.params[rk]
        dj = (pi[:, 0] - pk[:, 0]) % (spec.q - 1)
        da, db, dc = (spec.add_table[pi[:, t], spec.neg_table[pk[:, t]]] for t in (1, 2, 3))
        predicted = table[dj, da, db, dc]
        deviation = np.abs(pair_inner_products(cb, ri, rk) - predicted)
        if deviation.size:
            worst = max(worst, float(deviation.max()))
            mismatches += int(np.count_nonzero(deviation > tolerance))
    logging.debug(f"{cb.construction} over GF({cb.q}): {len(rows_i)} pairs, max deviation {worst:.3e}")
    return PredictionCheck(pairs=int(len(rows_i)), max_deviation=worst, mismatches=mismatches)
