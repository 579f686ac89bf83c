import time
import logging
import itertools
from typing import Callable, List, Optional, Tuple

import numpy as np

from utils.finite_field import (
    FieldError,
    FieldSpec,
    add,
    build_field,
    discrete_log,
    factor_prime_power,
    inv,
    mul,
    power,
    trace,
)
from utils.characters import (
    AdditiveCharIndex,
    MultCharIndex,
    additive_char,
    gauss_sum_fq,
    mult_char,
)
from utils.local_ring import (
    RingAdditiveCharIndex,
    RingMultCharIndex,
    enumerate_ring,
    enumerate_units,
    max_gauss_discrepancy,
    recompose,
    ring_add,
    ring_additive_char,
    ring_additive_char_unit_form,
    ring_mul,
    ring_mult_char,
    unit_decompose,
)
from utils.codebook import build_codebook, verify_predicted
from utils.run_config import RunConfig
from utils.welch import RATIO_FORMULAS, evaluate

Check = Tuple[str, bool]

EXHAUSTIVE_PAIRS = 70_000


def prime_powers_up_to(q_max: int) -> List[int]:
    out = []
    for q in range(2, q_max + 1):
        try:
            factor_prime_power(q)
            out.append(q)
        except FieldError:
            pass
    return out


def field_suite(spec: FieldSpec) -> List[Check]:
    els = spec.elements()
    nz = spec.nonzero_elements()
    small = spec.q <= 16
    checks = []
    if small:
        checks.append(("add/mul commute", all(
            add(spec, x, y) == add(spec, y, x) and mul(spec, x, y) == mul(spec, y, x)
            for x in els for y in els)))
        checks.append(("associativity and distributivity", all(
            add(spec, add(spec, x, y), z) == add(spec, x, add(spec, y, z))
            and mul(spec, mul(spec, x, y), z) == mul(spec, x, mul(spec, y, z))
            and mul(spec, x, add(spec, y, z)) == add(spec, mul(spec, x, y), mul(spec, x, z))
            for x, y, z in itertools.product(els, repeat=3))))
        checks.append(("trace linear", all(
            trace(spec, add(spec, x, y)) == (trace(spec, x) + trace(spec, y)) % spec.p
            for x in els for y in els)))
    checks.append(("x * inv(x) = 1", all(mul(spec, x, inv(spec, x)) == spec.one for x in nz)))
    fibers = np.bincount(spec.trace_table, minlength=spec.p)
    checks.append(("trace fibers of size q/p", bool(np.all(fibers == spec.q // spec.p))))
    checks.append(("trace(x^p) = trace(x)", all(
        trace(spec, power(spec, x, spec.p)) == trace(spec, x) for x in els)))
    checks.append(("g^dlog(x) = x", all(power(spec, spec.g, discrete_log(spec, x)) == x for x in nz)))
    checks.append(("g has order q-1", all(
        power(spec, spec.g, k) != spec.one for k in range(1, spec.q - 1))))
    return checks


def character_suite(spec: FieldSpec) -> List[Check]:
    els = spec.elements()
    nz = spec.nonzero_elements()
    q = spec.q
    checks = [
        ("chi_b additive", all(
            additive_char(spec, AdditiveCharIndex(b), add(spec, x, y))
            == additive_char(spec, AdditiveCharIndex(b), x) * additive_char(spec, AdditiveCharIndex(b), y)
            for b in els for x in els for y in els)),
        ("psi_j multiplicative", all(
            mult_char(spec, MultCharIndex(j), mul(spec, x, y))
            == mult_char(spec, MultCharIndex(j), x) * mult_char(spec, MultCharIndex(j), y)
            for j in range(q - 1) for x in nz for y in nz)),
    ]
    orth = True
    for b in els:
        total = sum(additive_char(spec, AdditiveCharIndex(b), c).to_complex() for c in els)
        orth &= abs(total - (q if b.is_zero() else 0)) < 1e-9 * q
    checks.append(("additive orthogonality", orth))

    special = True
    for j in range(q - 1):
        for b in els:
            g = gauss_sum_fq(spec, MultCharIndex(j), AdditiveCharIndex(b))
            if j == 0:
                expected = q - 1 if b.is_zero() else -1
                special &= abs(g - expected) < 1e-9 * q
            elif b.is_zero():
                special &= abs(g) < 1e-9 * q
            else:
                special &= abs(abs(g) - q ** 0.5) < 1e-9 * q
    checks.append(("Gauss sum special values", special))
    return checks


def ring_suite(spec: FieldSpec, rng: np.random.Generator) -> List[Check]:
    q = spec.q
    ring = enumerate_ring(spec)
    units = enumerate_units(spec)
    checks = [
        ("|R*| = q(q-1)", len(units) == q * (q - 1)),
        ("|M| = q", len(ring) - len(units) == q),
        ("decompose/recompose", all(recompose(spec, unit_decompose(spec, t)) == t for t in units)),
    ]

    def pick(seq, count):
        return [seq[i] for i in rng.integers(0, len(seq), size=count)]

    # exhaustive while the pair count stays small, 10^4 random pairs otherwise
    if len(ring) ** 2 <= EXHAUSTIVE_PAIRS:
        add_pairs = list(itertools.product(ring, repeat=2))
    else:
        add_pairs = list(zip(pick(ring, 10_000), pick(ring, 10_000)))
    if len(units) ** 2 <= EXHAUSTIVE_PAIRS:
        mul_pairs = list(itertools.product(units, repeat=2))
    else:
        mul_pairs = list(zip(pick(units, 10_000), pick(units, 10_000)))

    lam = RingAdditiveCharIndex(spec.element(int(rng.integers(q))), spec.element(int(rng.integers(q))))
    phi = RingMultCharIndex(MultCharIndex(int(rng.integers(q - 1))), spec.element(int(rng.integers(q))))
    checks.append(("lambda additive", all(
        ring_additive_char(spec, lam, ring_add(spec, x, y))
        == ring_additive_char(spec, lam, x) * ring_additive_char(spec, lam, y)
        for x, y in add_pairs)))
    checks.append(("phi multiplicative", all(
        ring_mult_char(spec, phi, ring_mul(spec, x, y))
        == ring_mult_char(spec, phi, x) * ring_mult_char(spec, phi, y)
        for x, y in mul_pairs)))
    checks.append(("lambda unit form", all(
        ring_additive_char(spec, lam, t) == ring_additive_char_unit_form(spec, lam, unit_decompose(spec, t))
        for t in units)))
    checks.append(("G_R closed = oracle", max_gauss_discrepancy(spec) < 1e-9 * q * (q - 1)))
    return checks


def codebook_suite(spec: FieldSpec, run: RunConfig) -> List[Check]:
    q = spec.q
    settings = run.settings
    checks = []
    for construction, fixed in (("C1", (0, 1)), ("C2", (0, 1))):
        reports = []
        for value in fixed:
            if construction == "C1":
                cb = build_codebook(spec, "C1", fixed_j=value)
            else:
                cb = build_codebook(spec, "C2", fixed_b=value)
            report = evaluate(cb, workers=settings.eval_workers, block_rows=settings.eval_block_rows,
                              allow_large=True, tolerance=settings.tolerance)
            reports.append(report)
            mode = "exhaustive" if q <= 5 else "sampled"
            pred = verify_predicted(cb, mode=mode, samples=settings.default_samples,
                                    seed=settings.default_seed, tolerance=settings.tolerance)
            checks.append((f"{construction}[{value}] inner products match closed form", pred.mismatches == 0))
        first = reports[0]
        expected_n = q ** 3 if construction == "C1" else q * q * (q - 1)
        checks.append((f"{construction} parameters", first.N == expected_n and first.K == q * (q - 1)))
        checks.append((f"{construction} spectrum", all(r.passed for r in reports)))
        if q >= 3:
            checks.append((f"{construction} I_max = 1/(q-1)", abs(first.i_max - 1 / (q - 1)) < settings.tolerance))
            checks.append((f"{construction} ratio formula",
                           abs(first.ratio - RATIO_FORMULAS[construction](q)) < settings.tolerance))
            checks.append((f"{construction} above Welch bound", first.i_max > first.i_w))
        checks.append((f"{construction} independent of fixed parameter",
                       abs(reports[0].i_max - reports[1].i_max) < settings.tolerance
                       and [c for _, c in reports[0].spectrum] == [c for _, c in reports[1].spectrum]))
    return checks


def _run_suite(name: str, q: int, build: Callable[[], List[Check]]) -> bool:
    start = time.time()
    try:
        checks = build()
    except (FieldError, ValueError) as e:
        print(f"FAIL  {name:<12} q={q:<4} {e}")
        return False
    failed = [label for label, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    detail = f"{len(checks)} checks" if not failed else "failed: " + "; ".join(failed)
    print(f"{status}  {name:<12} q={q:<4} {detail} ({time.time() - start:.2f}s)")
    return not failed


def run_selftest(run: RunConfig) -> int:
    settings = run.settings
    if run.p is not None:
        fields = [(run.p, run.m, run.modulus)]
    else:
        q_max = settings.selftest_q_max if run.q_max is None else run.q_max
        fields = [factor_prime_power(q) + (None,) for q in prime_powers_up_to(q_max)]

    ok = True
    for p, m, modulus in fields:
        q = p ** m
        spec: Optional[FieldSpec] = None
        try:
            spec = build_field(p, m, modulus=modulus, guard=run.guard)
        except FieldError as e:
            print(f"FAIL  {'field':<12} q={q:<4} {e}")
            ok = False
            continue
        rng = np.random.default_rng(settings.default_seed)
        ok &= _run_suite("field", q, lambda: field_suite(spec))
        ok &= _run_suite("characters", q, lambda: character_suite(spec) if q <= 9 else [])
        ok &= _run_suite("local_ring", q, lambda: ring_suite(spec, rng) if q <= 9 else [])
        ok &= _run_suite("codebook", q, lambda: codebook_suite(spec, run) if q <= 9 else [])

    print("selftest: " + ("all suites passed" if ok else "FAILURES"))
    if not ok:
        logging.error("Self-test failed")
    return 0 if ok else 1
