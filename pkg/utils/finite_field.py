#!/usr/bin/env python3
"""
Exact arithmetic in GF(p^m) for small q.

Elements are stored as coefficient vectors over F_p (coefficient of x^i at
position i). Their canonical encoding is the little-endian base-p value
sum(coeffs[i] * p^i), which is also the index into every lookup table.
"""
import os
import logging
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

DEFAULT_SIZE_GUARD = 512
GUARD_ENV_VAR = "RING_CODEBOOK_GUARD"


class FieldError(ValueError):
    pass


class SizeGuardError(FieldError):
    pass


def factor_prime_power(q: int) -> Tuple[int, int]:
    """Return (p, m) with q = p^m, or raise FieldError naming the factorization."""
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        shown = " * ".join(
            f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factors.items())
        )
        raise FieldError(f"q={q} is not a prime power ({q} = {shown})")
    (p, m), = factors.items()
    return p, m


def resolve_size_guard(guard: Optional[int] = None) -> int:
    if guard is not None:
        return int(guard)
    env_value = os.environ.get(GUARD_ENV_VAR)
    if env_value:
        try:
            return int(env_value)
        except ValueError:
            logging.warning(f"Ignoring unparsable {GUARD_ENV_VAR}={env_value!r}")
    return DEFAULT_SIZE_GUARD


# ==============================================================================
# Polynomials over F_p (coefficient tuples, ascending degree)
# ==============================================================================

def _poly_trim(a: Sequence[int]) -> Tuple[int, ...]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def _poly_mod(a: Sequence[int], modulus: Sequence[int], p: int) -> Tuple[int, ...]:
    rem = [c % p for c in a]
    deg_m = len(modulus) - 1
    lead_inv = pow(modulus[-1], p - 2, p) if p > 2 else 1
    for shift in range(len(rem) - 1 - deg_m, -1, -1):
        coef = (rem[shift + deg_m] * lead_inv) % p
        if coef == 0:
            continue
        for i, mc in enumerate(modulus):
            rem[shift + i] = (rem[shift + i] - coef * mc) % p
    return _poly_trim(rem[:deg_m] if deg_m > 0 else [0])


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> Tuple[int, ...]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            prod[i + j] = (prod[i + j] + ca * cb) % p
    return _poly_mod(prod, modulus, p)


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in ascending encoding order."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    modulus = tuple(c % p for c in modulus)
    deg = len(modulus) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            if _poly_mod(modulus, divisor, p) == (0,):
                return False
    return True


def find_irreducible(p: int, m: int) -> Tuple[int, ...]:
    for candidate in _monic_polys(p, m):
        if is_irreducible(candidate, p):
            return candidate
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")


# ==============================================================================
# Field types
# ==============================================================================

@dataclass(frozen=True)
class FieldElement:
    p: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 or c >= self.p for c in self.coeffs):
            raise FieldError(f"coefficients {self.coeffs} not reduced mod {self.p}")

    @property
    def encoding(self) -> int:
        return sum(c * self.p ** i for i, c in enumerate(self.coeffs))

    @classmethod
    def from_encoding(cls, p: int, m: int, value: int) -> "FieldElement":
        if value < 0 or value >= p ** m:
            raise FieldError(f"encoding {value} outside [0, {p ** m})")
        coeffs = []
        for _ in range(m):
            value, digit = divmod(value, p)
            coeffs.append(digit)
        return cls(p, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(reversed(terms)) or "0"


@dataclass(frozen=True)
class FieldSpec:
    """
    A concrete realization of GF(p^m).

    Besides the defining data (p, m, modulus, g) the spec carries encoding-indexed
    numpy tables for addition, negation, multiplication, inversion, discrete log,
    antilog and trace. All of them are filled once by build_field.
    """
    p: int
    m: int
    modulus: Tuple[int, ...]
    g: FieldElement
    dlog_table: Dict[int, int] = field(repr=False, compare=False)
    add_table: np.ndarray = field(repr=False, compare=False)
    neg_table: np.ndarray = field(repr=False, compare=False)
    mul_table: np.ndarray = field(repr=False, compare=False)
    inv_table: np.ndarray = field(repr=False, compare=False)
    log_array: np.ndarray = field(repr=False, compare=False)
    exp_array: np.ndarray = field(repr=False, compare=False)
    trace_table: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    def element(self, encoding: int) -> FieldElement:
        return FieldElement.from_encoding(self.p, self.m, int(encoding))

    def elements(self) -> List[FieldElement]:
        return [self.element(e) for e in range(self.q)]

    def nonzero_elements(self) -> List[FieldElement]:
        return [self.element(e) for e in range(1, self.q)]

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "g": self.g.encoding}


def _element_order(x: Tuple[int, ...], modulus, p: int, q: int) -> int:
    one = (1,)
    cur = x
    for k in range(1, q):
        if cur == one:
            return k
        cur = _poly_mulmod(cur, x, modulus, p)
    return q


def build_field(
    p: int,
    m: int,
    modulus: Optional[Sequence[int]] = None,
    primitive: Optional[int] = None,
    guard: Optional[int] = None,
) -> FieldSpec:
    """
    Realize GF(p^m).

    Without a modulus the first monic irreducible polynomial in encoding order
    is used; without a primitive element the smallest-encoding element of order
    q-1 is used. Raises FieldError / SizeGuardError.
    """
    if not isprime(p):
        raise FieldError(f"p={p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree m={m} must be >= 1")
    q = p ** m
    limit = resolve_size_guard(guard)
    if q > limit:
        raise SizeGuardError(f"q={q} exceeds the size guard ({limit})")

    if modulus is None:
        modulus = find_irreducible(p, m)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic of degree {m}")
        if any(c < 0 or c >= p for c in modulus):
            raise FieldError(f"modulus {list(modulus)} has coefficients outside [0, {p})")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")

    digits = np.array(
        [[(e // p ** i) % p for i in range(m)] for e in range(q)], dtype=np.int64
    )
    weights = p ** np.arange(m, dtype=np.int64)

    def _poly(e: int) -> Tuple[int, ...]:
        return _poly_trim(digits[e].tolist())

    def _enc(poly: Sequence[int]) -> int:
        return sum(c * p ** i for i, c in enumerate(poly))

    if primitive is None:
        g_enc = next(
            (e for e in range(1, q) if _element_order(_poly(e), modulus, p, q) == q - 1),
            None,
        )
        if g_enc is None:
            raise FieldError(f"no primitive element found for modulus {list(modulus)}")
    else:
        g_enc = int(primitive)
        if not 0 < g_enc < q or _element_order(_poly(g_enc), modulus, p, q) != q - 1:
            raise FieldError(f"element {primitive} is not primitive in GF({q})")

    exp_array = np.zeros(q - 1, dtype=np.int64)
    log_array = np.full(q, -1, dtype=np.int64)
    cur = (1,)
    g_poly = _poly(g_enc)
    for k in range(q - 1):
        e = _enc(cur)
        exp_array[k] = e
        log_array[e] = k
        cur = _poly_mulmod(cur, g_poly, modulus, p)

    add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg_table = ((-digits) % p) @ weights

    mul_table = np.zeros((q, q), dtype=np.int64)
    nz = np.arange(1, q)
    mul_table[1:, 1:] = exp_array[(log_array[nz][:, None] + log_array[nz][None, :]) % (q - 1)]
    inv_table = np.zeros(q, dtype=np.int64)
    inv_table[1:] = exp_array[(-log_array[nz]) % (q - 1)]

    # Tr(x) = x + x^p + ... + x^{p^{m-1}}
    acc = np.arange(q, dtype=np.int64)
    conj = np.arange(q, dtype=np.int64)
    for _ in range(m - 1):
        frob = np.zeros(q, dtype=np.int64)
        frob[1:] = exp_array[(log_array[conj[1:]] * p) % (q - 1)]
        conj = frob
        acc = add_table[acc, conj]
    if np.any(acc >= p):
        raise FieldError("trace left the prime subfield; modulus is not irreducible")

    spec = FieldSpec(
        p=p,
        m=m,
        modulus=tuple(modulus),
        g=FieldElement.from_encoding(p, m, g_enc),
        dlog_table={int(e): int(log_array[e]) for e in range(1, q)},
        add_table=add_table,
        neg_table=neg_table,
        mul_table=mul_table,
        inv_table=inv_table,
        log_array=log_array,
        exp_array=exp_array,
        trace_table=acc,
    )
    logging.debug(f"Built GF({q}): modulus={list(spec.modulus)}, g={spec.g.encoding}")
    return spec


def field_from_json(data: dict, guard: Optional[int] = None) -> FieldSpec:
    try:
        return build_field(
            int(data["p"]), int(data["m"]),
            modulus=data["modulus"], primitive=data["g"], guard=guard,
        )
    except FieldError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FieldError(f"malformed field description: {e}")


# ==============================================================================
# Element operations
# ==============================================================================

def _check(spec: FieldSpec, *xs: FieldElement):
    for x in xs:
        if x.p != spec.p or len(x.coeffs) != spec.m:
            raise FieldError(f"{x} is not an element of GF({spec.q})")


def add(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    _check(spec, x, y)
    return spec.element(spec.add_table[x.encoding, y.encoding])


def neg(spec: FieldSpec, x: FieldElement) -> FieldElement:
    _check(spec, x)
    return spec.element(spec.neg_table[x.encoding])


def sub(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return add(spec, x, neg(spec, y))


def mul(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    _check(spec, x, y)
    return spec.element(spec.mul_table[x.encoding, y.encoding])


def inv(spec: FieldSpec, x: FieldElement) -> FieldElement:
    _check(spec, x)
    if x.is_zero():
        raise FieldError("inverse of zero")
    return spec.element(spec.inv_table[x.encoding])


def div(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    return mul(spec, x, inv(spec, y))


def power(spec: FieldSpec, x: FieldElement, k: int) -> FieldElement:
    _check(spec, x)
    if x.is_zero():
        if k < 0:
            raise FieldError("negative power of zero")
        return spec.one if k == 0 else spec.zero
    e = (spec.log_array[x.encoding] * k) % (spec.q - 1)
    return spec.element(spec.exp_array[e])


def trace(spec: FieldSpec, x: FieldElement) -> int:
    _check(spec, x)
    return int(spec.trace_table[x.encoding])


def discrete_log(spec: FieldSpec, x: FieldElement) -> int:
    _check(spec, x)
    if x.is_zero():
        raise FieldError("discrete log of zero")
    return spec.dlog_table[x.encoding]
