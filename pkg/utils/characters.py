#!/usr/bin/env python3
"""
Additive characters chi_b and multiplicative characters psi_j of F_q.

Character values are kept exactly as exponents in the cyclic group of n-th
roots of unity, n = p(q-1). zeta_p is the n-th root raised to q-1 and
zeta_{q-1} is the n-th root raised to p. Conversion to complex happens only
when values are summed.
"""
import math
from dataclasses import dataclass

import numpy as np

from utils.finite_field import FieldElement, FieldSpec, FieldError, discrete_log, mul, trace


class CharacterError(ValueError):
    pass


def root_order(spec: FieldSpec) -> int:
    if math.gcd(spec.p, spec.q - 1) != 1:
        raise CharacterError(f"gcd(p, q-1) != 1 for p={spec.p}, q={spec.q}")
    return spec.p * (spec.q - 1)


def root_table(n: int) -> np.ndarray:
    """exp(2*pi*i*e/n) for e in [0, n)."""
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class RootOfUnity:
    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise CharacterError(f"root of unity order must be positive, got {self.order}")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.order != self.order:
            raise CharacterError(f"cannot multiply roots of orders {self.order} and {other.order}")
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def to_complex(self) -> complex:
        return complex(np.exp(2j * np.pi * self.exponent / self.order))


@dataclass(frozen=True)
class AdditiveCharIndex:
    b: FieldElement


@dataclass(frozen=True)
class MultCharIndex:
    j: int


def additive_char(spec: FieldSpec, b: AdditiveCharIndex, c: FieldElement) -> RootOfUnity:
    """chi_b(c) = zeta_p^{Tr(bc)}."""
    n = root_order(spec)
    return RootOfUnity(n, trace(spec, mul(spec, b.b, c)) * (spec.q - 1))


def mult_char(spec: FieldSpec, j: MultCharIndex, c: FieldElement) -> RootOfUnity:
    """psi_j(g^k) = zeta_{q-1}^{jk}; undefined at 0."""
    n = root_order(spec)
    try:
        k = discrete_log(spec, c)
    except FieldError as e:
        raise CharacterError(f"multiplicative character at zero: {e}")
    return RootOfUnity(n, j.j * k * spec.p)


def additive_exponents(spec: FieldSpec, b: int, c: np.ndarray) -> np.ndarray:
    """Vectorised exponents of chi_b over an array of encodings."""
    return (spec.trace_table[spec.mul_table[b, c]] * (spec.q - 1)) % root_order(spec)


def mult_exponents(spec: FieldSpec, j: int, c: np.ndarray) -> np.ndarray:
    """Vectorised exponents of psi_j over an array of nonzero encodings."""
    logs = spec.log_array[c]
    if np.any(logs < 0):
        raise CharacterError("multiplicative character at zero")
    return (j * logs * spec.p) % root_order(spec)


def gauss_sum_fq(spec: FieldSpec, j: MultCharIndex, b: AdditiveCharIndex) -> complex:
    """G(psi_j, chi_b) = sum over c in F_q^* of psi_j(c) chi_b(c), summed directly."""
    n = root_order(spec)
    c = np.arange(1, spec.q)
    exps = (mult_exponents(spec, j.j, c) + additive_exponents(spec, b.b.encoding, c)) % n
    return complex(root_table(n)[exps].sum())
