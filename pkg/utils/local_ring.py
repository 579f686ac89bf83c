#!/usr/bin/env python3
"""
The local ring R = F_q + uF_q with u^2 = 0.

Units factor uniquely as t = t0(1 + u t1) with t0 in F_q^* and t1 in F_q.
Additive characters are lambda = chi_b * chi_c, lambda(a0 + u a1) = chi_b(a0) chi_c(a1);
multiplicative characters are phi = psi_j * chi_a, phi(t0(1 + u t1)) = psi_j(t0) chi_a(t1).
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from utils.finite_field import FieldElement, FieldSpec, add, div, inv, mul, neg
from utils.characters import (
    AdditiveCharIndex,
    MultCharIndex,
    RootOfUnity,
    additive_char,
    additive_exponents,
    gauss_sum_fq,
    mult_char,
    mult_exponents,
    root_order,
    root_table,
)


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class RingElement:
    a0: FieldElement
    a1: FieldElement

    def is_unit(self) -> bool:
        return not self.a0.is_zero()

    def to_json(self) -> List[int]:
        return [self.a0.encoding, self.a1.encoding]


@dataclass(frozen=True)
class UnitDecomposition:
    t0: FieldElement
    t1: FieldElement


@dataclass(frozen=True)
class RingAdditiveCharIndex:
    b: FieldElement
    c: FieldElement


@dataclass(frozen=True)
class RingMultCharIndex:
    j: MultCharIndex
    a: FieldElement


def ring_element(spec: FieldSpec, a0: int, a1: int) -> RingElement:
    return RingElement(spec.element(a0), spec.element(a1))


def ring_element_from_json(spec: FieldSpec, data: Sequence[int]) -> RingElement:
    if len(data) != 2:
        raise RingError(f"ring element must be [a0, a1], got {data}")
    return ring_element(spec, int(data[0]), int(data[1]))


def ring_zero(spec: FieldSpec) -> RingElement:
    return RingElement(spec.zero, spec.zero)


def ring_one(spec: FieldSpec) -> RingElement:
    return RingElement(spec.one, spec.zero)


def ring_u(spec: FieldSpec) -> RingElement:
    return RingElement(spec.zero, spec.one)


def ring_add(spec: FieldSpec, x: RingElement, y: RingElement) -> RingElement:
    return RingElement(add(spec, x.a0, y.a0), add(spec, x.a1, y.a1))


def ring_neg(spec: FieldSpec, x: RingElement) -> RingElement:
    return RingElement(neg(spec, x.a0), neg(spec, x.a1))


def ring_sub(spec: FieldSpec, x: RingElement, y: RingElement) -> RingElement:
    return ring_add(spec, x, ring_neg(spec, y))


def ring_mul(spec: FieldSpec, x: RingElement, y: RingElement) -> RingElement:
    # (a0 + u a1)(b0 + u b1) = a0 b0 + u(a0 b1 + a1 b0)
    return RingElement(
        mul(spec, x.a0, y.a0),
        add(spec, mul(spec, x.a0, y.a1), mul(spec, x.a1, y.a0)),
    )


def enumerate_ring(spec: FieldSpec) -> List[RingElement]:
    return [ring_element(spec, a0, a1) for a0 in range(spec.q) for a1 in range(spec.q)]


def enumerate_units(spec: FieldSpec) -> List[RingElement]:
    return [r for r in enumerate_ring(spec) if r.is_unit()]


def unit_decompose(spec: FieldSpec, r: RingElement) -> UnitDecomposition:
    if not r.is_unit():
        raise RingError(f"[{r.a0}] + u[{r.a1}] is not a unit")
    return UnitDecomposition(t0=r.a0, t1=mul(spec, r.a1, inv(spec, r.a0)))


def recompose(spec: FieldSpec, d: UnitDecomposition) -> RingElement:
    if d.t0.is_zero():
        raise RingError("t0 must be nonzero")
    return RingElement(d.t0, mul(spec, d.t0, d.t1))


def ring_additive_char(spec: FieldSpec, idx: RingAdditiveCharIndex, r: RingElement) -> RootOfUnity:
    return (additive_char(spec, AdditiveCharIndex(idx.b), r.a0)
            * additive_char(spec, AdditiveCharIndex(idx.c), r.a1))


def ring_additive_char_unit_form(spec: FieldSpec, idx: RingAdditiveCharIndex,
                                 d: UnitDecomposition) -> RootOfUnity:
    """lambda(t) = chi_b(t0) chi_c(t0 t1) on a decomposed unit."""
    return (additive_char(spec, AdditiveCharIndex(idx.b), d.t0)
            * additive_char(spec, AdditiveCharIndex(idx.c), mul(spec, d.t0, d.t1)))


def ring_mult_char(spec: FieldSpec, idx: RingMultCharIndex, t: RingElement) -> RootOfUnity:
    d = unit_decompose(spec, t)
    return mult_char(spec, idx.j, d.t0) * additive_char(spec, AdditiveCharIndex(idx.a), d.t1)


def gauss_sum_ring_closed(spec: FieldSpec, j: MultCharIndex, a: FieldElement,
                          b: FieldElement, c: FieldElement) -> complex:
    """
    Closed form of G_R(psi_j * chi_a, chi_b * chi_c):

        q G(psi, chi_b)                  a = 0, c = 0
        0                                exactly one of a, c is 0
        q psi(-a/c) chi_1(-ab/c)         a != 0, c != 0
    """
    q = spec.q
    if a.is_zero() and c.is_zero():
        return q * gauss_sum_fq(spec, j, AdditiveCharIndex(b))
    if a.is_zero() or c.is_zero():
        return 0j
    t0 = neg(spec, div(spec, a, c))
    value = mult_char(spec, j, t0) * additive_char(spec, AdditiveCharIndex(spec.one), mul(spec, b, t0))
    return q * value.to_complex()


def gauss_sum_ring_oracle(spec: FieldSpec, j: MultCharIndex, a: FieldElement,
                          b: FieldElement, c: FieldElement) -> complex:
    """G_R(phi, lambda) summed over all q(q-1) units a0 + u a1 of R."""
    n = root_order(spec)
    q = spec.q
    a0 = np.repeat(np.arange(1, q), q)
    a1 = np.tile(np.arange(q), q - 1)
    # unit decomposition of every a0 + u a1
    t0 = a0
    t1 = spec.mul_table[a1, spec.inv_table[a0]]
    phi = mult_exponents(spec, j.j, t0) + additive_exponents(spec, a.encoding, t1)
    lam = additive_exponents(spec, b.encoding, a0) + additive_exponents(spec, c.encoding, a1)
    return complex(root_table(n)[(phi + lam) % n].sum())


def gauss_sum_parameters(spec: FieldSpec):
    """All (j, a, b, c) with j in [0, q-2] and a, b, c in F_q, lexicographic."""
    for j in range(spec.q - 1):
        for a in range(spec.q):
            for b in range(spec.q):
                for c in range(spec.q):
                    yield MultCharIndex(j), spec.element(a), spec.element(b), spec.element(c)


def max_gauss_discrepancy(spec: FieldSpec) -> float:
    worst = 0.0
    for j, a, b, c in gauss_sum_parameters(spec):
        diff = abs(gauss_sum_ring_closed(spec, j, a, b, c) - gauss_sum_ring_oracle(spec, j, a, b, c))
        worst = max(worst, diff)
    logging.debug(f"GF({spec.q}): max |closed - oracle| = {worst:.3e}")
    return worst
