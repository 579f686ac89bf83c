import numpy as np
import pytest

from utils.finite_field import SizeGuardError
from utils.characters import MultCharIndex
from utils.local_ring import gauss_sum_ring_closed
from utils.codebook import (
    CodebookError,
    build_c0,
    build_c1,
    build_c2,
    build_codebook,
    coordinate_order,
    inner_product,
    predicted_inner_product,
    predicted_inner_product_c0,
    predicted_inner_product_c1,
    predicted_inner_product_c2,
    row_difference,
    sample_pairs,
    verify_predicted,
)
from conftest import SMALL_Q, field


def row_index(q, a, b, c):
    return (a * q + b) * q + c


# ---------------------------------------------------------
# Construction
# ---------------------------------------------------------
@pytest.mark.parametrize("construction,q,n,k", [
    ("C1", 3, 27, 6),
    ("C1", 4, 64, 12),
    ("C2", 3, 18, 6),
    ("C2", 2, 4, 2),
    ("C0", 3, 54, 6),
])
def test_sizes(construction, q, n, k):
    cb = build_codebook(field(q), construction)
    assert (cb.N, cb.K) == (n, k)
    assert cb.entries.shape == (n, k)
    assert cb.params.shape == (n, 4)


def test_coordinate_order(gf4):
    coords = coordinate_order(gf4)
    assert coords.shape == (12, 2)
    assert coords[0].tolist() == [1, 0]
    assert coords[5].tolist() == [2, 1]
    assert set(coords[:, 0].tolist()) == {1, 2, 3}


def test_trivial_row(gf5):
    cb = build_c1(gf5, MultCharIndex(0))
    assert not cb.entries[0].any()


def test_c1_first_row_is_the_fixed_multiplicative_character(gf4):
    cb = build_c1(gf4, MultCharIndex(1))
    col = (gf4.g.encoding - 1) * gf4.q
    assert cb.entries[0, col] == 2
    assert cb.n_root == 6


def test_c2_first_row_constant(gf5):
    cb = build_c2(gf5, gf5.zero)
    assert np.all(cb.entries[0] == cb.entries[0, 0])


def test_c1_fixed_j_is_reduced(gf5):
    assert build_c1(gf5, MultCharIndex(5)).fixed_param == 1


def test_c2_rejects_foreign_b(gf5):
    with pytest.raises(CodebookError):
        build_codebook(gf5, "C2", fixed_b=5)


def test_unknown_construction(gf5):
    with pytest.raises(CodebookError):
        build_codebook(gf5, "C3")


@pytest.mark.parametrize("q", SMALL_Q)
@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_rows_have_unit_norm(construction, q):
    cb = build_codebook(field(q), construction)
    norms = np.linalg.norm(cb.vectors(), axis=1)
    assert np.allclose(norms, 1.0, atol=1e-12)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_rows_distinct(construction, q):
    cb = build_codebook(field(q), construction)
    assert len({row.tobytes() for row in cb.entries}) == cb.N


def test_q2_is_degenerate():
    cb = build_codebook(field(2), "C1")
    assert cb.degenerate
    assert len({row.tobytes() for row in cb.entries}) < cb.N


def test_entries_guard(gf9):
    with pytest.raises(SizeGuardError):
        build_codebook(gf9, "C1", max_entries=1000)
    assert build_codebook(gf9, "C1", max_entries=1000, force=True).N == 729


# ---------------------------------------------------------
# Inner products
# ---------------------------------------------------------
def test_self_inner_product(gf5):
    cb = build_c1(gf5, MultCharIndex(1))
    for i in (0, 17, cb.N - 1):
        assert abs(inner_product(cb, i, i) - 1) < 1e-12


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_c1_worked_values(q):
    cb = build_c1(field(q), MultCharIndex(1))
    for b in range(1, q):
        assert abs(inner_product(cb, row_index(q, 0, b, 0), 0) + 1 / (q - 1)) < 1e-12
    for a in range(1, q):
        assert abs(inner_product(cb, row_index(q, a, 0, 0), 0)) < 1e-12


def test_out_of_range_row(gf4):
    cb = build_c1(gf4, MultCharIndex(1))
    with pytest.raises(CodebookError):
        inner_product(cb, 0, cb.N)
    with pytest.raises(CodebookError):
        inner_product(cb, -1, 0)


def test_row_difference(gf5):
    cb = build_c1(gf5, MultCharIndex(1))
    i, k = row_index(5, 1, 2, 3), row_index(5, 4, 4, 1)
    assert row_difference(cb, i, k) == (0, 2, 3, 2)


def test_predicted_values(gf5):
    z, one, two = gf5.zero, gf5.one, gf5.element(2)
    assert abs(predicted_inner_product_c1(gf5, z, two, z) + 0.25) < 1e-12
    assert predicted_inner_product_c1(gf5, one, two, z) == 0
    assert abs(abs(predicted_inner_product_c1(gf5, one, two, two)) - 0.25) < 1e-12
    assert predicted_inner_product_c2(gf5, MultCharIndex(2), z, one) == 0
    assert predicted_inner_product_c2(gf5, MultCharIndex(3), z, z) == 0
    # -a/c = -1 = 4 = g^2, psi_1(4) = i^2
    assert abs(predicted_inner_product_c2(gf5, MultCharIndex(1), one, one) + 0.25) < 1e-12


def test_predicted_rejects_zero_difference(gf5):
    z = gf5.zero
    with pytest.raises(CodebookError):
        predicted_inner_product_c1(gf5, z, z, z)
    with pytest.raises(CodebookError):
        predicted_inner_product_c2(gf5, MultCharIndex(0), z, z)
    with pytest.raises(CodebookError):
        predicted_inner_product_c0(gf5, MultCharIndex(4), z, z, z)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_predictions_are_ring_gauss_sums(q):
    spec = field(q)
    K = q * (q - 1)
    z = spec.zero
    for a in spec.elements():
        for b in spec.elements():
            for c in spec.elements():
                if a.is_zero() and b.is_zero() and c.is_zero():
                    continue
                g = gauss_sum_ring_closed(spec, MultCharIndex(0), a, b, c)
                assert abs(predicted_inner_product_c1(spec, a, b, c) - g / K) < 1e-9
    for j in range(q - 1):
        for a in spec.elements():
            for c in spec.elements():
                if j == 0 and a.is_zero() and c.is_zero():
                    continue
                g = gauss_sum_ring_closed(spec, MultCharIndex(j), a, z, c)
                assert abs(predicted_inner_product_c2(spec, MultCharIndex(j), a, c) - g / K) < 1e-9


def test_predicted_matches_direct_for_single_pairs():
    spec = field(7)
    cb = build_c2(spec, spec.element(3))
    for i, k in ((0, 1), (5, 200), (251, 17)):
        assert abs(predicted_inner_product(cb, i, k) - inner_product(cb, i, k)) < 1e-9


@pytest.mark.parametrize("q", [3, 4, 5])
@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_verify_predicted_exhaustive(construction, q):
    cb = build_codebook(field(q), construction)
    check = verify_predicted(cb, mode="exhaustive")
    assert check.pairs == cb.N * (cb.N - 1) // 2
    assert check.mismatches == 0
    assert check.max_deviation < 1e-9


@pytest.mark.parametrize("q", [7, 8, 9])
@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_verify_predicted_sampled(construction, q):
    check = verify_predicted(build_codebook(field(q), construction), mode="sampled", samples=100_000, seed=3)
    assert check.pairs == 100_000
    assert check.mismatches == 0


@pytest.mark.parametrize("q", [3, 4])
def test_verify_predicted_c0(q):
    check = verify_predicted(build_c0(field(q)), mode="exhaustive")
    assert check.mismatches == 0


def test_verify_predicted_unknown_mode(gf4):
    with pytest.raises(CodebookError):
        verify_predicted(build_c1(gf4, MultCharIndex(1)), mode="random")


def test_sample_pairs_are_distinct_and_seeded():
    i1, k1 = sample_pairs(10, 5000, seed=9)
    i2, k2 = sample_pairs(10, 5000, seed=9)
    assert np.array_equal(i1, i2) and np.array_equal(k1, k2)
    assert not np.any(i1 == k1)
    assert k1.max() < 10
    with pytest.raises(CodebookError):
        sample_pairs(1, 10, seed=0)
    with pytest.raises(CodebookError):
        sample_pairs(10, 0, seed=0)
