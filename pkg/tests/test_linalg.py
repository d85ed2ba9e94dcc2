import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import boundary_rows, minor_gcd_divisors, numeric_rank_m_beta, rank_fraction, rank_mod
from sumcomplex.fields import make_field, prime_field, root_of_unity
from sumcomplex.linalg import (
    ExactMatrix,
    _dense_snf_diagonal,
    _modular_snf_diagonal,
    _unit_pivot_reduce,
    divisor_chain,
    kernel_basis,
    rank,
    rank_over,
    smith_normal_form,
)
from sumcomplex.spectral import betas, m_beta

int_matrices = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 6).flatmap(
        lambda m: st.lists(st.lists(st.integers(-9, 9), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


def test_identity_and_zero_ranks():
    for F in (None, prime_field(5), make_field(2, 7), make_field(0, 5)):
        assert rank(ExactMatrix.identity(4, F)) == 4
        assert rank(ExactMatrix.zeros(3, 5, F)) == 0
    assert rank(ExactMatrix.zeros(0, 0)) == 0


@pytest.mark.parametrize("p,k,A", [(5, 2, (0, 1)), (7, 3, (0, 1, 3)), (11, 3, (0, 2, 5, 7)), (13, 4, (1, 2, 3))])
def test_m_beta_full_rank_over_cyclotomics(p, k, A):
    F = make_field(0, p)
    omega = root_of_unity(F)
    for beta in list(betas(p, k))[:40]:
        M = m_beta(A, beta, omega)
        assert rank(M) == min(k, len(A)) == numeric_rank_m_beta(A, beta, p)


def test_kernel_examples():
    F2 = prime_field(2)
    assert kernel_basis(ExactMatrix.identity(3, F2)) == []
    assert kernel_basis(ExactMatrix.from_rows([[1, 1]], F2)) == [[1, 1]]


@pytest.mark.parametrize("p,A", [(7, (0, 1, 2, 3, 5)), (5, (0, 1, 2, 4))])
def test_kernel_of_wide_m_beta(p, A):
    for l in (0, 2, 3):
        F = make_field(l, p)
        w = root_of_unity(F)
        for beta in list(betas(p, 2))[:5]:
            M = m_beta(A, beta, w)
            K = kernel_basis(M)
            assert len(K) >= len(A) - 2
            assert len(K) + rank(M) == len(A)
            for v in K:
                assert all(F.is_zero(x) for x in M.apply(v))


@settings(max_examples=80, deadline=None)
@given(int_matrices, st.sampled_from([0, 2, 3, 5, 7]))
def test_rank_equals_rank_of_transpose(rows, l):
    M = ExactMatrix.from_rows(rows)
    F = make_field(l, 7)
    assert rank_over(M, F) == rank_over(M.transpose(), F)
    assert rank(M) == rank(M.transpose()) == rank_fraction(rows)


@settings(max_examples=80, deadline=None)
@given(int_matrices, st.sampled_from([2, 3, 5, 7, 11]))
def test_reduction_mod_l_cannot_raise_rank(rows, l):
    M = ExactMatrix.from_rows(rows)
    r_l = rank_over(M, prime_field(l))
    assert r_l == rank_mod(rows, l)
    assert r_l <= rank(M)


@settings(max_examples=60, deadline=None)
@given(int_matrices, st.sampled_from([2, 3, 5]))
def test_kernel_vectors_are_annihilated(rows, l):
    F = prime_field(l)
    M = ExactMatrix.from_rows(rows).over(F)
    K = kernel_basis(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert all(x == 0 for x in M.apply(v))


def test_kernel_over_extension_field():
    F = make_field(2, 7)
    rng = random.Random(4)
    for _ in range(20):
        M = ExactMatrix.from_rows([[F.random(rng) for _ in range(5)] for _ in range(3)], F)
        for v in kernel_basis(M):
            assert all(F.is_zero(x) for x in M.apply(v))


def test_snf_examples():
    assert smith_normal_form(ExactMatrix.from_rows([[2, 0], [0, 3]])).divisors == (1, 6)
    assert smith_normal_form(ExactMatrix.identity(5)).divisors == (1,) * 5
    d2 = boundary_rows(7, 3, (0, 1, 3), 2)
    snf = smith_normal_form(ExactMatrix.from_rows(d2))
    assert snf.torsion == (2,)
    assert all(d == 1 for d in snf.divisors[:-1])


@settings(max_examples=200, deadline=None)
@given(int_matrices)
def test_snf_matches_minor_gcd_oracle(rows):
    snf = smith_normal_form(ExactMatrix.from_rows(rows))
    assert snf.divisors == minor_gcd_divisors(rows)
    assert snf.rank == rank_fraction(rows)


def test_divisor_chain_normalises():
    assert divisor_chain([6, 4]) == (2, 12)
    assert divisor_chain([0, 3, 1]) == (1, 3)


@pytest.mark.parametrize("p,a", [(11, 3), (13, 4), (17, 5), (19, 7)])
def test_modular_and_dense_snf_agree(p, a):
    rows = boundary_rows(p, 3, (0, 1, a), 2)
    residual, _ = _unit_pivot_reduce([list(r) for r in rows], len(rows), len(rows[0]))
    assert residual
    mod = _modular_snf_diagonal([list(r) for r in residual])
    assert mod is not None
    assert divisor_chain(mod) == divisor_chain(_dense_snf_diagonal([list(r) for r in residual]))


def test_snf_large_entries():
    rows = [[2**70, 3 * 2**70], [5, 7]]
    snf = smith_normal_form(ExactMatrix.from_rows(rows))
    assert snf.divisors == minor_gcd_divisors(rows)
