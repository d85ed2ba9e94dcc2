import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import numeric_rank_m_beta, reduced_betti_mod
from sumcomplex.fields import make_field, prime_field, root_of_unity
from sumcomplex.linalg import rank
from sumcomplex.spectral import (
    beta_rank,
    betas,
    certificate_prime,
    chebotarev_check,
    dim_h_char_p,
    dim_h_semisimple,
    dim_r,
    exists_deficient_beta,
    full_rank_mask_mod,
    m_beta,
    rank_sum,
)


@pytest.mark.parametrize("p,k", [(5, 2), (7, 3), (11, 4), (13, 1), (5, 5)])
def test_betas_enumerates_all_increasing_tuples(p, k):
    got = list(betas(p, k))
    assert len(got) == comb(p, k)
    assert set(got) == set(combinations(range(p), k))
    colex = sorted(got, key=lambda b: tuple(reversed(b)))
    assert got == colex


def test_m_beta_examples():
    F = make_field(0, 7)
    w = root_of_unity(F)
    M = m_beta((2, 4, 5), (0, 1, 2), w)
    assert all(x == F.one for x in M.entries[0])
    ones = m_beta((0,), (1, 3, 5), w)
    assert ones.cols == 1 and all(r[0] == F.one for r in ones.entries)
    assert rank(m_beta((0, 1, 3), (0, 1, 2), w)) == 3


@pytest.mark.parametrize("l", [0, 2, 3, 11])
def test_beta_rank_matches_generic_rank(l):
    p = 7 if l != 11 else 5
    F = make_field(l, p)
    w = root_of_unity(F)
    rng = random.Random(l)
    for _ in range(20):
        A = rng.sample(range(p), rng.randint(1, p))
        beta = tuple(sorted(rng.sample(range(p), rng.randint(1, p - 1))))
        assert beta_rank(A, beta, F) == rank(m_beta(A, beta, w))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([5, 7, 11]),
    st.data(),
)
def test_rank_invariant_under_shift(p, data):
    k = data.draw(st.integers(1, 4))
    A = data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=p))
    c = data.draw(st.integers(1, p - 1))
    beta = tuple(sorted(data.draw(st.sets(st.integers(0, p - 1), min_size=k, max_size=k))))
    for l in (0, 2):
        F = make_field(l, p)
        assert beta_rank(A, beta, F) == beta_rank([(a + c) % p for a in A], beta, F)


def test_chebotarev_examples():
    assert chebotarev_check(5, 2, make_field(0, 5), combinations(range(5), 2))
    assert chebotarev_check(7, 3, make_field(0, 7))
    rng = random.Random(0)
    fam = [rng.sample(range(11), 4) for _ in range(50)]
    assert chebotarev_check(11, 4, make_field(0, 11), fam)
    with pytest.raises(ValueError):
        chebotarev_check(5, 2, make_field(2, 5))


def test_chebotarev_against_floating_oracle():
    for A in combinations(range(7), 3):
        for beta in betas(7, 3):
            assert numeric_rank_m_beta(A, beta, 7) == 3 == beta_rank(A, beta, make_field(0, 7))


def test_deficient_in_char_2():
    # the F_7 RP^2 instance: M_beta drops rank for some beta over F_8
    assert exists_deficient_beta((0, 1, 3), 3, make_field(2, 7))
    assert not exists_deficient_beta((0, 1, 3), 3, make_field(0, 7))


def test_certificate_prime():
    for p in (5, 7, 13):
        l, r = certificate_prime(p)
        assert (l - 1) % p == 0 and r != 1 and pow(r, p, l) == 1


def test_full_rank_mask_agrees_with_exact_rank():
    p, k = 7, 3
    l, r = certificate_prime(p)
    bs = list(betas(p, k))
    for A in [(0, 1, 3), (0, 2), (1, 2, 4)]:
        mask = full_rank_mask_mod(A, bs, l, r)
        assert mask.all()


def test_dim_h_examples():
    F0 = make_field(0, 7)
    assert dim_h_semisimple(7, 3, (0, 1, 3), F0) == 0
    assert dim_h_semisimple(7, 3, (0, 1, 3), make_field(2, 7)) == 1
    assert dim_h_char_p(7, 3, (0, 1, 3)) == 0
    assert dim_h_char_p(5, 2, (0, 1, 2)) == 2
    for p, k in [(5, 2), (7, 3), (11, 3)]:
        assert dim_h_char_p(p, k, range(p)) == comb(p - 1, k)
        assert dim_r(p, k, range(p), make_field(0, p)) == p * comb(p - 1, k)
    assert dim_r(5, 2, (0, 1, 2), make_field(0, 5)) == 10
    assert dim_r(7, 3, (0, 4), make_field(0, 7)) == 0
    with pytest.raises(ValueError):
        dim_h_semisimple(7, 3, (0, 1), prime_field(7))


@pytest.mark.parametrize("p,k", [(5, 2), (7, 2), (7, 3), (11, 3), (13, 3)])
def test_char0_closed_forms(p, k):
    F = make_field(0, p)
    for m in range(1, min(p, 6)):
        A = tuple(range(m))
        want = 0 if m <= k else (m - k) * comb(p - 1, k - 1) // k
        assert dim_h_semisimple(p, k, A, F) == want


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(2, 3), st.sampled_from([0, 2, 3]), st.data())
def test_semisimple_formula_matches_homology(p, k, l, data):
    A = tuple(sorted(data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=5))))
    F = make_field(l, p)
    h = dim_h_semisimple(p, k, A, F)
    assert h == reduced_betti_mod(p, k, A, l)[k - 1]
    assert dim_r(p, k, A, F) == p * h


def test_rank_sum_parallel_is_deterministic():
    F = make_field(2, 11)
    A = (0, 1, 3, 4)
    assert rank_sum(11, 4, A, F, jobs=1) == rank_sum(11, 4, A, F, jobs=2)
