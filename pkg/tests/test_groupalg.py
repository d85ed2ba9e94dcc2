import random
from itertools import combinations, permutations, product
from math import comb

import pytest

from oracles import boundary_rows, g1_bruteforce, rank_mod, reduced_betti_mod, ssyt_schur, young_g2
from sumcomplex.complex import build
from sumcomplex.fields import make_field, prime_field
from sumcomplex.groupalg import (
    GroupAlgebraElement as G,
    cycle_conditions,
    d_zero,
    d_zero_kernel_on_skew,
    g1_set,
    g2_set,
    g_sets_equal,
    h_of_a_dimension,
    partition_for,
    perm_sign,
    project_degree,
    q_map,
    schur_at_ones,
    schur_element,
    schur_polynomial,
    skew_basis_element,
    vandermonde_det,
)
from sumcomplex.linalg import ExactMatrix, kernel_basis
from sumcomplex.spectral import betas

F7 = prime_field(7)


def x(i, power=1, spec=F7, p=7, k=2):
    return G.generator(spec, p, k, i, power)


def test_multiplication_examples():
    s = x(1, 3) + x(2) * 5
    one = G.identity(F7, 7, 2)
    assert one * s == s == s * one
    assert x(1) * x(1, 6) == one
    lhs = (x(1) - x(2)) * (x(1) + x(2))
    assert lhs == x(1, 2) - x(2, 2)


def test_multiplication_rejects_mismatched_algebras():
    with pytest.raises(ValueError):
        x(1) * G.generator(F7, 7, 3, 1)
    with pytest.raises(ValueError):
        x(1) + G.generator(prime_field(5), 5, 2, 1)


def test_ring_axioms_random():
    F = make_field(2, 5)
    rng = random.Random(0)

    def rand():
        return G(F, 5, 2, {(rng.randrange(5), rng.randrange(5)): F.random(rng) for _ in range(4)})

    for _ in range(30):
        a, b, c = rand(), rand(), rand()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_q_map_examples():
    X = build(7, 2, (0, 1))
    assert not q_map({}, X, F7)
    face = X.top_faces[0]
    u, v = face
    assert q_map({face: 1}, X, F7) == G.monomial(F7, 7, 2, (u, v)) - G.monomial(F7, 7, 2, (v, u))
    with pytest.raises(ValueError):
        q_map({(0, 2): 1}, X, F7)


@pytest.mark.parametrize("p,k,A", [(5, 2, (0,)), (5, 2, (0, 1, 2)), (7, 3, (0, 1, 3, 4))])
def test_cycle_conditions_detect_cycles(p, k, A):
    F = prime_field(p)
    X = build(p, k, A)
    d = ExactMatrix.from_rows(boundary_rows(p, k, A, k - 1)).over(F)
    chains = [list(v) for v in kernel_basis(d)]
    rng = random.Random(1)
    chains += [[rng.randrange(p) for _ in range(X.N)] for _ in range(5)]
    if X.N <= 2:
        chains += [list(v) for v in product(range(p), repeat=X.N)]
    for vec in chains:
        is_cycle = all(x == 0 for x in d.apply(vec))
        s = q_map(dict(zip(X.top_faces, vec)), X, F)
        assert s.is_skew()
        assert (not any(cycle_conditions(s, A))) == is_cycle


def test_project_degree():
    e = x(1) + x(1) * x(2)
    assert project_degree(e, 1) == x(1)
    assert project_degree(e, 2) == x(1) * x(2)
    one = G.identity(F7, 7, 2)
    assert project_degree(one, 0) == one
    assert not project_degree(one, 3)


def test_project_degree_preserves_skew():
    s = skew_basis_element(F7, 7, 3, (0, 2, 5)) + skew_basis_element(F7, 7, 3, (1, 2, 4), 3)
    for d in range(7):
        assert project_degree(s, d).is_skew()


@pytest.mark.parametrize(
    "p,k,A,l,want",
    [(7, 3, (0, 1, 3), 7, 0), (5, 2, (0, 1, 2), 5, 2), (7, 3, (0, 1, 3), 2, 1), (7, 3, (0, 1, 3), 0, 0)],
)
def test_h_of_a_examples(p, k, A, l, want):
    assert h_of_a_dimension(p, k, A, make_field(l, p), cross_check=True) == want


@pytest.mark.parametrize("p,k", [(5, 2), (7, 2), (7, 3)])
def test_h_of_a_matches_homology_oracle(p, k):
    for A in [(0,), (1, 4), (0, 2, 3), (0, 1, 2, 4)]:
        for l in (0, 2, p):
            assert h_of_a_dimension(p, k, A, make_field(l, p)) == reduced_betti_mod(p, k, A, l)[k - 1]


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1


def test_vandermonde_examples():
    p = 7
    assert vandermonde_det((3,), p) == G.monomial(F7, p, 1, (-3,))
    # det [[1, 1], [x1^-1, x2^-1]] = x2^-1 - x1^-1 = x1^-1 x2^-1 (x1 - x2)
    w = G.monomial(F7, p, 2, (-1, -1))
    assert vandermonde_det((0, 1), p) == w * (x(1) - x(2))
    beta = (0, 1, 3)
    assert vandermonde_det(beta, p) == schur_element(beta, p) * d_zero(p, 3)
    assert schur_at_ones(beta, p) == 3


@pytest.mark.parametrize("p,k", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_vandermonde_equals_schur_times_d0(p, k):
    D0 = d_zero(p, k)
    for beta in betas(p, k):
        s = schur_element(beta, p)
        assert vandermonde_det(beta, p) == s * D0
        assert s.augmentation() == schur_at_ones(beta, p)


@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (2, 1), (3, 1, 0), (2, 2, 1), (3, 2, 0), (1, 1, 1, 0), (2, 1, 1, 0)])
def test_schur_polynomial_matches_tableaux(lam):
    assert schur_polynomial(lam) == ssyt_schur(lam, len(lam))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_schur_at_ones_nonzero(p):
    for k in range(1, min(4, p) + 1):
        assert schur_at_ones(tuple(range(k)), p) == 1
        for beta in betas(p, k):
            assert schur_at_ones(beta, p) % p


@pytest.mark.parametrize("p,k", [(5, 2), (5, 3), (7, 2)])
def test_schur_at_ones_counts_tableaux(p, k):
    for beta in betas(p, k):
        assert sum(ssyt_schur(partition_for(beta, p), k).values()) % p == schur_at_ones(beta, p)


def _skew_kernel_oracle(p, k):
    """Kernel dimension of s -> D_0 s on the skew basis, via element products."""
    F = prime_field(p)
    D0 = d_zero(p, k)
    keys = list(product(range(p), repeat=k))
    cols = []
    for g in combinations(range(p), k):
        prod_ = skew_basis_element(F, p, k, g) * D0
        cols.append([prod_.coeffs.get(e, 0) for e in keys])
    rows = [list(r) for r in zip(*cols)]
    return comb(p, k) - rank_mod(rows, p)


@pytest.mark.parametrize("p,k", [(5, 2), (7, 2), (5, 3)])
def test_d0_injective_on_skew(p, k):
    assert d_zero_kernel_on_skew(p, k) == 0 == _skew_kernel_oracle(p, k)


def test_g_sets_examples():
    alpha = (0, 1, 2)
    assert g_sets_equal(alpha, 8)
    assert g2_set(alpha) == {(tuple(alpha[s - 1] for s in sig), sig) for sig in permutations((1, 2, 3))}
    assert g2_set((0, 2, 4)) == {((0, 2, 4), (1, 2, 3))}
    assert g_sets_equal((0, 2, 4), 8)
    G2 = g2_set((0, 1, 3))
    assert len(G2) == 2 and g_sets_equal((0, 1, 3), 8)
    with pytest.raises(ValueError):
        g_sets_equal((2, 1))
    with pytest.raises(ValueError):
        g_sets_equal((1, 1, 3))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_g_sets_against_bruteforce(k):
    bound = 6
    for alpha in combinations(range(bound + 1), k):
        assert g1_set(alpha, bound) == g1_bruteforce(alpha, bound)
        assert g2_set(alpha) == young_g2(alpha)
        assert g1_set(alpha) == g2_set(alpha)
