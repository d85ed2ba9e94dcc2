"""Formula side: the matrices M_beta = (omega^(b_i a_j)) and the dimension
formulas that sum their ranks over all increasing beta."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .complex import normalize_residues
from .fields import CYCLOTOMIC, PRIME, FieldElement, FieldSpec, is_prime
from .linalg import ExactMatrix, cyclotomic_integer_rank, rank, rank_mod_prime

Beta = tuple[int, ...]


def betas(p: int, k: int) -> Iterator[Beta]:
    """All 0 <= b_1 < ... < b_k <= p-1 in colex order."""
    if k < 0 or k > p:
        return
    b = list(range(k))
    while True:
        yield tuple(b)
        i = 0
        while i < k and b[i] + 1 == (b[i + 1] if i + 1 < k else p):
            i += 1
        if i == k:
            return
        b[i] += 1
        b[:i] = range(i)


def m_beta(A: Sequence[int], beta: Beta, omega: FieldElement) -> ExactMatrix:
    """k x m matrix with entry (i, j) = omega^(b_i a_j)."""
    F = omega.spec
    p = F.p
    powers = F.omega_powers if omega.raw == F.omega else tuple((omega**e).raw for e in range(p))
    return ExactMatrix.from_rows([[powers[b * a % p] for a in A] for b in beta], F, cols=len(A))


def _cyclo_int_power(e: int, p: int) -> tuple[int, ...]:
    if e == p - 1:
        return (-1,) * (p - 1)
    v = [0] * (p - 1)
    v[e] = 1
    return tuple(v)


def beta_rank(A: Sequence[int], beta: Beta, F: FieldSpec) -> int:
    p = F.p
    if F.mode == CYCLOTOMIC:
        return cyclotomic_integer_rank([[_cyclo_int_power(b * a % p, p) for a in A] for b in beta], p)
    powers = F.omega_powers
    rows = [[powers[b * a % p] for a in A] for b in beta]
    if F.mode == PRIME or F.degree == 1:
        return rank_mod_prime(rows, F.characteristic)
    return rank(ExactMatrix.from_rows(rows, F, cols=len(A)))


def _rank_chunk(args) -> int:
    A, chunk, F = args
    return sum(beta_rank(A, b, F) for b in chunk)


def _chunks(it: Iterable, size: int):
    it = iter(it)
    while chunk := list(islice(it, size)):
        yield chunk


def rank_sum(p: int, k: int, A: Sequence[int], F: FieldSpec, jobs: int = 1) -> int:
    """Sum of rank M_beta over all beta; the fold is a plain integer sum, so the
    result does not depend on chunking or worker scheduling."""
    A = normalize_residues(A, p)
    if F.p != p or not F.has_root_of_unity:
        raise ValueError(f"{F!r} does not contain a primitive {p}-th root of unity")
    if jobs <= 1:
        return sum(beta_rank(A, b, F) for b in betas(p, k))
    tasks = [(A, c, F) for c in _chunks(betas(p, k), 64)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(_rank_chunk, tasks))


def dim_r(p: int, k: int, A: Sequence[int], F: FieldSpec, jobs: int = 1) -> int:
    """m C(p,k) - sum of ranks: the dimension of the solution space of the
    unrestricted system (one skew element per a in A)."""
    m = len(normalize_residues(A, p))
    value = m * comb(p, k) - rank_sum(p, k, A, F, jobs)
    assert value % p == 0, "dim R must be a multiple of p"
    return value


def dim_h_semisimple(p: int, k: int, A: Sequence[int], F: FieldSpec, jobs: int = 1) -> int:
    """(m/k) C(p-1,k-1) - (1/p) sum_beta rank M_beta, for char F not dividing p."""
    if F.characteristic == p:
        raise ValueError("the rank-sum formula needs char F != p")
    m = len(normalize_residues(A, p))
    total = m * comb(p, k) - rank_sum(p, k, A, F, jobs)
    if total % p:
        raise ArithmeticError(f"rank sum not divisible by p for p={p}, k={k}, A={A}, F={F!r}")
    return total // p


def dim_h_char_p(p: int, k: int, A: Sequence[int]) -> int:
    """dim H_{k-1}(X_{A,k}; F_p): 0 if m <= k, else (m/k - 1) C(p-1, k-1)."""
    m = len(normalize_residues(A, p))
    if m <= k:
        return 0
    num = (m - k) * comb(p - 1, k - 1)
    assert num % k == 0
    return num // k


def dim_h_lower_char_p(p: int, k: int, A: Sequence[int]) -> int:
    """dim of reduced H_{k-2} over F_p: (1 - m/k) C(p-1, k-1) if m <= k, else 0."""
    m = len(normalize_residues(A, p))
    if m > k:
        return 0
    num = (k - m) * comb(p - 1, k - 1)
    assert num % k == 0
    return num // k


def chebotarev_check(p: int, k: int, F: FieldSpec, family: Iterable[Sequence[int]] | None = None) -> bool:
    """True iff rank M_beta = min(k, m) for every beta in B_k and every A in
    ``family`` (default: all k-subsets of F_p)."""
    if F.characteristic != 0:
        raise ValueError("Chebotarev's theorem is a characteristic-0 statement")
    if family is None:
        family = betas(p, k)
    for A in family:
        A = normalize_residues(A, p)
        want = min(k, len(A))
        if any(beta_rank(A, b, F) != want for b in betas(p, k)):
            return False
    return True


# ---------------------------------------------------------------------------
# full-rank certificates in characteristic 0


def certificate_prime(p: int, start: int = 1 << 20) -> tuple[int, int]:
    """A prime l = 1 (mod p) and an element r of order p in F_l.

    Z[omega] -> F_l, omega -> r is a ring map, so a matrix whose image has
    full rank over F_l has full rank over Q(omega).
    """
    l = start - start % p + 1
    while not is_prime(l):
        l += p
    g = 2
    while True:
        r = pow(g, (l - 1) // p, l)
        if r != 1:
            return l, r
        g += 1


def full_rank_mask_mod(A: Sequence[int], bs: Sequence[Beta], l: int, r: int) -> np.ndarray:
    """Boolean mask: does M_beta (omega -> r in F_l) have rank m?  Batched over
    all given betas, which must share one length k >= m."""
    A = list(A)
    m = len(A)
    if not bs:
        return np.zeros(0, dtype=bool)
    B = np.array(bs, dtype=np.int64)
    k = B.shape[1]
    if k < m:
        return np.zeros(len(bs), dtype=bool)
    # exponent table mod the order of r
    p, x = 1, r
    while x != 1:
        x = x * r % l
        p += 1
    powers = np.array([pow(r, e, l) for e in range(p)], dtype=np.int64)
    E = (B[:, :, None] * np.array(A, dtype=np.int64)[None, None, :]) % p
    M = powers[E]  # (n, k, m)
    n = M.shape[0]
    ok = np.ones(n, dtype=bool)
    idx = np.arange(n)
    for c in range(m):
        col = M[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        # swap row c with the pivot row in every matrix
        rc = M[idx, c, :].copy()
        M[idx, c, :] = M[idx, piv, :]
        M[idx, piv, :] = rc
        pv = M[:, c, c]
        pv_safe = np.where(pv == 0, 1, pv)
        inv = np.array([pow(int(v), -1, l) for v in pv_safe], dtype=np.int64)
        M[:, c, :] = M[:, c, :] * inv[:, None] % l
        f = M[:, c + 1 :, c]
        M[:, c + 1 :, :] = (M[:, c + 1 :, :] - f[:, :, None] * M[:, c, None, :]) % l
    return ok


def exists_deficient_beta(A: Sequence[int], k: int, F: FieldSpec) -> bool:
    """Is there beta in B_k with rank M_beta < m?"""
    p = F.p
    A = normalize_residues(A, p)
    m = len(A)
    if k < m:
        return k >= 0
    bs = list(betas(p, k))
    if F.mode == CYCLOTOMIC and bs:
        l, r = certificate_prime(p)
        mask = full_rank_mask_mod(A, bs, l, r)
        return any(beta_rank(A, b, F) < m for b, good in zip(bs, mask) if not good)
    return any(beta_rank(A, b, F) < m for b in bs)
