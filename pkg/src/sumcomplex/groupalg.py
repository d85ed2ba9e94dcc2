"""The group algebra F[C_p^k] with generators x_1..x_k.

Elements are sparse maps from exponent vectors (tuples in F_p^k) to raw field
values.  Besides the ring operations this module builds the cycle space
H(A) of skew-symmetric elements and the Vandermonde/Schur factorisation used
to show that D_0 has no skew annihilators.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations, permutations
from math import prod
from typing import Mapping, Sequence

from .complex import Face, SumComplex, build, normalize_residues
from .fields import FieldSpec, prime_field
from .linalg import ExactMatrix, rank_over
from .spectral import Beta

Exponent = tuple[int, ...]


def perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


_SIGNED_PERMS: dict[int, list[tuple[tuple[int, ...], int]]] = {}


def signed_permutations(k: int) -> list[tuple[tuple[int, ...], int]]:
    if k not in _SIGNED_PERMS:
        _SIGNED_PERMS[k] = [(s, perm_sign(s)) for s in permutations(range(k))]
    return _SIGNED_PERMS[k]


class GroupAlgebraElement:
    __slots__ = ("spec", "p", "k", "coeffs")

    def __init__(self, spec: FieldSpec, p: int, k: int, coeffs: Mapping[Exponent, object] | None = None):
        self.spec, self.p, self.k = spec, p, k
        self.coeffs = {}
        for g, c in (coeffs or {}).items():
            g = tuple(x % p for x in g)
            if len(g) != k:
                raise ValueError(f"exponent {g} is not in F_p^{k}")
            c = spec.from_int(c) if isinstance(c, int) else c
            if not spec.is_zero(c):
                self.coeffs[g] = c

    # constructors
    @classmethod
    def zero(cls, spec, p, k):
        return cls(spec, p, k)

    @classmethod
    def identity(cls, spec, p, k):
        return cls(spec, p, k, {(0,) * k: spec.one})

    @classmethod
    def monomial(cls, spec, p, k, exponent: Exponent, coeff=1):
        return cls(spec, p, k, {tuple(exponent): coeff})

    @classmethod
    def generator(cls, spec, p, k, i: int, power: int = 1):
        """x_i^power, with i counted from 1."""
        e = [0] * k
        e[i - 1] = power
        return cls.monomial(spec, p, k, tuple(e))

    def _check(self, other: "GroupAlgebraElement"):
        if (self.spec, self.p, self.k) != (other.spec, other.p, other.k):
            raise ValueError("elements live in different group algebras")

    def __add__(self, other):
        self._check(other)
        F = self.spec
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = F.add(out[g], c) if g in out else c
        return GroupAlgebraElement(F, self.p, self.k, out)

    def __neg__(self):
        F = self.spec
        return GroupAlgebraElement(F, self.p, self.k, {g: F.neg(c) for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F, p = self.spec, self.p
        if isinstance(other, int):
            c = F.from_int(other)
            return GroupAlgebraElement(F, p, self.k, {g: F.mul(v, c) for g, v in self.coeffs.items()})
        self._check(other)
        out: dict[Exponent, object] = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                e = tuple((x + y) % p for x, y in zip(g, h))
                v = F.mul(a, b)
                out[e] = F.add(out[e], v) if e in out else v
        return GroupAlgebraElement(F, p, self.k, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.spec, self.p, self.k, self.coeffs) == (other.spec, other.p, other.k, other.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{g}" for g, c in sorted(self.coeffs.items()))
        return f"<{self.spec!r}[C_{self.p}^{self.k}]: {terms or '0'}>"

    def augmentation(self):
        """Sum of coefficients (image under F[G] -> F)."""
        F = self.spec
        acc = F.zero
        for c in self.coeffs.values():
            acc = F.add(acc, c)
        return acc

    def is_skew(self) -> bool:
        """Alternating under S_k and zero on exponents with a repeated entry."""
        F = self.spec
        for g, c in self.coeffs.items():
            if len(set(g)) < self.k:
                return False
            for perm, sgn in signed_permutations(self.k):
                h = tuple(g[i] for i in perm)
                want = c if sgn == 1 else F.neg(c)
                if self.coeffs.get(h, F.zero) != want:
                    return False
        return True


def project_degree(s: GroupAlgebraElement, d: int) -> GroupAlgebraElement:
    """Keep the terms x^gamma with sum(gamma) = d (mod p)."""
    d %= s.p
    return GroupAlgebraElement(s.spec, s.p, s.k, {g: c for g, c in s.coeffs.items() if sum(g) % s.p == d})


def skew_basis_element(spec: FieldSpec, p: int, k: int, gamma: Exponent, coeff=1) -> GroupAlgebraElement:
    """coeff * sum_sigma sgn(sigma) x^(gamma o sigma) for gamma with distinct entries."""
    if len(set(gamma)) != k:
        raise ValueError("skew elements vanish on exponents with repeated entries")
    c = spec.from_int(coeff) if isinstance(coeff, int) else coeff
    out = {}
    for perm, sgn in signed_permutations(k):
        out[tuple(gamma[i] for i in perm)] = c if sgn == 1 else spec.neg(c)
    return GroupAlgebraElement(spec, p, k, out)


def q_map(chain: Mapping[Face, object], X: SumComplex, spec: FieldSpec) -> GroupAlgebraElement:
    """Image of a top-dimensional chain (coefficients on sorted faces) in F[G]."""
    tops = set(X.top_faces)
    out = GroupAlgebraElement.zero(spec, X.p, X.k)
    for face, c in chain.items():
        face = tuple(face)
        if face not in tops:
            raise ValueError(f"{face} is not a top face of X_{{A,{X.k}}}")
        out = out + skew_basis_element(spec, X.p, X.k, face, c)
    return out


def cycle_conditions(s: GroupAlgebraElement, A: Sequence[int]) -> list[GroupAlgebraElement]:
    """The k elements sum_a x_i^(-a) rho_a(s); s is in H(A) iff all vanish."""
    p, k = s.p, s.k
    out = []
    for i in range(1, k + 1):
        acc = GroupAlgebraElement.zero(s.spec, p, k)
        for a in A:
            acc = acc + GroupAlgebraElement.generator(s.spec, p, k, i, -a) * project_degree(s, a)
        out.append(acc)
    return out


def h_of_a_matrix(p: int, k: int, A: Sequence[int]) -> ExactMatrix:
    """Integer matrix of s -> (sum_a x_i^(-a) rho_a(s))_i on the skew basis of
    the homogeneous pieces S_a, a in A."""
    A = normalize_residues(A, p)
    targets = set(A)
    basis = [g for g in combinations(range(p), k) if sum(g) % p in targets]
    row_index: dict[tuple[int, Exponent], int] = {}
    columns: list[dict[int, int]] = []
    for g in basis:
        a = sum(g) % p
        col: dict[int, int] = defaultdict(int)
        for perm, sgn in signed_permutations(k):
            h = [g[j] for j in perm]
            for i in range(k):
                e = list(h)
                e[i] = (e[i] - a) % p
                key = (i, tuple(e))
                r = row_index.setdefault(key, len(row_index))
                col[r] += sgn
        columns.append(col)
    rows = [[0] * len(basis) for _ in range(len(row_index))]
    for c, col in enumerate(columns):
        for r, v in col.items():
            rows[r][c] = v
    return ExactMatrix.from_rows(rows, cols=len(basis))


def h_of_a_dimension(p: int, k: int, A: Sequence[int], F: FieldSpec, cross_check: bool = False) -> int:
    """dim H(A) over F from the group-algebra cycle conditions."""
    M = h_of_a_matrix(p, k, A)
    dim = M.cols - rank_over(M, F)
    if cross_check:
        from .homology import top_betti

        expected = top_betti(build(p, k, A), F)
        if dim != expected:
            raise AssertionError(f"dim H(A) = {dim} but dim H_(k-1) = {expected} for p={p}, k={k}, A={A}")
    return dim


# ---------------------------------------------------------------------------
# Vandermonde determinants and Schur polynomials


def vandermonde_det(beta: Beta, p: int, k: int | None = None) -> GroupAlgebraElement:
    """det [x_i^(-b_j)] in F_p[C_p^k] by the Leibniz formula."""
    k = len(beta) if k is None else k
    if len(beta) != k or list(beta) != sorted(set(beta)):
        raise ValueError(f"beta must be strictly increasing of length {k}")
    F = prime_field(p)
    out: dict[Exponent, int] = defaultdict(int)
    for perm, sgn in signed_permutations(k):
        e = tuple(-beta[perm[i]] % p for i in range(k))
        out[e] += sgn
    return GroupAlgebraElement(F, p, k, {e: c % p for e, c in out.items()})


def d_zero(p: int, k: int, spec: FieldSpec | None = None) -> GroupAlgebraElement:
    """prod_{i<j} (x_i - x_j)."""
    spec = spec or prime_field(p)
    out = GroupAlgebraElement.identity(spec, p, k)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out = out * (GroupAlgebraElement.generator(spec, p, k, i) - GroupAlgebraElement.generator(spec, p, k, j))
    return out


def partition_for(beta: Beta, p: int) -> tuple[int, ...]:
    """lambda_j = p - b_j - k + j (1-based j)."""
    k = len(beta)
    return tuple(p - b - k + j for j, b in enumerate(beta, start=1))


Poly = dict[tuple[int, ...], int]


def _divide_linear(P: Poly, i: int, j: int) -> Poly:
    """Exact division of P in Z[xi] by (xi_i - xi_j)."""
    # group by degree in xi_i; coefficients are polynomials in the rest
    by_deg: dict[int, Poly] = defaultdict(dict)
    for e, c in P.items():
        rest = e[:i] + (0,) + e[i + 1 :]
        by_deg[e[i]][rest] = by_deg[e[i]].get(rest, 0) + c
    if not by_deg:
        return {}
    top = max(by_deg)
    quotient: Poly = {}
    carry: Poly = {}
    for d in range(top, 0, -1):
        # q_{d-1} = c_d + xi_j * q_d
        q = dict(by_deg.get(d, {}))
        for e, c in carry.items():
            e2 = list(e)
            e2[j] += 1
            e2 = tuple(e2)
            q[e2] = q.get(e2, 0) + c
        q = {e: c for e, c in q.items() if c}
        for e, c in q.items():
            e2 = list(e)
            e2[i] = d - 1
            quotient[tuple(e2)] = c
        carry = q
    remainder = dict(by_deg.get(0, {}))
    for e, c in carry.items():
        e2 = list(e)
        e2[j] += 1
        e2 = tuple(e2)
        remainder[e2] = remainder.get(e2, 0) + c
    if any(remainder.values()):
        raise ArithmeticError("division by (xi_i - xi_j) is not exact")
    return quotient


def alternant(exponents: Sequence[int]) -> Poly:
    """det [xi_i^(e_j)] in Z[xi_1..xi_k]."""
    k = len(exponents)
    out: Poly = {}
    for perm, sgn in signed_permutations(k):
        e = tuple(exponents[perm[i]] for i in range(k))
        out[e] = out.get(e, 0) + sgn
    return {e: c for e, c in out.items() if c}


def schur_polynomial(partition: Sequence[int]) -> Poly:
    """s_lambda = D_lambda / D_0 computed by exact division in Z[xi]."""
    k = len(partition)
    P = alternant([partition[j] + k - 1 - j for j in range(k)])
    for i in range(k):
        for j in range(i + 1, k):
            P = _divide_linear(P, i, j)
    return P


def schur_element(beta: Beta, p: int) -> GroupAlgebraElement:
    """s_lambda(x) in F_p[G] for the partition attached to beta."""
    k = len(beta)
    F = prime_field(p)
    out: dict[Exponent, int] = defaultdict(int)
    for e, c in schur_polynomial(partition_for(beta, p)).items():
        out[tuple(x % p for x in e)] += c
    return GroupAlgebraElement(F, p, k, {e: c % p for e, c in out.items()})


def schur_at_ones(beta: Beta, p: int) -> int:
    """s_lambda(1,...,1) mod p from the hook-content style product over pairs."""
    lam = partition_for(beta, p)
    k = len(lam)
    value = prod(
        (Fraction(lam[i - 1] - lam[j - 1] + j - i, j - i) for i in range(1, k + 1) for j in range(i + 1, k + 1)),
        start=Fraction(1),
    )
    assert value.denominator == 1
    r = int(value) % p
    if r == 0:
        raise ArithmeticError(f"s_lambda(1..1) vanishes mod {p} for beta={beta}")
    return r


# ---------------------------------------------------------------------------
# annihilators of D_0 on skew elements


def multiplication_matrix_on_skew(p: int, k: int) -> ExactMatrix:
    """Integer matrix of s -> D_0(x) s on the skew basis of F_p[G]."""
    D0 = d_zero(p, k, prime_field(p))
    D0_int = {e: (c if c <= p // 2 else c - p) for e, c in D0.coeffs.items()}
    basis = list(combinations(range(p), k))
    index: dict[Exponent, int] = {}
    cols = []
    for g in basis:
        col: dict[int, int] = defaultdict(int)
        for perm, sgn in signed_permutations(k):
            h = tuple(g[i] for i in perm)
            for e, c in D0_int.items():
                key = tuple((x + y) % p for x, y in zip(h, e))
                col[index.setdefault(key, len(index))] += sgn * c
        cols.append(col)
    rows = [[0] * len(basis) for _ in range(len(index))]
    for c, col in enumerate(cols):
        for r, v in col.items():
            rows[r][c] = v
    return ExactMatrix.from_rows(rows, cols=len(basis))


def d_zero_kernel_on_skew(p: int, k: int) -> int:
    """Kernel dimension of multiplication by D_0(x) on the skew subspace of F_p[G]."""
    M = multiplication_matrix_on_skew(p, k)
    return M.cols - rank_over(M, prime_field(p))


# ---------------------------------------------------------------------------
# the sets G_1(alpha) and G_2(alpha)


def precedes(gamma: Sequence[int], alpha: Sequence[int]) -> bool:
    """{gamma} precedes-or-equals {alpha} in lex order on subsets of N:
    sum 2^-gamma_i >= sum 2^-alpha_i."""
    top = max(max(gamma), max(alpha))
    return sum(1 << (top - g) for g in gamma) >= sum(1 << (top - a) for a in alpha)


def young_blocks(alpha: Sequence[int]) -> list[list[int]]:
    """Maximal runs of consecutive values in alpha, as 1-based index blocks."""
    k = len(alpha)
    cuts = [i for i in range(1, k) if alpha[i - 1] + 1 < alpha[i]]
    bounds = [0] + cuts + [k]
    return [list(range(bounds[t] + 1, bounds[t + 1] + 1)) for t in range(len(bounds) - 1)]


def g1_set(alpha: Sequence[int], bound: int | None = None) -> set[tuple[Exponent, tuple[int, ...]]]:
    """Pairs (gamma, sigma), gamma with distinct entries in [0, bound] preceding
    alpha and gamma_j - sigma(j) = alpha_j - j for all j.

    sigma determines gamma, so enumerating S_k is exhaustive; ``bound`` (default:
    no limit) only filters.
    """
    k = len(alpha)
    out = set()
    for perm in permutations(range(1, k + 1)):
        gamma = tuple(alpha[j] - (j + 1) + perm[j] for j in range(k))
        if min(gamma) < 0 or len(set(gamma)) < k:
            continue
        if bound is not None and max(gamma) > bound:
            continue
        if precedes(gamma, alpha):
            out.add((gamma, perm))
    return out


def g2_set(alpha: Sequence[int]) -> set[tuple[Exponent, tuple[int, ...]]]:
    """Pairs (gamma, sigma) with sigma in the Young subgroup of the runs of alpha
    and gamma_j = alpha_sigma(j)."""
    k = len(alpha)
    blocks = young_blocks(alpha)
    out = set()

    def extend(t: int, sigma: dict[int, int]):
        if t == len(blocks):
            perm = tuple(sigma[j] for j in range(1, k + 1))
            out.add((tuple(alpha[perm[j] - 1] for j in range(k)), perm))
            return
        block = blocks[t]
        for image in permutations(block):
            extend(t + 1, {**sigma, **dict(zip(block, image))})

    extend(0, {})
    return out


def g_sets_equal(alpha: Sequence[int], bound: int | None = None) -> bool:
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha) or any(x >= y for x, y in zip(alpha, alpha[1:])):
        raise ValueError(f"alpha must be strictly increasing in N, got {alpha}")
    return g1_set(alpha, bound) == g2_set(alpha)
