"""Uncertainty numbers u_F(A) = min rank T_f over nonzero f supported in A,
for A a subset of F_p, computed directly and from sum-complex homology."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .complex import build, normalize_residues
from .fields import FieldSpec, prime_field
from .homology import top_betti
from .linalg import ExactMatrix, kernel_basis, rank
from .spectral import exists_deficient_beta

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SupportedFunction:
    """A function F_p -> F given by its values on A (raw field values)."""

    p: int
    spec: FieldSpec
    values: tuple[tuple[int, object], ...]

    @classmethod
    def from_mapping(cls, p: int, spec: FieldSpec, values: Mapping[int, object], A: Sequence[int] | None = None):
        vals = {}
        for a, v in values.items():
            v = spec.from_int(v) if isinstance(v, int) else v
            if not spec.is_zero(v):
                vals[a % p] = v
        if A is not None and not set(vals) <= set(normalize_residues(A, p)):
            raise ValueError("support is not contained in A")
        return cls(p, spec, tuple(sorted(vals.items())))

    def __call__(self, x: int):
        return dict(self.values).get(x % self.p, self.spec.zero)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.values)

    def operator(self) -> ExactMatrix:
        """Matrix of g -> f g in F[F_p]: entry (i, j) = f(i - j)."""
        p = self.p
        vals = [self(x) for x in range(p)]
        return ExactMatrix.from_rows([[vals[(i - j) % p] for j in range(p)] for i in range(p)], self.spec, cols=p)


def multiplicity_at_one(coeffs: Sequence[int], l: int) -> int:
    """Multiplicity of 1 as a root of sum c_i x^i over F_l (coeffs low first)."""
    c = [x % l for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ValueError("the zero polynomial has no root multiplicity")
    mu = 0
    while True:
        # synthetic division by (x - 1)
        q = [0] * (len(c) - 1)
        acc = 0
        for i in range(len(c) - 1, 0, -1):
            acc = (acc + c[i]) % l
            q[i - 1] = acc
        if (acc + c[0]) % l:
            return mu
        mu += 1
        c = q


def rank_tf(f: SupportedFunction) -> int:
    """rank of T_f; in characteristic p also checked against p - mu(g)."""
    if not f.values:
        raise ValueError("f must be nonzero")
    r = rank(f.operator())
    if f.spec.characteristic == f.p:
        g = [0] * f.p
        for a, v in f.values:
            g[a] = v
        shortcut = f.p - multiplicity_at_one(g, f.p)
        if shortcut != r:
            raise AssertionError(f"rank T_f = {r} but p - mu(g) = {shortcut}")
    return r


def fourier_support_size(f: SupportedFunction) -> int:
    """|supp f^| with f^(b) = sum_x omega^(-b x) f(x)."""
    F, p = f.spec, f.p
    w = F.omega_powers
    count = 0
    for b in range(p):
        acc = F.zero
        for x, v in f.values:
            acc = F.add(acc, F.mul(w[-b * x % p], v))
        count += not F.is_zero(acc)
    return count


def uncertainty_direct(A: Sequence[int], p: int, F: FieldSpec, budget: int = DEFAULT_BUDGET) -> int:
    """u_F(A) without homology.

    Characteristic p: exhaustive minimum of rank T_f over nonzero f in F_p^A.
    Otherwise: p - K where K is the largest k with some rank M_beta < m.  A
    deficient beta stays deficient after dropping rows, so the deficient k form
    an initial segment and the search stops at the first k without one.
    """
    A = normalize_residues(A, p)
    m = len(A)
    if F.characteristic == p:
        if p**m > budget:
            raise BudgetExceeded(f"{p}^{m} candidates exceed the budget {budget}")
        best = p
        for vals in product(range(p), repeat=m):
            if any(vals):
                f = SupportedFunction.from_mapping(p, F, dict(zip(A, vals)))
                best = min(best, rank_tf(f))
        return best
    k = m
    while k < p and exists_deficient_beta(A, k, F):
        k += 1
    return p - (k - 1)


def uncertainty_via_homology(A: Sequence[int], p: int, F: FieldSpec) -> int:
    """p - max{k : H_{k-1}(X_{A,k}; F) != 0}.

    Sum complexes need 1 < k < p.  For k = 1 the complex is the point set A,
    whose reduced H_0 has dimension m - 1; if nothing is nonzero the maximum
    is taken to be 0 (u = p, e.g. for a single point).
    """
    A = normalize_residues(A, p)
    for k in range(p - 1, 1, -1):
        if top_betti(build(p, k, A), F):
            return p - k
    if len(A) > 1:
        return p - 1
    return p


def frenkel_bound_check(p: int, m: int, trials: int = 200, seed: int = 0, A: Sequence[int] | None = None,
                        exhaustive_limit: int = 20000) -> bool:
    """mu(g) <= m - 1 for g with support in an m-set, and the bound is attained.

    Uses every coefficient vector when p^m is small, random ones otherwise.
    Sharpness: a nonzero solution of the m - 1 Hasse-derivative conditions
    g^[j](1) = sum_i lambda_i C(a_i, j) = 0, j < m - 1, has mu(g) = m - 1.
    """
    rng = random.Random(seed)
    sets = [normalize_residues(A, p)] if A is not None else [sorted(rng.sample(range(p), m)) for _ in range(3)]
    for S in sets:
        def mu(vals):
            g = [0] * p
            for a, v in zip(S, vals):
                g[a] = v
            return multiplicity_at_one(g, p)

        if p ** len(S) <= exhaustive_limit:
            candidates = (v for v in product(range(p), repeat=len(S)) if any(v))
        else:
            candidates = (v for v in ([rng.randrange(p) for _ in S] for _ in range(trials)) if any(v))
        if any(mu(v) > len(S) - 1 for v in candidates):
            return False
        F = prime_field(p)
        conds = ExactMatrix.from_rows([[comb(a, j) % p for a in S] for j in range(len(S) - 1)], F, cols=len(S))
        if conds.rows == 0:
            witness = [1] * len(S)
        else:
            witness = kernel_basis(conds)[0]
        if mu(witness) != len(S) - 1:
            return False
    return True


def classical_bound_holds(u: int, p: int, m: int) -> bool:
    """u >= p / m."""
    return u * m >= p
