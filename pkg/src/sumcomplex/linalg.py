"""Exact rank, kernels and Smith normal form.

Matrices are dense row-major lists.  Field matrices hold raw values of their
``FieldSpec``; integer matrices hold Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Any, Sequence

import numpy as np

from .fields import CYCLOTOMIC, EXTENSION, PRIME, FieldSpec


@dataclass(frozen=True)
class ExactMatrix:
    """Dense exact matrix.  ``ring`` is a ``FieldSpec`` or ``None`` for the integers."""

    rows: int
    cols: int
    entries: tuple[tuple[Any, ...], ...]
    ring: FieldSpec | None = None

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], ring: FieldSpec | None = None, cols: int | None = None):
        entries = tuple(tuple(r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries, ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: FieldSpec | None = None):
        z = 0 if ring is None else ring.zero
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)), ring)

    @classmethod
    def identity(cls, n: int, ring: FieldSpec | None = None):
        z, o = (0, 1) if ring is None else (ring.zero, ring.one)
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), ring)

    @property
    def is_integer(self) -> bool:
        return self.ring is None

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)), self.ring)

    def over(self, spec: FieldSpec) -> "ExactMatrix":
        """Image of an integer matrix in ``spec``."""
        if not self.is_integer:
            raise TypeError("only integer matrices can be reduced into a field")
        return ExactMatrix(self.rows, self.cols, tuple(tuple(spec.from_int(x) for x in r) for r in self.entries), spec)

    def apply(self, v: Sequence[Any]) -> list:
        """Matrix-vector product."""
        if self.ring is None:
            return [sum(a * b for a, b in zip(r, v)) for r in self.entries]
        F = self.ring
        out = []
        for r in self.entries:
            acc = F.zero
            for a, b in zip(r, v):
                if not F.is_zero(a) and not F.is_zero(b):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows or self.ring != other.ring:
            raise ValueError("incompatible matrices")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return ExactMatrix.from_rows([self.apply(c) for c in cols], self.ring, cols=self.rows).transpose()

    def is_zero(self) -> bool:
        if self.ring is None:
            return not any(any(r) for r in self.entries)
        return all(self.ring.is_zero(x) for r in self.entries for x in r)


@dataclass(frozen=True)
class SnfResult:
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)


# ---------------------------------------------------------------------------
# rank / kernel


def rank(M: ExactMatrix) -> int:
    """Exact rank of a field matrix.  Integer matrices are ranked over Q."""
    if M.rows == 0 or M.cols == 0:
        return 0
    F = M.ring
    if F is None:
        return integer_rank(M)
    if F.mode == PRIME or (F.mode == EXTENSION and F.degree == 1):
        return rank_mod_prime(M.entries, F.characteristic)
    if F.mode == CYCLOTOMIC:
        return _cyclotomic_rank(M.entries, F.p)
    return len(_echelon(M)[1])


def rank_over(M: ExactMatrix, spec: FieldSpec) -> int:
    """Rank of an integer matrix after mapping it into ``spec``.

    Integer entries live in the prime subfield and rank does not change under
    field extension, so only the characteristic matters.
    """
    if not M.is_integer:
        raise TypeError("rank_over expects an integer matrix")
    if M.rows == 0 or M.cols == 0:
        return 0
    if spec.characteristic == 0:
        return integer_rank(M)
    return rank_mod_prime(M.entries, spec.characteristic)


def rank_mod_prime(rows: Sequence[Sequence[int]], l: int) -> int:
    if not rows or not rows[0]:
        return 0
    if l >= 1 << 31:
        spec = FieldSpec(l, 2, PRIME)  # p is irrelevant for plain F_l arithmetic
        return len(_echelon(ExactMatrix.from_rows([[x % l for x in r] for r in rows], spec))[1])
    a = np.array(rows, dtype=object) % l
    a = a.astype(np.int64)
    n, m = a.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, l)
        a[r, c:] = a[r, c:] * inv % l
        below = a[r + 1 :, c].copy()
        if below.any():
            idx = np.nonzero(below)[0] + r + 1
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % l
        r += 1
    return r


def _echelon(M: ExactMatrix) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form over ``M.ring``; returns (rows, pivot columns)."""
    F = M.ring
    a = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if not F.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(x, inv) for x in a[r]]
        for i in range(M.rows):
            if i != r and not F.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [x if F.is_zero(y) else F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return a[:r], pivots


def kernel_basis(M: ExactMatrix) -> list[list[Any]]:
    """Basis of ``{v : M v = 0}`` over the field ``M.ring``."""
    if M.is_integer:
        raise TypeError("kernel_basis needs a field matrix; use .over(spec)")
    F = M.ring
    rows, pivots = _echelon(M) if M.rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [F.zero] * M.cols
        v[free] = F.one
        for row, pc in zip(rows, pivots):
            v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def _cyclotomic_rank(entries, p: int) -> int:
    """Rank over Q(omega_p) by fraction-free elimination in Z[omega]."""
    rows = []
    for r in entries:
        den = 1
        for x in r:
            for c in x:
                den = den * c.denominator // gcd(den, c.denominator)
        rows.append([tuple(int(c * den) for c in x) for x in r])
    return cyclotomic_integer_rank(rows, p)


def _zmul(a: tuple, b: tuple, p: int) -> tuple:
    if not any(a) or not any(b):
        return (0,) * (p - 1)
    c = [0] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    c[(i + j) % p] += x * y
    top = c[p - 1]
    return tuple(x - top for x in c[: p - 1])


def _zsub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def cyclotomic_integer_rank(rows: list[list[tuple[int, ...]]], p: int) -> int:
    """Rank of a matrix over Z[omega_p] (entries: integer coefficient tuples of
    length p - 1 in the basis 1, w, ..., w^(p-2)).

    Elimination is by cross-multiplication, which is valid in any integral
    domain; row contents are divided out to limit coefficient growth.
    """
    a = [list(r) for r in rows]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if any(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(r + 1, n):
            f = a[i][c]
            if not any(f):
                continue
            new = [_zsub(_zmul(pv, x, p), _zmul(f, y, p)) for x, y in zip(a[i][c:], a[r][c:])]
            g = 0
            for x in new:
                for v in x:
                    g = gcd(g, v)
            if g > 1:
                new = [tuple(v // g for v in x) for x in new]
            a[i] = a[i][:c] + new
        r += 1
        if r == n:
            break
    return r


def integer_rank(M: ExactMatrix) -> int:
    """Rank over Q of an integer matrix."""
    residual, units = _unit_pivot_reduce(M.entries, M.rows, M.cols)
    return units + _bareiss_rank(residual)


def _bareiss_rank(a: list[list[int]]) -> int:
    a = [list(r) for r in a if any(r)]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(r + 1, n):
            f = a[i][c]
            a[i] = [(pv * x - f * y) // prev for x, y in zip(a[i], a[r])]
        prev = pv
        r += 1
        if r == n:
            break
    return r


# ---------------------------------------------------------------------------
# Smith normal form


def _unit_pivot_reduce(entries, nrows: int, ncols: int) -> tuple[list[list[int]], int]:
    """Eliminate +-1 pivots (each contributes an invariant factor 1).

    Returns the dense residual matrix (rows and columns that never held a unit
    pivot) and the number of unit pivots.  The residual has the same
    nontrivial invariant factors as the input.  Pivots are chosen to minimise
    fill-in (Markowitz cost).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {j: set() for j in range(ncols)}
    for i, r in enumerate(entries):
        d = {j: x for j, x in enumerate(r) if x}
        if d:
            rows[i] = d
            for j in d:
                cols[j].add(i)
    units = 0
    candidates = {(i, j) for i, d in rows.items() for j, x in d.items() if x in (1, -1)}
    while candidates:
        i, j = min(candidates, key=lambda ij: ((len(rows[ij[0]]) - 1) * (len(cols[ij[1]]) - 1), ij))
        prow = rows.pop(i)
        u = prow[j]
        for jj in prow:
            cols[jj].discard(i)
            candidates.discard((i, jj))
        for ii in list(cols[j]):
            row = rows[ii]
            f = row[j] * u
            for jj, y in prow.items():
                v = row.get(jj, 0) - f * y
                if v:
                    if jj not in row:
                        cols[jj].add(ii)
                    row[jj] = v
                    if v in (1, -1):
                        candidates.add((ii, jj))
                    else:
                        candidates.discard((ii, jj))
                elif jj in row:
                    del row[jj]
                    cols[jj].discard(ii)
                    candidates.discard((ii, jj))
            if not row:
                del rows[ii]
        del cols[j]
        units += 1
    live_cols = sorted(j for j, s in cols.items() if s)
    pos = {j: k for k, j in enumerate(live_cols)}
    residual = []
    for i in sorted(rows):
        r = [0] * len(live_cols)
        for j, x in rows[i].items():
            r[pos[j]] = x
        residual.append(r)
    return residual, units


def unit_pivot_residual(M: ExactMatrix) -> tuple[ExactMatrix, int]:
    """The matrix left after eliminating all reachable unit pivots, and their count."""
    if not M.is_integer:
        raise TypeError("integer matrix expected")
    residual, units = _unit_pivot_reduce(M.entries, M.rows, M.cols)
    return ExactMatrix.from_rows(residual, cols=len(residual[0]) if residual else 0), units


def _dense_snf_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalise by unimodular row/column operations, pivoting on the entry
    of minimal absolute value.  Returns the nonzero diagonal (not yet a chain)."""
    a = [list(r) for r in a if any(r)]
    diag = []
    while a and a[0]:
        n, m = len(a), len(a[0])
        # minimal |entry| pivot
        best = None
        for i in range(n):
            for j in range(m):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        for r in a:
            r[0], r[pj] = r[pj], r[0]
        while True:
            pv = a[0][0]
            dirty = False
            for i in range(1, n):
                if a[i][0]:
                    q = a[i][0] // pv
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                    if a[i][0]:
                        dirty = True
            for j in range(1, m):
                if a[0][j]:
                    q = a[0][j] // pv
                    for r in a:
                        r[j] -= q * r[0]
                    if a[0][j]:
                        dirty = True
            if not dirty:
                break
            # a remainder smaller than the pivot exists: move it to the corner
            best = min(
                [(abs(a[i][0]), i, 0) for i in range(1, n) if a[i][0]]
                + [(abs(a[0][j]), 0, j) for j in range(1, m) if a[0][j]]
            )
            _, pi, pj = best
            if pi:
                a[0], a[pi] = a[pi], a[0]
            else:
                for r in a:
                    r[0], r[pj] = r[pj], r[0]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:] if any(r[1:])]
    return diag


def divisor_chain(diag: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a diagonal matrix with nonzero entries."""
    # multiplicities of each prime power per diagonal entry, then redistribute
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return tuple(d)


def smith_normal_form(M: ExactMatrix) -> SnfResult:
    """Invariant factors of an integer matrix (nonzero ones, as a divisibility chain)."""
    if not M.is_integer:
        raise TypeError("smith_normal_form expects an integer matrix")
    residual, units = _unit_pivot_reduce(M.entries, M.rows, M.cols)
    if not residual:
        return SnfResult((1,) * units)
    diag = _modular_snf_diagonal(residual)
    if diag is None:
        diag = _dense_snf_diagonal(residual)
    return SnfResult((1,) * units + divisor_chain(diag))


_CERT_PRIME = 2147483647  # 2^31 - 1


def _pivot_columns_mod(rows: Sequence[Sequence[int]], l: int) -> list[int]:
    a = (np.array(rows, dtype=object) % l).astype(np.int64)
    n, m = a.shape
    pivots, r = [], 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = a[r, c:] * pow(int(a[r, c]), -1, l) % l
        idx = np.nonzero(a[r + 1 :, c])[0] + r + 1
        if idx.size:
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % l
        pivots.append(c)
        r += 1
    return pivots


def _modular_snf_diagonal(a: list[list[int]]) -> list[int] | None:
    """Diagonal of the SNF computed modulo D = |a nonsingular maximal minor|.

    Only applies when the matrix has full column or full row rank (certified
    by its rank modulo a prime): then every invariant factor divides D and the
    elimination over Z/DZ recovers it as gcd(entry, D).  Returns None otherwise.
    """
    n, m = len(a), len(a[0])
    if n < m:
        a = [list(c) for c in zip(*a)]
        n, m = m, n
    rows = _pivot_columns_mod([list(c) for c in zip(*a)], _CERT_PRIME)
    if len(rows) < m:
        return None
    D = abs(determinant([a[i] for i in rows]))
    assert D, "a minor that is nonzero mod a prime cannot vanish over Z"
    if D == 1:
        return [1] * m
    b = [[x % D for x in r] for r in a]
    diag = []
    for t in range(m):
        while True:
            # gather the gcd of column t into the corner by row operations
            for i in range(t + 1, n):
                y = b[i][t]
                if not y:
                    continue
                x = b[t][t]
                g, s, u = _xgcd(x, y)
                xg, yg = x // g, y // g
                rt, ri = b[t], b[i]
                b[t] = [(s * v + u * w) % D for v, w in zip(rt, ri)]
                b[i] = [(xg * w - yg * v) % D for v, w in zip(rt, ri)]
            # then the gcd of row t by column operations
            dirty = False
            for j in range(t + 1, m):
                y = b[t][j]
                if not y:
                    continue
                x = b[t][t]
                g, s, u = _xgcd(x, y)
                xg, yg = x // g, y // g
                for r in b:
                    v, w = r[t], r[j]
                    r[t] = (s * v + u * w) % D
                    r[j] = (xg * w - yg * v) % D
                dirty = True
            if not dirty or not any(b[i][t] for i in range(t + 1, n)):
                break
        diag.append(gcd(b[t][t], D))
    return diag


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, s, u) with s x + u y = g = gcd(x, y) >= 0; (x, 1, 0) when x | y."""
    if x and y % x == 0:
        return x, 1, 0
    s0, s1, u0, u1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    return x, s0, u0


# ---------------------------------------------------------------------------
# brute-force oracles (small matrices only)


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    a = [list(r) for r in a]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def minor_gcd_divisors(M: ExactMatrix) -> tuple[int, ...]:
    """Invariant factors via d_1...d_i = gcd of all i x i minors."""
    a = M.entries
    out, prev = [], 1
    for size in range(1, min(M.rows, M.cols) + 1):
        g = 0
        for rs in combinations(range(M.rows), size):
            for cs in combinations(range(M.cols), size):
                g = gcd(g, determinant([[a[r][c] for c in cs] for r in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)

