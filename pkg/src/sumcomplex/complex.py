"""Sum complexes X_{A,k}: the full (k-2)-skeleton of the simplex on F_p plus
every k-subset whose elements sum into A (mod p)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, TextIO

from .fields import is_prime
from .linalg import ExactMatrix

Face = tuple[int, ...]


def normalize_residues(A: Iterable[int], p: int) -> tuple[int, ...]:
    """Reduce mod p, sort, reject repeats."""
    reduced = [a % p for a in A]
    if len(set(reduced)) != len(reduced):
        raise ValueError(f"A has repeated elements mod {p}: {list(A)}")
    return tuple(sorted(reduced))


@dataclass(frozen=True)
class SumComplex:
    p: int
    k: int
    A: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.A)

    @cached_property
    def top_faces(self) -> tuple[Face, ...]:
        targets = set(self.A)
        return tuple(s for s in combinations(range(self.p), self.k) if sum(s) % self.p in targets)

    def faces(self, i: int) -> tuple[Face, ...]:
        """Sorted i-dimensional faces in lexicographic order (i = -1 is the empty face)."""
        if i == self.k - 1:
            return self.top_faces
        if -1 <= i < self.k - 1:
            return tuple(combinations(range(self.p), i + 1))
        return ()

    @property
    def dimension(self) -> int:
        return self.k - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(comb(self.p, i + 1) for i in range(self.k - 1)) + (len(self.top_faces),)

    @property
    def N(self) -> int:
        return len(self.top_faces)


def build(p: int, k: int, A: Iterable[int]) -> SumComplex:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not 1 < k < p:
        raise ValueError(f"need 1 < k < p, got k={k}, p={p}")
    A = normalize_residues(A, p)
    if not A:
        raise ValueError("A must be nonempty")
    X = SumComplex(p, k, A)
    assert X.N * p == len(A) * comb(p, k), "f-vector identity failed"
    return X


def boundary_matrix(X: SumComplex, i: int) -> ExactMatrix:
    """Integer matrix of the boundary map from i-faces to (i-1)-faces.

    Deleting the vertex in position j of a sorted face carries sign (-1)^j.
    ``i = 0`` gives the augmentation row.
    """
    if not 0 <= i <= X.k - 1:
        raise ValueError(f"boundary index {i} outside 0..{X.k - 1}")
    lower = X.faces(i - 1)
    index = {f: r for r, f in enumerate(lower)}
    upper = X.faces(i)
    rows = [[0] * len(upper) for _ in lower]
    for c, face in enumerate(upper):
        for j in range(len(face)):
            rows[index[face[:j] + face[j + 1 :]]][c] = -1 if j % 2 else 1
    return ExactMatrix.from_rows(rows, cols=len(upper))


def reduced_euler_characteristic(X: SumComplex) -> int:
    p, k, m = X.p, X.k, X.m
    direct = -1 + sum((-1) ** i * comb(p, i + 1) for i in range(k - 1)) + (-1) ** (k - 1) * X.N
    # closed form (-1)^(k-1) (m/k - 1) C(p-1, k-1), kept integral
    num = (m - k) * comb(p - 1, k - 1)
    assert num % k == 0
    closed = (-1) ** (k - 1) * (num // k)
    assert direct == closed, f"Euler characteristic mismatch {direct} != {closed}"
    return direct


def dump_faces(X: SumComplex, out: TextIO) -> None:
    """Header ``p k`` then one line per top face."""
    out.write(f"{X.p} {X.k}\n")
    for f in X.top_faces:
        out.write(" ".join(map(str, f)) + "\n")


def load_faces(src: TextIO) -> tuple[int, int, list[Face]]:
    lines = [ln.split() for ln in src if ln.strip()]
    p, k = map(int, lines[0])
    return p, k, [tuple(int(v) for v in ln) for ln in lines[1:]]
