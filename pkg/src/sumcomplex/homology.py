"""Reduced homology of sum complexes by matrix reduction."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .complex import SumComplex, boundary_matrix
from .fields import FieldSpec
from .linalg import rank_over, smith_normal_form


@dataclass(frozen=True)
class HomologyProfile:
    """``field`` is ``None`` for integral homology, where ``reduced_betti`` are
    the free ranks and ``torsion_divisors`` the elementary divisors > 1 of the
    torsion in degree k-2 (the only degree that can carry torsion)."""

    field: FieldSpec | None
    reduced_betti: dict[int, int]
    torsion_divisors: tuple[int, ...] = ()

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion_divisors)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in self.reduced_betti.items())


def _betti_from_ranks(X: SumComplex, ranks: list[int]) -> dict[int, int]:
    # ranks[i] = rank of boundary from i-faces, i = 0..k-1; nothing above the top.
    ranks = ranks + [0]
    f = X.f_vector
    return {i: f[i] - ranks[i] - ranks[i + 1] for i in range(X.k)}


def betti(X: SumComplex, F: FieldSpec) -> HomologyProfile:
    """Reduced Betti numbers of X over F (augmented chain complex)."""
    ranks = [rank_over(boundary_matrix(X, i), F) for i in range(X.k)]
    return HomologyProfile(F, _betti_from_ranks(X, ranks))


def top_betti(X: SumComplex, F: FieldSpec) -> int:
    """dim H_{k-1}(X; F) = dim Z_{k-1}: there are no k-faces."""
    return X.N - rank_over(boundary_matrix(X, X.k - 1), F)


def torsion(X: SumComplex) -> HomologyProfile:
    """Integral homology: free ranks and the torsion of H_{k-2}."""
    top = smith_normal_form(boundary_matrix(X, X.k - 1))
    ranks = []
    for i in range(X.k - 1):
        snf = smith_normal_form(boundary_matrix(X, i))
        # full skeleton below the top: no torsion can come from here
        assert not snf.torsion, f"unexpected torsion in boundary {i}"
        ranks.append(snf.rank)
    ranks.append(top.rank)
    return HomologyProfile(None, _betti_from_ranks(X, ranks), top.torsion)
