"""Cross-check sweeps: each suite computes the same quantity by independent
routes over a grid of instances and records any disagreement."""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from . import groupalg, spectral
from .complex import boundary_matrix, build, reduced_euler_characteristic
from .fields import is_prime, make_field, prime_field
from .homology import betti, top_betti, torsion
from .linalg import ExactMatrix, minor_gcd_divisors, rank_over, smith_normal_form
from .uncertainty import (
    BudgetExceeded,
    frenkel_bound_check,
    multiplicity_at_one,
    uncertainty_direct,
    uncertainty_via_homology,
)


class Counterexample(AssertionError):
    def __init__(self, suite: str, instance: dict):
        super().__init__(f"{suite}: {instance}")
        self.suite = suite
        self.instance = instance


@dataclass
class Deadline:
    seconds: float | None = None
    start: float = field(default_factory=time.monotonic)

    def check(self):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(f"time budget of {self.seconds}s exceeded")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **instance):
        self.checks += 1
        if not ok:
            self.failures.append(instance)

    def as_dict(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "failures": len(self.failures), "passed": self.passed}


def subsets(p: int, max_m: int, min_m: int = 1) -> Iterable[tuple[int, ...]]:
    for m in range(min_m, min(max_m, p) + 1):
        yield from combinations(range(p), m)


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- suites -----------------------------------------------------------------


def _theorem2_instance(args):
    p, k, A = args
    X = build(p, k, A)
    b = betti(X, prime_field(p)).reduced_betti
    return (
        b[k - 1] == spectral.dim_h_char_p(p, k, A)
        and b[k - 2] == spectral.dim_h_lower_char_p(p, k, A)
        and all(b[i] == 0 for i in range(k - 2))
        and sum((-1) ** i * v for i, v in b.items()) == reduced_euler_characteristic(X),
        b,
    )


def theorem2(ps=(5, 7, 11), ks=(2, 3), max_m=5, jobs=1, deadline: Deadline | None = None) -> SuiteResult:
    """Matrix-reduction homology over F_p against the closed form."""
    res = SuiteResult("theorem2")
    for p in ps:
        for k in ks:
            if not 1 < k < p:
                continue
            (deadline or Deadline()).check()
            items = [(p, k, A) for A in subsets(p, max_m)]
            for (_, _, A), (ok, b) in zip(items, _pmap(_theorem2_instance, items, jobs)):
                res.record(ok, p=p, k=k, A=list(A), field=f"F_{p}", betti=b)
    return res


def _theorem1_instance(args):
    p, k, A, l = args
    F = make_field(l, p)
    h = top_betti(build(p, k, A), F)
    f = spectral.dim_h_semisimple(p, k, A, F)
    return h == f, h, f


def theorem1(ps=(5, 7, 11), ks=(2, 3), chars=(2, 3), max_m=4, jobs=1, deadline: Deadline | None = None) -> SuiteResult:
    """Homology over F_l (l != p) against the rank-sum formula."""
    res = SuiteResult("theorem1")
    for p in ps:
        for k in ks:
            if not 1 < k < p:
                continue
            for l in chars:
                if l == p:
                    continue
                (deadline or Deadline()).check()
                items = [(p, k, A, l) for A in subsets(p, max_m)]
                for (_, _, A, _), (ok, h, f) in zip(items, _pmap(_theorem1_instance, items, jobs)):
                    res.record(ok, p=p, k=k, A=list(A), char=l, homology=h, formula=f)
    return res


def chebotarev(ps=(5, 7, 11, 13), ks=(1, 2, 3, 4), exhaustive_max_p=7, samples=50, seed=0,
               deadline: Deadline | None = None) -> SuiteResult:
    """Every M_beta has rank min(k, m) in characteristic 0."""
    res = SuiteResult("chebotarev")
    rng = random.Random(seed)
    for p in ps:
        F = make_field(0, p)
        for k in ks:
            if k >= p:
                continue
            (deadline or Deadline()).check()
            if p <= exhaustive_max_p:
                family = list(combinations(range(p), k))
            else:
                family = [tuple(sorted(rng.sample(range(p), k))) for _ in range(samples)]
            for A in family:
                deficient = [b for b in spectral.betas(p, k) if spectral.beta_rank(A, b, F) != min(k, len(A))]
                res.record(not deficient, p=p, k=k, A=list(A), deficient=[list(b) for b in deficient[:3]])
    return res


def rp2() -> SuiteResult:
    """The p=7, A={0,1,3}, k=3 complex: homotopy type of RP^2."""
    res = SuiteResult("rp2")
    X = build(7, 3, [0, 1, 3])
    T = torsion(X)
    res.record(T.torsion_divisors == (2,), check="torsion", value=list(T.torsion_divisors))
    b2 = betti(X, make_field(2, 7)).reduced_betti
    res.record((b2[1], b2[2]) == (1, 1), check="F_2 betti", value=b2)
    for l in (7, 0):
        b = betti(X, make_field(l, 7)).reduced_betti
        res.record(not any(b.values()), check=f"char {l} betti", value=b)
    res.record(X.f_vector[2] == 15, check="f_2", value=X.f_vector[2])
    res.record(reduced_euler_characteristic(X) == 0, check="euler")
    return res


def _tao_instance(args):
    p, A = args
    return uncertainty_direct(A, p, make_field(0, p))


def tao(ps=(2, 3, 5, 7, 11), jobs=1, deadline: Deadline | None = None) -> SuiteResult:
    """u over characteristic 0 equals p - |A| + 1 for every nonempty A."""
    res = SuiteResult("tao")
    for p in ps:
        (deadline or Deadline()).check()
        items = [(p, A) for A in subsets(p, p)]
        for (_, A), u in zip(items, _pmap(_tao_instance, items, jobs)):
            res.record(u == p - len(A) + 1, p=p, A=list(A), u=u)
    return res


def f7_char2_example() -> SuiteResult:
    """A={0,1,3} in F_7 over the char-2 splitting field has u = 4."""
    res = SuiteResult("f7-char2-example")
    F = make_field(2, 7)
    direct = uncertainty_direct([0, 1, 3], 7, F)
    via = uncertainty_via_homology([0, 1, 3], 7, F)
    res.record(direct == 4 and via == 4, direct=direct, homology=via)
    return res


def homology_route(ps=(2, 3, 5, 7), chars=(0,), deadline: Deadline | None = None) -> SuiteResult:
    """uncertainty_via_homology agrees with uncertainty_direct."""
    res = SuiteResult("uncertainty-homology")
    for p in ps:
        for l in chars:
            F = make_field(l, p)
            for A in subsets(p, p):
                (deadline or Deadline()).check()
                d, h = uncertainty_direct(A, p, F), uncertainty_via_homology(A, p, F)
                res.record(d == h and d * len(A) >= p and d >= p - max(A), p=p, char=l, A=list(A), direct=d, homology=h)
    return res


def charp_uncertainty(ps=(2, 3, 5, 7), max_m=3, deadline: Deadline | None = None) -> SuiteResult:
    """Characteristic p: exhaustive min rank T_f = p - m + 1 = homology route =
    multiplicity route."""
    res = SuiteResult("charp-uncertainty")

    for p in ps:
        F = prime_field(p)
        for A in subsets(p, max_m):
            (deadline or Deadline()).check()
            m = len(A)
            direct = uncertainty_direct(A, p, F)
            via = uncertainty_via_homology(A, p, F)
            max_mu = 0
            for vals in product(range(p), repeat=m):
                if any(vals):
                    g = [0] * p
                    for a, v in zip(A, vals):
                        g[a] = v
                    max_mu = max(max_mu, multiplicity_at_one(g, p))
            res.record(direct == via == p - max_mu == p - m + 1, p=p, A=list(A), direct=direct, homology=via,
                       multiplicity=p - max_mu)
    return res


def frenkel(ps=(5, 7, 11, 13), ms=(1, 2, 3, 4), trials=200, seed=0) -> SuiteResult:
    res = SuiteResult("frenkel")
    for p in ps:
        for m in ms:
            if m <= p:
                res.record(frenkel_bound_check(p, m, trials=trials, seed=seed), p=p, m=m)
    return res


def vandermonde(ps=(2, 3, 5, 7), ks=(1, 2, 3), schur_ps=(2, 3, 5, 7, 11, 13), schur_ks=(1, 2, 3, 4),
                deadline: Deadline | None = None) -> SuiteResult:
    """det N_beta = s_lambda(x) D_0(x) in F_p[G], and s_lambda(1..1) != 0 mod p."""
    res = SuiteResult("vandermonde")
    for p in ps:
        for k in ks:
            if k > p:
                continue
            D0 = groupalg.d_zero(p, k)
            for b in spectral.betas(p, k):
                (deadline or Deadline()).check()
                w = groupalg.schur_element(b, p)
                lhs = groupalg.vandermonde_det(b, p)
                res.record(lhs == w * D0, check="identity", p=p, k=k, beta=list(b))
                res.record(w.augmentation() == groupalg.schur_at_ones(b, p), check="augmentation", p=p, k=k, beta=list(b))
    for p in schur_ps:
        for k in schur_ks:
            if k > p:
                continue
            for b in spectral.betas(p, k):
                try:
                    ok = groupalg.schur_at_ones(b, p) != 0
                except ArithmeticError:
                    ok = False
                res.record(ok, check="unit", p=p, k=k, beta=list(b))
    return res


def skew_annihilator(cases=((5, 2), (7, 2), (5, 3))) -> SuiteResult:
    res = SuiteResult("skew")
    for p, k in cases:
        dim = groupalg.d_zero_kernel_on_skew(p, k)
        res.record(dim == 0, p=p, k=k, kernel=dim)
    return res


def gsets(max_entry=8, max_k=4) -> SuiteResult:
    res = SuiteResult("gsets")
    for k in range(1, max_k + 1):
        for alpha in combinations(range(max_entry + 1), k):
            res.record(groupalg.g_sets_equal(alpha), alpha=list(alpha))
    return res


def group_algebra(ps=(5, 7), ks=(2, 3), max_m=4, chars=(0, 2), deadline: Deadline | None = None) -> SuiteResult:
    """dim H(A) from the group algebra equals dim H_{k-1}, and
    m C(p,k) - sum rank M_beta = p dim H_{k-1}."""
    res = SuiteResult("group-algebra")
    for p in ps:
        for k in ks:
            for l in chars:
                if l == p:
                    continue
                F = make_field(l, p)
                for A in subsets(p, max_m):
                    (deadline or Deadline()).check()
                    h = top_betti(build(p, k, A), F)
                    ha = groupalg.h_of_a_dimension(p, k, A, F)
                    r = spectral.dim_r(p, k, A, F)
                    res.record(ha == h and r == p * h, p=p, k=k, A=list(A), char=l, homology=h, h_of_a=ha, dim_r=r)
    return res


def snf_oracle(count=200, max_size=6, seed=0) -> SuiteResult:
    res = SuiteResult("snf")
    rng = random.Random(seed)
    for _ in range(count):
        n, m = rng.randint(1, max_size), rng.randint(1, max_size)
        M = ExactMatrix.from_rows([[rng.randint(-6, 6) if rng.random() < 0.7 else 0 for _ in range(m)] for _ in range(n)],
                                  cols=m)
        a, b = smith_normal_form(M).divisors, minor_gcd_divisors(M)
        res.record(a == b, matrix=[list(r) for r in M.entries], snf=list(a), oracle=list(b))
    return res


_SMALL_PRIME_LIMIT = 1000
_SMALL_PRIME_CHECKS = 3


def scan_instance(p: int, k: int, A: Sequence[int]) -> dict:
    """Torsion of H_{k-2}, Q and F_p Betti numbers, and their consistency."""
    X = build(p, k, A)
    top = boundary_matrix(X, k - 1)
    snf = smith_normal_form(top)
    chi = reduced_euler_characteristic(X)
    rank_q = snf.rank
    rank_p = rank_over(top, prime_field(p))
    lower = boundary_matrix(X, k - 2)
    lower_q = rank_over(lower, make_field(0, p))
    lower_p = rank_over(lower, prime_field(p))
    f = X.f_vector
    bq_top, bp_top = X.N - rank_q, X.N - rank_p
    bq_low, bp_low = f[k - 2] - lower_q - rank_q, f[k - 2] - lower_p - rank_p
    tors_p = sum(1 for d in snf.torsion if d % p == 0)
    T = snf.torsion_order
    ok = (
        rank_p <= rank_q
        and rank_q - rank_p == tors_p  # universal coefficients in the top two degrees
        and bp_top == bq_top + tors_p
        and bp_low == bq_low + tors_p
        and (-1) ** (k - 1) * bq_top + (-1) ** (k - 2) * bq_low == chi
        and bp_top == spectral.dim_h_char_p(p, k, A)
    )
    # same universal-coefficient check at small primes dividing the torsion
    checked = [l for l in primes_in(2, _SMALL_PRIME_LIMIT) if T % l == 0 and l != p][:_SMALL_PRIME_CHECKS]
    for l in checked:
        extra = sum(1 for d in snf.torsion if d % l == 0)
        ok = ok and X.N - rank_over(top, prime_field(l, p)) == bq_top + extra
    log_t = math.log(T) if T > 1 else 0.0
    return {
        "p": p,
        "k": k,
        "A": list(A),
        "N": X.N,
        "divisors": [str(d) for d in snf.torsion],
        "torsion_order": str(T),
        "log_torsion_per_face": round(log_t / X.N, 6),
        "growth_base": round(math.exp(log_t / X.N), 6),
        "betti_Q": [bq_low, bq_top],
        "betti_Fp": [bp_low, bp_top],
        "euler": chi,
        "checked_primes": [p] + checked,
        "consistent": ok,
    }


def primes_in(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if is_prime(n)]


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "theorem1": theorem1,
    "theorem2": theorem2,
    "chebotarev": chebotarev,
    "rp2": rp2,
    "tao": tao,
    "f7-char2-example": f7_char2_example,
    "uncertainty-homology": homology_route,
    "charp-uncertainty": charp_uncertainty,
    "frenkel": frenkel,
    "vandermonde": vandermonde,
    "skew": skew_annihilator,
    "gsets": gsets,
    "group-algebra": group_algebra,
    "snf": snf_oracle,
}
