"""Exact coefficient fields: finite fields holding a primitive p-th root of
unity (or F_p itself), and the cyclotomic field Q(omega_p).

Arithmetic is done on *raw* values through the ``FieldSpec`` methods so that the
linear algebra kernels avoid wrapper overhead:

* prime mode: ints in ``[0, l)``
* extension mode: ints in ``[0, l^d)`` whose base-l digits are the coefficients
  of a polynomial in ``F_l[x] / (f)``, lowest degree first
* cyclotomic mode: tuples of ``Fraction`` of length ``p - 1`` (coefficients of
  ``1, x, ..., x^(p-2)`` modulo ``1 + x + ... + x^(p-1)``)

``FieldElement`` wraps a raw value with operator overloading for the public API.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from typing import Any, Iterable

PRIME = "prime"
EXTENSION = "extension"
CYCLOTOMIC = "cyclotomic"

# Fields up to this size get exp/log tables.
_TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Smallest ``j >= 1`` with ``a^j = 1 (mod n)``."""
    a %= n
    if a == 0:
        raise FieldError(f"{a} is not invertible mod {n}")
    x, j = a, 1
    while x != 1:
        x = x * a % n
        j += 1
    return j


# ---------------------------------------------------------------------------
# Polynomials over F_l as coefficient lists, lowest degree first, no trailing 0.


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, l):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % l for i in range(n)]
    return _ptrim(out)


def _psub(a, b, l):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % l for i in range(n)]
    return _ptrim(out)


def _pmul(a, b, l):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % l for c in out])


def _pdivmod(a, b, l):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, l)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % l
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % l
        _ptrim(a)
    return _ptrim(q), a


def _pmonic(a, l):
    if not a:
        return a
    inv = pow(a[-1], -1, l)
    return [c * inv % l for c in a]


def _pgcd(a, b, l):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, l)[1]
    return _pmonic(a, l)


def _ppowmod(base, e, mod, l):
    result = [1]
    base = _pdivmod(base, mod, l)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, l), mod, l)[1]
        base = _pdivmod(_pmul(base, base, l), mod, l)[1]
        e >>= 1
    return result


def _equal_degree_split(f, d, l, rng):
    """Cantor-Zassenhaus: split a monic squarefree ``f`` whose irreducible
    factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _ptrim([rng.randrange(l) for _ in range(n)])
        if len(a) < 2:
            continue
        if l == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, acc = a, a
            for _ in range(d - 1):
                t = _pdivmod(_pmul(t, t, l), f, l)[1]
                acc = _padd(acc, t, l)
            g = _pgcd(f, acc, l)
        else:
            e = (l**d - 1) // 2
            g = _pgcd(f, _psub(_ppowmod(a, e, f, l), [1], l), l)
        if 0 < len(g) - 1 < n:
            h = _pdivmod(f, g, l)[0]
            return _equal_degree_split(g, d, l, rng) + _equal_degree_split(_pmonic(h, l), d, l, rng)


def cyclotomic_factors(l: int, p: int) -> list[tuple[int, ...]]:
    """All monic irreducible factors of ``Phi_p`` over ``F_l`` (``l != p``).

    Every factor has degree ``ord_l(p)``; results are sorted by coefficient
    tuple (lowest degree first).
    """
    phi = [1] * p
    d = multiplicative_order(l, p)
    # distinct-degree step: gcd(Phi_p, x^(l^d) - x) is all of Phi_p
    xq = _ppowmod([0, 1], l**d, phi, l)
    dd = _pgcd(phi, _psub(xq, [0, 1], l), l)
    assert len(dd) == len(phi), "Phi_p should split into degree-d factors"
    factors = _equal_degree_split(phi, d, l, random.Random(0))
    return sorted(tuple(f) for f in factors)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int
    p: int
    mode: str
    degree: int = 1
    modulus: tuple[int, ...] = field(default=(), compare=True)

    def __post_init__(self):
        l, p = self.characteristic, self.p
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if self.mode == PRIME:
            if not is_prime(l):
                raise FieldError(f"prime field needs prime characteristic, got {l}")
        elif self.mode == EXTENSION:
            if not is_prime(l) or l == p:
                raise FieldError(f"extension mode needs a prime l != p, got l={l}")
            if self.degree != multiplicative_order(l, p):
                raise FieldError("extension degree must equal ord_l(p)")
            if len(self.modulus) != self.degree + 1 or self.modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree d")
        elif self.mode == CYCLOTOMIC:
            if l != 0:
                raise FieldError("cyclotomic mode is characteristic 0")
        else:
            raise FieldError(f"unknown mode {self.mode!r}")

    def __repr__(self):
        if self.mode == PRIME:
            return f"F_{self.characteristic}"
        if self.mode == EXTENSION:
            return f"F_{self.characteristic}^{self.degree}"
        return f"Q(w_{self.p})"

    @property
    def order(self) -> int | None:
        """Number of elements, ``None`` in characteristic 0."""
        if self.mode == CYCLOTOMIC:
            return None
        return self.characteristic**self.degree

    @property
    def has_root_of_unity(self) -> bool:
        return self.characteristic != self.p

    # -- raw arithmetic ----------------------------------------------------

    @cached_property
    def zero(self):
        if self.mode == CYCLOTOMIC:
            return (Fraction(0),) * (self.p - 1)
        return 0

    @cached_property
    def one(self):
        if self.mode == CYCLOTOMIC:
            return (Fraction(1),) + (Fraction(0),) * (self.p - 2)
        return 1

    def is_zero(self, a) -> bool:
        if self.mode == CYCLOTOMIC:
            return not any(a)
        return a == 0

    def from_int(self, n: int):
        if self.mode == CYCLOTOMIC:
            return (Fraction(n),) + (Fraction(0),) * (self.p - 2)
        return n % self.characteristic

    def add(self, a, b):
        if self.mode == PRIME:
            return (a + b) % self.characteristic
        if self.mode == CYCLOTOMIC:
            return tuple(x + y for x, y in zip(a, b))
        if self.characteristic == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._from_digits([(x + y) % self.characteristic for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.mode == PRIME:
            return -a % self.characteristic
        if self.mode == CYCLOTOMIC:
            return tuple(-x for x in a)
        if self.characteristic == 2:
            return a
        return self._from_digits([-x % self.characteristic for x in self._digits(a)])

    def sub(self, a, b):
        if self.mode == PRIME:
            return (a - b) % self.characteristic
        if self.mode == CYCLOTOMIC:
            return tuple(x - y for x, y in zip(a, b))
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.mode == PRIME:
            return a * b % self.characteristic
        if self.mode == CYCLOTOMIC:
            return _cyclo_mul(a, b, self.p)
        if not a or not b:
            return 0
        if self._tables is not None:
            exp, log = self._tables
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return self._poly_to_int(_pdivmod(_pmul(self._digits(a), self._digits(b), self.characteristic),
                                          list(self.modulus), self.characteristic)[1])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.mode == PRIME:
            return pow(a, -1, self.characteristic)
        if self.mode == CYCLOTOMIC:
            return _cyclo_inv(a, self.p)
        if self._tables is not None:
            exp, log = self._tables
            return exp[-log[a] % (self.order - 1)]
        return self.power(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def random(self, rng: random.Random, bound: int = 5):
        """A random raw element; cyclotomic coefficients are small rationals."""
        if self.mode == CYCLOTOMIC:
            return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(self.p - 1))
        return rng.randrange(self.order)

    # -- root of unity ------------------------------------------------------

    @cached_property
    def omega(self):
        """Raw primitive p-th root of unity."""
        if not self.has_root_of_unity:
            raise FieldError(f"{self!r} has characteristic p; no primitive p-th root of unity")
        if self.mode == CYCLOTOMIC:
            if self.p == 2:
                return (Fraction(-1),)
            return (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.p - 3)
        if self.degree == 1:
            # modulus is x - r
            return -self.modulus[0] % self.characteristic
        return self.characteristic  # the class of x

    @cached_property
    def omega_powers(self) -> tuple:
        """``(omega^0, ..., omega^(p-1))`` as raw values."""
        out = [self.one]
        for _ in range(self.p - 1):
            out.append(self.mul(out[-1], self.omega))
        return tuple(out)

    # -- extension internals -----------------------------------------------

    def _digits(self, a: int) -> list[int]:
        l = self.characteristic
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, l)
            out.append(r)
        return out

    def _from_digits(self, ds: Iterable[int]) -> int:
        l = self.characteristic
        n = 0
        for c in reversed(list(ds)):
            n = n * l + c
        return n

    def _poly_to_int(self, poly: list[int]) -> int:
        return self._from_digits(list(poly) + [0] * (self.degree - len(poly)))

    @cached_property
    def _tables(self):
        if self.mode != EXTENSION or self.order > _TABLE_LIMIT:
            return None
        q, l, mod = self.order, self.characteristic, list(self.modulus)
        factors = prime_factors(q - 1)

        def slow_mul(a, b):
            return self._poly_to_int(_pdivmod(_pmul(self._digits(a), self._digits(b), l), mod, l)[1])

        def slow_pow(a, e):
            r = 1
            while e:
                if e & 1:
                    r = slow_mul(r, a)
                a = slow_mul(a, a)
                e >>= 1
            return r

        gen = next(g for g in range(2, q) if all(slow_pow(g, (q - 1) // r) != 1 for r in factors)) if q > 2 else 1
        exp = [0] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = slow_mul(x, gen)
        return exp, log

    @cached_property
    def _add_table(self):
        if self.mode != EXTENSION or self.characteristic == 2 or self.order > 1024:
            return None
        l = self.characteristic
        digits = [self._digits(a) for a in range(self.order)]
        return [[self._from_digits([(x + y) % l for x, y in zip(da, db)]) for db in digits] for da in digits]


def _cyclo_reduce(c: list, p: int) -> tuple:
    """Reduce a length-p cyclic coefficient list modulo Phi_p."""
    top = c[p - 1]
    return tuple(x - top for x in c[: p - 1])


def _cyclo_mul(a, b, p):
    c = [Fraction(0)] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    c[(i + j) % p] += x * y
    return _cyclo_reduce(c, p)


def _cyclo_conj(a, t, p):
    """Galois automorphism x -> x^t."""
    c = [Fraction(0)] * p
    for i, x in enumerate(a):
        c[i * t % p] += x
    return _cyclo_reduce(c, p)


def _cyclo_inv(a, p):
    # a^{-1} = (prod of the other conjugates) / norm(a)
    rest = (Fraction(1),) + (Fraction(0),) * (p - 2)
    for t in range(2, p):
        rest = _cyclo_mul(rest, _cyclo_conj(a, t, p), p)
    norm = _cyclo_mul(a, rest, p)
    assert not any(norm[1:]), "norm must be rational"
    return tuple(x / norm[0] for x in rest)


@cache
def make_field(l: int, p: int) -> FieldSpec:
    """Build the coefficient field of characteristic ``l`` used alongside ``F_p``.

    ``l == p`` gives the prime field ``F_p``, ``l == 0`` gives ``Q(omega_p)``
    and any other prime ``l`` gives ``F_{l^d}`` with ``d = ord_l(p)``, defined by
    the lexicographically smallest irreducible factor of ``Phi_p`` over ``F_l``.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if l == 0:
        return FieldSpec(0, p, CYCLOTOMIC, degree=p - 1)
    if not is_prime(l):
        raise FieldError(f"characteristic must be 0 or prime, got {l}")
    if l == p:
        return FieldSpec(l, p, PRIME)
    d = multiplicative_order(l, p)
    return FieldSpec(l, p, EXTENSION, degree=d, modulus=cyclotomic_factors(l, p)[0])


@cache
def prime_field(l: int, p: int | None = None) -> FieldSpec:
    """``F_l`` on its own; ``p`` defaults to ``l`` (it only matters for omega)."""
    return FieldSpec(l, l if p is None else p, PRIME)


class FieldElement:
    """Immutable element of a ``FieldSpec`` with the usual operators."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec: FieldSpec, raw: Any):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def of(cls, spec: FieldSpec, n: int) -> "FieldElement":
        return cls(spec, spec.from_int(n))

    def _coerce(self, other) -> Any:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError(f"mixing {self.spec!r} and {other.spec!r}")
            return other.raw
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self.spec.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self.spec.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self.spec.sub(o, self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self.spec.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self.spec.div(self.raw, o))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.raw))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.power(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.raw))

    def __bool__(self):
        return not self.spec.is_zero(self.raw)

    def __repr__(self):
        return f"{self.spec!r}({self.raw!r})"


def invert(a: FieldElement) -> FieldElement:
    if not a:
        raise ZeroDivisionError("cannot invert zero")
    return FieldElement(a.spec, a.spec.inv(a.raw))


def root_of_unity(spec: FieldSpec) -> FieldElement:
    """A primitive p-th root of unity, checked to have order exactly p."""
    w = FieldElement(spec, spec.omega)
    acc, j = w, 1
    while acc != 1:
        acc = acc * w
        j += 1
    if j != spec.p:
        raise FieldError(f"omega has order {j}, expected {spec.p}")
    return w


def defining_polynomial_divides_phi(spec: FieldSpec) -> bool:
    if spec.mode != EXTENSION:
        return True
    _, r = _pdivmod([1] * spec.p, list(spec.modulus), spec.characteristic)
    return not r


def polygcd(a: list[int], b: list[int], l: int) -> list[int]:
    """Monic gcd in ``F_l[x]`` (coefficients lowest first)."""
    return _pgcd(a, b, l)


def polydivmod(a: list[int], b: list[int], l: int) -> tuple[list[int], list[int]]:
    return _pdivmod(_ptrim(list(a)), _ptrim(list(b)), l)

