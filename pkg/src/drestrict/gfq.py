"""Arithmetic in GF(q), q = p^e, plus prime-power search.

Elements are integers in ``[0, q)``: the base-p digits of the index are the
coefficients of the residue polynomial, constant coefficient first.  So
index 0 is zero, index 1 is one, and for GF(4) = GF(2)[x]/(x^2+x+1) the
index 2 is ``x`` and 3 is ``x + 1``.

The modulus for e > 1 is the lexicographically smallest monic irreducible
polynomial of degree e, comparing coefficient tuples from the leading
coefficient down.  Moduli are stored in that order, e.g. ``(1, 1, 1)``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, NotPrimePower

__all__ = [
    "FieldSpec",
    "field_make",
    "is_prime",
    "is_prime_power",
    "prev_prime_power",
    "next_prime_power",
    "add",
    "sub",
    "neg",
    "mul",
    "inv",
    "tables",
]


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


def is_prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None."""
    if q < 2:
        return None
    p = None
    f = 2
    while f * f <= q:
        if q % f == 0:
            p = f
            break
        f += 1
    if p is None:
        return (q, 1)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def prev_prime_power(q: int) -> int:
    """Largest prime power <= q."""
    if q < 2:
        raise NotPrimePower(f"no prime power <= {q}")
    while is_prime_power(q) is None:
        q -= 1
    return q


def next_prime_power(q: int) -> int:
    """Smallest prime power >= q."""
    q = max(q, 2)
    while is_prime_power(q) is None:
        q += 1
    return q


# Polynomials over GF(p) as coefficient lists, constant term first.

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return r


def _monic_polys(p: int, degree: int):
    # constant term first, leading 1 appended
    for tail in itertools.product(range(p), repeat=degree):
        yield list(reversed(tail)) + [1]


def _is_irreducible(f: list[int], p: int) -> bool:
    e = len(f) - 1
    for deg in range(1, e // 2 + 1):
        for g in _monic_polys(p, deg):
            if not _poly_mod(f, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    q: int
    modulus: tuple[int, ...] | None = None  # leading coefficient first

    def __post_init__(self):
        if self.p ** self.e != self.q:
            raise NotPrimePower(f"{self.p}^{self.e} != {self.q}")
        if (self.e > 1) != (self.modulus is not None):
            raise ValueError("modulus must be present exactly when e > 1")

    @property
    def elements(self) -> range:
        return range(self.q)

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + c
        return a


@functools.lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    pe = is_prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, e = pe
    if e == 1:
        return FieldSpec(p, 1, q)
    for tail in itertools.product(range(p), repeat=e):
        f = list(reversed(tail)) + [1]
        if _is_irreducible(f, p):
            return FieldSpec(p, e, q, (1,) + tail)
    raise AssertionError("an irreducible polynomial of every degree exists")


def _slow_mul(spec: FieldSpec, a: int, b: int) -> int:
    p, e = spec.p, spec.e
    if e == 1:
        return a * b % p
    da, db = spec.digits(a), spec.digits(b)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(reversed(spec.modulus))
    r = _poly_mod(prod, mod, p)
    return spec.from_digits(r + [0] * (e - len(r)))


class _Tables:
    """Log/antilog tables plus vectorised helpers for one field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        q, p, e = spec.q, spec.p, spec.e
        self.exp = np.zeros(2 * (q - 1), dtype=np.int64)
        self.log = np.full(q, -1, dtype=np.int64)
        for g in range(2, q) if q > 2 else [1]:
            x, seen = 1, 0
            for i in range(q - 1):
                self.exp[i] = x
                x = _slow_mul(spec, x, g)
                if x == 1:
                    seen = i + 1
                    break
            if seen == q - 1:
                break
        self.exp[q - 1:] = self.exp[: q - 1]
        self.log[self.exp[: q - 1]] = np.arange(q - 1)
        if p == 2:
            self.neg = np.arange(q, dtype=np.int64)
        else:
            self.neg = np.array(
                [spec.from_digits((-c) % p for c in spec.digits(a)) for a in range(q)],
                dtype=np.int64,
            )
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[1:] = self.exp[(q - 1 - self.log[1:]) % (q - 1)]
        self.powers = p ** np.arange(e, dtype=np.int64)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p, e = self.spec.p, self.spec.e
        if e == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self.powers:
            out += ((a // w % p + b // w % p) % p) * w
        return out

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.spec.e == 1:
            return a * b % self.spec.p
        nz = (a != 0) & (b != 0)
        idx = np.where(nz, self.log[a] + self.log[b], 0)
        return np.where(nz, self.exp[idx], 0)


@functools.lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> _Tables:
    return _Tables(spec)


def add(a: int, b: int, spec: FieldSpec) -> int:
    return int(tables(spec).add(a, b))


def neg(a: int, spec: FieldSpec) -> int:
    return int(tables(spec).neg[a])


def sub(a: int, b: int, spec: FieldSpec) -> int:
    t = tables(spec)
    return int(t.add(a, t.neg[b]))


def mul(a: int, b: int, spec: FieldSpec) -> int:
    return int(tables(spec).mul(a, b))


def inv(a: int, spec: FieldSpec) -> int:
    if a == 0:
        raise DivisionByZero("0 has no inverse")
    return int(tables(spec).inv[a])
