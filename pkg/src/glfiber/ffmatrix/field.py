"""Finite fields F_q, q = p^k, with elements encoded as integers 0..q-1.

An element c_0 + c_1 x + ... + c_{k-1} x^{k-1} of F_p[x]/(modulus) is
encoded as sum c_i p^i.  For k = 1 the encoding is the residue itself.
Multiplication goes through exp/log tables built from a primitive element.
"""

from __future__ import annotations

import json
from functools import cached_property, lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

MAX_Q = 2**20
TABLE_LIMIT = 256
LOG_TABLE_LIMIT = 2**16
MODULI_SCHEMA = "moduli/v1"


class DivisionByZero(ZeroDivisionError):
    pass


class FieldTooLarge(ValueError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    r = q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymod_p(a: list[int], m: Sequence[int], p: int) -> list[int]:
    # m monic
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _is_irreducible_p(m: Sequence[int], p: int) -> bool:
    """Rabin-style check: x^(p^k) = x mod m and gcd(x^(p^(k/r)) - x, m) = 1."""
    k = len(m) - 1
    if k == 1:
        return True
    if m[0] % p == 0:
        return False

    def mulmod(a: list[int], b: list[int]) -> list[int]:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _polymod_p(out, m, p)

    def powmod(a: list[int], e: int) -> list[int]:
        res = [1] + [0] * (k - 1)
        base = a
        while e:
            if e & 1:
                res = mulmod(res, base)
            base = mulmod(base, base)
            e >>= 1
        return res

    x = [0, 1] + [0] * (k - 2)
    if powmod(x, p**k) != x:
        return False
    primes = [r for r in range(2, k + 1) if k % r == 0 and all(r % d for d in range(2, r))]
    for r in primes:
        h = powmod(x, p ** (k // r))
        h = [(h[i] - x[i]) % p for i in range(k)]
        if _gcd_nontrivial(h, list(m), p):
            return False
    return True


def _gcd_nontrivial(a: list[int], b: list[int], p: int) -> bool:
    def trim(v: list[int]) -> list[int]:
        v = [x % p for x in v]
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while a:
        inv = pow(a[-1], p - 2, p)
        while len(b) >= len(a) and b:
            c = b[-1] * inv % p
            shift = len(b) - len(a)
            for i, x in enumerate(a):
                b[shift + i] = (b[shift + i] - c * x) % p
            b = trim(b)
        a, b = b, a
    return len(b) > 1


def minimal_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k whose (c_0..c_{k-1}) is least as sum c_i p^i."""
    for code in range(p**k):
        coeffs = [(code // p**i) % p for i in range(k)]
        if coeffs[0] == 0:
            continue
        m = tuple(coeffs) + (1,)
        if _is_irreducible_p(m, p):
            return m
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")


@lru_cache(maxsize=1)
def _shipped_moduli() -> dict[str, list[int]]:
    try:
        text = resources.files("glfiber.data").joinpath("moduli_v1.json").read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        return {}
    data = json.loads(text)
    if data.get("schema") != MODULI_SCHEMA:
        return {}
    return data["moduli"]


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    shipped = _shipped_moduli().get(f"{p}^{k}")
    if shipped is not None:
        return tuple(shipped)
    return minimal_modulus(p, k)


class FieldSpec:
    """The field F_q.  Instances are cached per q; use :func:`GF`."""

    def __init__(self, p: int, k: int, modulus: Sequence[int] | None = None) -> None:
        q = p**k
        if q > MAX_Q:
            raise FieldTooLarge(f"q = {q} exceeds the configured bound {MAX_Q}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = tuple(modulus) if modulus is not None else canonical_modulus(p, k)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible_p(self.modulus, p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{p}")

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    # -- encoding ------------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, ds: Sequence[int]) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(ds))

    def _pow_raw(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._polymul_raw(out, a)
            a = self._polymul_raw(a, a)
            e >>= 1
        return out

    def _polymul_raw(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    out[i + j] += x * y
        return self.from_digits(_polymod_p(out, self.modulus, self.p))

    @cached_property
    def _log_tables(self) -> tuple[int, list[int], list[int]]:
        q = self.q
        if self.k == 1:
            mul = lambda a, b: a * b % q  # noqa: E731
        else:
            mul = self._polymul_raw
        order = q - 1

        def power(a: int, e: int) -> int:
            out = 1
            while e:
                if e & 1:
                    out = mul(out, a)
                a = mul(a, a)
                e >>= 1
            return out

        primes = _prime_factors(order)
        g = next(
            (c for c in range(1, q) if all(power(c, order // r) != 1 for r in primes)),
            None,
        )
        if g is None:
            raise RuntimeError("no primitive element found")
        exp = [1] * order
        for i in range(1, order):
            exp[i] = mul(exp[i - 1], g)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        return g, exp, log

    @property
    def generator(self) -> int:
        """A fixed primitive element: the least code generating F_q^*."""
        return self._log_tables[0]

    @property
    def exp_table(self) -> list[int]:
        return self._log_tables[1]

    @property
    def log_table(self) -> list[int]:
        return self._log_tables[2]

    # -- arithmetic ----------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.q > LOG_TABLE_LIMIT:
            return self._polymul_raw(a, b)
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q > LOG_TABLE_LIMIT:
            return self._pow_raw(a, self.q - 2)
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e % (self.q - 1), self.p)
        if self.q > LOG_TABLE_LIMIT:
            return self._pow_raw(a, e % (self.q - 1))
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm to the base :attr:`generator`."""
        if a == 0:
            raise DivisionByZero("log of zero")
        return self.log_table[a]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # -- tables for vectorized work -----------------------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        self._check_table_size()
        a = np.arange(self.q)
        if self.k == 1:
            return (a[:, None] + a[None, :]) % self.p
        if self.p == 2:
            return a[:, None] ^ a[None, :]
        out = np.zeros((self.q, self.q), dtype=np.int64)
        for x in range(self.q):
            for y in range(self.q):
                out[x, y] = self.add(x, y)
        return out

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._check_table_size()
        a = np.arange(self.q)
        if self.k == 1:
            return (a[:, None] * a[None, :]) % self.p
        out = np.zeros((self.q, self.q), dtype=np.int64)
        for x in range(1, self.q):
            for y in range(1, self.q):
                out[x, y] = self.mul(x, y)
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    @cached_property
    def add_list(self) -> list[list[int]]:
        return self.add_table.tolist()

    @cached_property
    def mul_list(self) -> list[list[int]]:
        return self.mul_table.tolist()

    def _check_table_size(self) -> None:
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"dense tables are limited to q <= {TABLE_LIMIT}")

    # -- text ----------------------------------------------------------------
    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return ",".join(map(str, self.digits(a)))

    def parse(self, text: str) -> int:
        text = text.strip()
        if self.k > 1 and "," in text:
            return self.from_digits([int(x) for x in text.split(",")])
        v = int(text)
        if self.k == 1:
            return v % self.p
        if not 0 <= v < self.q:
            raise ValueError(f"element code {v} out of range for GF({self.q})")
        return v


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    p, k = factor_prime_power(q)
    return FieldSpec(p, k)
