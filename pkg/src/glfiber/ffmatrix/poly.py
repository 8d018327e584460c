"""Polynomials over F_q as coefficient tuples (lowest degree first)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import product
from typing import Sequence

from .field import FieldSpec, GF

Coeffs = tuple[int, ...]


def trim(a: Sequence[int]) -> Coeffs:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def pmul(F: FieldSpec, a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def pdivmod(F: FieldSpec, a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(trim(a))
    if len(rem) < len(b):
        return (), tuple(rem)
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = F.mul(rem[k + len(b) - 1], inv_lead)
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = F.sub(rem[k + j], F.mul(c, y))
    return trim(quot), trim(rem[: len(b) - 1])


def ppow(F: FieldSpec, a: Coeffs, e: int) -> Coeffs:
    out: Coeffs = (1,)
    for _ in range(e):
        out = pmul(F, out, a)
    return out


@total_ordering
@dataclass(frozen=True)
class IrredPoly:
    """Monic irreducible f != t over F_q; ``coeffs`` lowest degree first."""

    q: int
    coeffs: Coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def field(self) -> FieldSpec:
        return GF(self.q)

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other: IrredPoly) -> bool:  # type: ignore[override]
        return self.sort_key() < other.sort_key()

    def code(self) -> str:
        return ",".join(map(str, self.coeffs))

    @classmethod
    def from_code(cls, q: int, text: str) -> IrredPoly:
        coeffs = tuple(int(x) for x in text.split(","))
        f = cls(q, coeffs)
        if coeffs[-1] != 1 or not is_irreducible(GF(q), coeffs) or coeffs == (0, 1):
            raise ValueError(f"{text} is not a monic irreducible other than t over F_{q}")
        return f

    def __str__(self) -> str:
        return format_fq_poly(GF(self.q), self.coeffs)


def format_fq_poly(F: FieldSpec, coeffs: Coeffs, var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        cs = F.format(c) if F.is_prime else f"[{F.format(c)}]"
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


def is_irreducible(F: FieldSpec, coeffs: Coeffs) -> bool:
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for g in _irreducibles_raw(F.q, e):
            if not pdivmod(F, coeffs, g)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def _irreducibles_raw(q: int, d: int) -> tuple[Coeffs, ...]:
    """All monic irreducibles of degree d, including t when d = 1."""
    F = GF(q)
    reducible: set[Coeffs] = set()
    for e in range(1, d // 2 + 1):
        for f in _irreducibles_raw(q, e):
            for tail in product(range(q), repeat=d - e):
                reducible.add(pmul(F, f, tuple(tail) + (1,)))
    out = []
    for tail in product(range(q), repeat=d):
        f = tuple(tail) + (1,)
        if f not in reducible:
            out.append(f)
    out.sort(key=lambda c: tuple(reversed(c)))
    return tuple(out)


def enumerate_irreducibles(F: FieldSpec | int, d: int) -> list[IrredPoly]:
    """Monic irreducibles of degree d over F_q other than t, canonical order."""
    q = F if isinstance(F, int) else F.q
    if d < 1:
        raise ValueError("degree must be >= 1")
    return [IrredPoly(q, c) for c in _irreducibles_raw(q, d) if c != (0, 1)]


def count_irreducibles_formula(q: int, d: int) -> int:
    """Necklace count (1/d) sum mu(d/e) q^e, minus one for t when d = 1."""
    def mobius(n: int) -> int:
        out, m, p = 1, n, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out

    total = sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0) // d
    return total - 1 if d == 1 else total
