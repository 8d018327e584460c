"""Partitions, the free monoid they form, and types.

A partition is stored as a non-increasing tuple of positive parts.  The
monoid product is multiset union of parts, with the empty partition as
identity.  A type maps nonempty partitions to partitions with finite
support; types classify both the conjugacy classes and the irreducible
characters of GL_n(F_q).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from math import factorial
from typing import Iterable, Iterator

MAX_PARTITION_SIZE = 64


@total_ordering
@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any((not isinstance(x, int)) or x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            parts = tuple(sorted(parts, reverse=True))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> Partition:
        parts: list[int] = []
        for part, count in mult.items():
            parts.extend([part] * count)
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read "2,1,1", "1^2 2", "(2,1)" or "0"/"" for the empty partition."""
        text = text.strip().strip("()[]").strip()
        if text in ("", "0", "∅", "empty"):
            return cls(())
        if "^" in text or (" " in text and "," not in text):
            parts: list[int] = []
            for token in text.split():
                if "^" in token:
                    base, exp = token.split("^")
                    parts.extend([int(base)] * int(exp.strip("{}")))
                else:
                    parts.append(int(token))
            return cls(tuple(sorted(parts, reverse=True)))
        return cls(tuple(sorted((int(x) for x in re.split(r"[,\s]+", text) if x), reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __lt__(self, other: Partition) -> bool:
        return self.parts < other.parts

    def __mul__(self, other: Partition) -> Partition:
        return Partition(tuple(sorted(self.parts + other.parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def n_lambda(self) -> int:
        return sum(x * (x - 1) // 2 for x in self.conjugate().parts)

    def z(self) -> int:
        """Order of the centralizer in S_n of a permutation with this cycle type."""
        out = 1
        for part, count in Counter(self.parts).items():
            out *= part**count * factorial(count)
        return out

    def p(self, s: int) -> Partition:
        """The monoid endomorphism sending each generator r to rs."""
        if s < 1:
            raise ValueError("p_s needs s >= 1")
        return Partition(tuple(s * x for x in self.parts))

    def exponent_str(self) -> str:
        """Exponent notation, e.g. 1^2 2 for (2, 1, 1)."""
        if not self.parts:
            return "∅"
        tokens = []
        for part, count in sorted(Counter(self.parts).items()):
            tokens.append(str(part) if count == 1 else f"{part}^{count}")
        return " ".join(tokens)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "∅"


EMPTY = Partition(())


def ones(m: int) -> Partition:
    return Partition((1,) * m)


def one_m_minus_2_two(m: int) -> Partition:
    """The partition 1^{m-2} 2 (transvection block sizes)."""
    if m < 2:
        raise ValueError("1^{m-2}2 needs m >= 2")
    return Partition((2,) + (1,) * (m - 2))


def _partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_desc(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, reverse-lexicographic: (n) first, 1^n last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_PARTITION_SIZE:
        raise ValueError(f"partition size {n} exceeds configured bound {MAX_PARTITION_SIZE}")
    return list(_partitions_cached(n))


@total_ordering
@dataclass(frozen=True)
class TypeTau:
    """Finitely supported map from nonempty partitions to partitions.

    ``entries`` holds the (lambda, tau(lambda)) pairs with nonempty values,
    sorted by lambda.
    """

    entries: tuple[tuple[Partition, Partition], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Partition, Partition] = {}
        for lam, mu in self.entries:
            if not lam:
                raise ValueError("a type is defined on nonempty partitions only")
            if not mu:
                continue
            if lam in merged:
                raise ValueError(f"duplicate key {lam} in type")
            merged[lam] = mu
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def from_map(cls, mapping: dict[Partition, Partition]) -> TypeTau:
        return cls(tuple(mapping.items()))

    @classmethod
    def parse(cls, text: str) -> TypeTau:
        """Read semicolon-separated "lambda->mu" pairs, e.g. "1^2->1; 2->1"."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            lam, mu = chunk.split("->")
            pairs.append((Partition.parse(lam), Partition.parse(mu)))
        return cls(tuple(pairs))

    def __lt__(self, other: TypeTau) -> bool:
        return self._key() < other._key()

    def _key(self) -> tuple:
        return tuple((lam.parts, mu.parts) for lam, mu in self.entries)

    def __getitem__(self, lam: Partition) -> Partition:
        for key, mu in self.entries:
            if key == lam:
                return mu
        return EMPTY

    def __mul__(self, other: TypeTau) -> TypeTau:
        merged = dict(self.entries)
        for lam, mu in other.entries:
            merged[lam] = merged.get(lam, EMPTY) * mu
        return TypeTau.from_map(merged)

    @property
    def degree(self) -> int:
        return sum(lam.size * mu.size for lam, mu in self.entries)

    @property
    def dim(self) -> int:
        return sum(mu.size for _, mu in self.entries)

    def is_primary(self) -> bool:
        return len(self.entries) == 1 and len(self.entries[0][1]) == 1

    def primary_factors(self) -> list[TypeTau]:
        return [
            TypeTau(((lam, Partition((s,))),))
            for lam, mu in self.entries
            for s in mu.parts
        ]

    def __str__(self) -> str:
        if not self.entries:
            return "∅"
        return "; ".join(f"{lam.exponent_str()}->{mu.exponent_str()}" for lam, mu in self.entries)


def product(types: Iterable[TypeTau]) -> TypeTau:
    out = TypeTau()
    for t in types:
        out = out * t
    return out


@lru_cache(maxsize=None)
def _types_cached(n: int) -> tuple[TypeTau, ...]:
    # A type is a multiset of primary types (lambda, s) of weight |lambda|*s.
    primaries = [
        (lam, s)
        for size in range(1, n + 1)
        for lam in enumerate_partitions(size)
        for s in range(1, n // size + 1)
    ]
    primaries.sort(key=lambda ls: (ls[0].parts, ls[1]))
    found: set[TypeTau] = set()

    def extend(start: int, remaining: int, chosen: list[tuple[Partition, int]]) -> None:
        if remaining == 0:
            acc: dict[Partition, list[int]] = {}
            for lam, s in chosen:
                acc.setdefault(lam, []).append(s)
            found.add(TypeTau(tuple((lam, Partition(tuple(ss))) for lam, ss in acc.items())))
            return
        for i in range(start, len(primaries)):
            lam, s = primaries[i]
            w = lam.size * s
            if w <= remaining:
                chosen.append((lam, s))
                extend(i, remaining - w, chosen)
                chosen.pop()

    extend(0, n, [])
    return tuple(sorted(found))


def enumerate_types(n: int) -> list[TypeTau]:
    """All types of degree n, sorted lexicographically by entry list."""
    if n < 1:
        raise ValueError("types have degree >= 1")
    return list(_types_cached(n))
