"""Class labels, simplices, character labels, types and modes of substitution.

Class labels map irreducible polynomials f != t to partitions; character
labels map simplices (orbits of multiplication by q on Z/(q^s - 1)) to
partitions.  Both sides are enumerated independently so that the duality
between classes and characters can be checked by counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, TypeVar, Union

from .ffmatrix.classes import ClassLabel
from .ffmatrix.poly import IrredPoly, enumerate_irreducibles
from .partitions import EMPTY, Partition, TypeTau, enumerate_partitions


@dataclass(frozen=True, order=True)
class Simplex:
    """Orbit {k, qk, ..., q^{s-1}k} in Z/(q^s - 1), k the least element."""

    q: int
    s: int
    k: int

    def __post_init__(self) -> None:
        orbit = simplex_orbit(self.q, self.s, self.k)
        if len(orbit) != self.s:
            raise ValueError(f"{self.k} does not generate an {self.s}-simplex for q = {self.q}")
        if min(orbit) != self.k:
            raise ValueError("simplex representative must be the least orbit element")

    @property
    def degree(self) -> int:
        return self.s

    def orbit(self) -> tuple[int, ...]:
        return simplex_orbit(self.q, self.s, self.k)

    def to_json(self) -> dict:
        return {"s": self.s, "k": self.k}

    def __str__(self) -> str:
        return f"[{self.k}]_{self.s}"


def simplex_orbit(q: int, s: int, k: int) -> tuple[int, ...]:
    mod = q**s - 1
    seen = []
    x = k % mod if mod else 0
    for _ in range(s):
        if x in seen:
            break
        seen.append(x)
        x = x * q % mod
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def _simplices(q: int, s: int) -> tuple[Simplex, ...]:
    mod = q**s - 1
    out = []
    for k in range(mod):
        orbit = simplex_orbit(q, s, k)
        if len(orbit) == s and orbit[0] == k:
            out.append(Simplex(q, s, k))
    return tuple(out)


def enumerate_simplices(q: int, s: int) -> list[Simplex]:
    if s < 1:
        raise ValueError("simplex degree must be >= 1")
    return list(_simplices(q, s))


@dataclass(frozen=True)
class CharLabel:
    """Irreducible character of GL_n(F_q) as a map simplex -> partition."""

    q: int
    entries: tuple[tuple[Simplex, Partition], ...]

    def __post_init__(self) -> None:
        merged: dict[Simplex, Partition] = {}
        for sigma, lam in self.entries:
            if not lam:
                raise ValueError("character labels carry nonempty partitions only")
            if sigma in merged:
                raise ValueError(f"duplicate simplex {sigma}")
            merged[sigma] = lam
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @property
    def n(self) -> int:
        return sum(sigma.s * lam.size for sigma, lam in self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "entries": [{"simplex": sigma.to_json(), "partition": list(lam.parts)} for sigma, lam in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> CharLabel:
        q = data["q"]
        return cls(
            q,
            tuple(
                (Simplex(q, e["simplex"]["s"], e["simplex"]["k"]), Partition(tuple(e["partition"])))
                for e in data["entries"]
            ),
        )

    def __str__(self) -> str:
        return "{" + "; ".join(f"{s} -> ({lam})" for s, lam in self.entries) + "}"


K = TypeVar("K")


def _assignments(keys: Sequence[tuple[K, int]], n: int) -> Iterator[tuple[tuple[K, Partition], ...]]:
    """Maps key -> nonempty partition with sum degree(key) * |partition| = n."""

    def rec(i: int, remaining: int) -> Iterator[list[tuple[K, Partition]]]:
        if remaining == 0:
            yield []
            return
        if i == len(keys):
            return
        key, d = keys[i]
        yield from rec(i + 1, remaining)
        for size in range(1, remaining // d + 1):
            for lam in enumerate_partitions(size):
                for tail in rec(i + 1, remaining - d * size):
                    yield [(key, lam)] + tail

    for combo in rec(0, n):
        yield tuple(combo)


def enumerate_class_labels(n: int, q: int) -> list[ClassLabel]:
    if n < 1:
        raise ValueError("n must be >= 1")
    keys = [(f, f.degree) for d in range(1, n + 1) for f in enumerate_irreducibles(q, d)]
    return sorted((ClassLabel(q, combo) for combo in _assignments(keys, n)), key=_label_key)


def enumerate_char_labels(n: int, q: int) -> list[CharLabel]:
    if n < 1:
        raise ValueError("n must be >= 1")
    keys = [(sigma, sigma.s) for s in range(1, n + 1) for sigma in enumerate_simplices(q, s)]
    return sorted((CharLabel(q, combo) for combo in _assignments(keys, n)), key=_label_key)


def _label_key(label: Union[ClassLabel, CharLabel]) -> tuple:
    out = []
    for key, lam in label.entries:
        k = key.sort_key() if isinstance(key, IrredPoly) else (key.s, key.k)
        out.append((k, lam.parts))
    return tuple(out)


def type_of(label: Union[ClassLabel, CharLabel]) -> TypeTau:
    """tau(lambda) = product in Lambda of the degrees over the preimage of lambda.

    Class labels are conjugated from block sizes to Green's convention first.
    """
    acc: dict[Partition, Partition] = {}
    for key, lam in label.entries:
        if isinstance(label, ClassLabel):
            lam = lam.conjugate()
            d = key.degree
        else:
            d = key.s
        acc[lam] = acc.get(lam, EMPTY) * Partition((d,))
    return TypeTau.from_map(acc)


@dataclass(frozen=True)
class Mode:
    """A map f -> m(f) with prod_f p_{d(f)}(m(f)) = rho."""

    entries: tuple[tuple[IrredPoly, Partition], ...]

    def product(self) -> Partition:
        out = EMPTY
        for f, mu in self.entries:
            out = out * mu.p(f.degree)
        return out

    def nonempty(self) -> list[IrredPoly]:
        return [f for f, mu in self.entries if mu]

    def __str__(self) -> str:
        return "{" + "; ".join(f"{f} -> ({mu})" for f, mu in self.entries) + "}"


def _remove(multiset: dict[int, int], parts: Sequence[int]) -> dict[int, int] | None:
    out = dict(multiset)
    for x in parts:
        if out.get(x, 0) == 0:
            return None
        out[x] -= 1
    return out


def modes_of_substitution(rho: Partition, c: ClassLabel) -> list[Mode]:
    """All m with prod_f p_{d(f)}(m(f)) = rho and |m(f)| = |phi(f)| for every f."""
    if rho.size != c.n:
        return []
    entries = sorted(c.entries, key=lambda e: e[0].sort_key())
    out: list[Mode] = []

    def rec(i: int, left: dict[int, int], chosen: list[tuple[IrredPoly, Partition]]) -> None:
        if i == len(entries):
            if not any(left.values()):
                out.append(Mode(tuple(chosen)))
            return
        f, phi_f = entries[i]
        for mu in enumerate_partitions(phi_f.size):
            rest = _remove(left, mu.p(f.degree).parts)
            if rest is not None:
                chosen.append((f, mu))
                rec(i + 1, rest, chosen)
                chosen.pop()

    rec(0, rho.multiplicities(), [])
    return out


def max_eigenvalue_multiplicity(c: ClassLabel) -> int:
    """Largest algebraic multiplicity of an eigenvalue over the algebraic closure."""
    return max(lam.size for _, lam in c.entries)


def count_by_type(labels: Sequence[Union[ClassLabel, CharLabel]]) -> dict[TypeTau, int]:
    counts: dict[TypeTau, int] = {}
    for lab in labels:
        t = type_of(lab)
        counts[t] = counts.get(t, 0) + 1
    return dict(sorted(counts.items()))
