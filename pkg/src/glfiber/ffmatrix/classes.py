"""Conjugacy classes of GL_n(F_q) as maps from irreducible polynomials to partitions.

Internally the partition attached to f lists the sizes of the Jordan-type
blocks of the f-primary part (identity -> 1^n, transvection -> 1^{n-2}2).
Green's printed convention is the conjugate partition; ``convention="green"``
selects it at the text and JSON boundaries and in type computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable

from ..partitions import Partition
from .field import GF, FieldSpec
from .linalg import (
    MatrixFq,
    Rows,
    SingularMatrix,
    block_diag,
    charpoly,
    companion,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_rank,
    poly_of_matrix,
)
from .poly import IrredPoly, enumerate_irreducibles, pdivmod, ppow

BLOCKS = "blocks"
GREEN = "green"


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ClassLabel:
    """Conjugacy class of GL_n(F_q); ``entries`` sorted by polynomial."""

    q: int
    entries: tuple[tuple[IrredPoly, Partition], ...]

    def __post_init__(self) -> None:
        merged: dict[IrredPoly, Partition] = {}
        for f, lam in self.entries:
            if f.q != self.q:
                raise ValueError("polynomial over the wrong field")
            if not lam:
                raise ValueError("class labels carry nonempty partitions only")
            if f in merged:
                raise ValueError(f"duplicate polynomial {f}")
            merged[f] = lam
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @property
    def n(self) -> int:
        return sum(f.degree * lam.size for f, lam in self.entries)

    def partition(self, f: IrredPoly) -> Partition:
        for g, lam in self.entries:
            if g == f:
                return lam
        return Partition(())

    def as_dict(self) -> dict[IrredPoly, Partition]:
        return dict(self.entries)

    def is_central(self) -> bool:
        return len(self.entries) == 1 and self.entries[0][0].degree == 1 and set(self.entries[0][1].parts) == {1}

    def is_primary(self) -> bool:
        return len(self.entries) == 1

    def to_json(self, convention: str = GREEN) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "entries": [
                {
                    "f": f.code(),
                    "partition": list((lam.conjugate() if convention == GREEN else lam).parts),
                    "convention": convention,
                }
                for f, lam in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> ClassLabel:
        q = data["q"]
        entries = []
        for e in data["entries"]:
            lam = Partition(tuple(e["partition"]))
            if e.get("convention", GREEN) == GREEN:
                lam = lam.conjugate()
            entries.append((IrredPoly.from_code(q, e["f"]), lam))
        return cls(q, tuple(entries))

    def format(self, convention: str = GREEN) -> str:
        parts = []
        for f, lam in self.entries:
            shown = lam.conjugate() if convention == GREEN else lam
            parts.append(f"{f} -> ({','.join(map(str, shown.parts))})")
        return "{" + "; ".join(parts) + "}"

    def __str__(self) -> str:
        return self.format(BLOCKS)


def factor_charpoly(F: FieldSpec, cp: tuple[int, ...]) -> list[tuple[IrredPoly, int]]:
    """Trial division against enumerated irreducibles of degree <= n."""
    n = len(cp) - 1
    out = []
    rest = cp
    for d in range(1, n + 1):
        if len(rest) - 1 < d:
            break
        for f in enumerate_irreducibles(F, d):
            e = 0
            while len(rest) - 1 >= d:
                quot, rem = pdivmod(F, rest, f.coeffs)
                if rem:
                    break
                rest = quot
                e += 1
            if e:
                out.append((f, e))
    if rest != (1,):
        raise SingularMatrix("characteristic polynomial has the factor t")
    return out


def _block_partition(F: FieldSpec, g: Rows, f: IrredPoly, e: int) -> Partition:
    d = f.degree
    fg = poly_of_matrix(F, f.coeffs, g)
    ranks = [len(g)]
    power = fg
    for _ in range(e):
        ranks.append(mat_rank(F, power))
        power = mat_mul(F, power, fg)
    at_least = [(ranks[j - 1] - ranks[j]) // d for j in range(1, e + 1)] + [0]
    mult = {j: at_least[j - 1] - at_least[j] for j in range(1, e + 1)}
    lam = Partition.from_multiplicities({j: m for j, m in mult.items() if m})
    if lam.size != e:
        raise AssertionError("rank sequence inconsistent with characteristic polynomial")
    return lam


def class_label(g: MatrixFq) -> ClassLabel:
    F = g.field
    cp = charpoly(F, g.rows)
    factors = factor_charpoly(F, cp)
    return ClassLabel(g.q, tuple((f, _block_partition(F, g.rows, f, e)) for f, e in factors))


def representative(label: ClassLabel, n: int | None = None) -> MatrixFq:
    """Direct sum of companion matrices of f^k over the blocks k of each f."""
    if n is not None and label.n != n:
        raise DegreeMismatch(f"label has degree {label.n}, expected {n}")
    F = GF(label.q)
    blocks = []
    for f, lam in label.entries:
        for k in lam.parts:
            blocks.append(companion(F, ppow(F, f.coeffs, k)))
    return MatrixFq(label.q, block_diag(blocks))


def _aut_order(lam: Partition, Q: int) -> int:
    """|Aut| of the F_Q[[u]]-module of block type lam: Q^{sum lam'_j^2} prod_i prod_k (1 - Q^-k)."""
    exponent = sum(x * x for x in lam.conjugate().parts)
    out = 1
    for m in lam.multiplicities().values():
        exponent -= m * (m + 1) // 2
        for k in range(1, m + 1):
            out *= Q**k - 1
    return out * Q**exponent


def centralizer_order(label: ClassLabel) -> int:
    out = 1
    for f, lam in label.entries:
        out *= _aut_order(lam, label.q**f.degree)
    return out


def det_image_order(label: ClassLabel) -> int:
    """|det(Z_GL(g))| as a subgroup of F_q^*: the (gcd of block sizes)-th powers."""
    g = 0
    for _, lam in label.entries:
        for k in lam.parts:
            g = gcd(g, k)
    return (label.q - 1) // gcd(g, label.q - 1)


def class_size(label: ClassLabel) -> int:
    from .linalg import group_order

    return group_order(label.n, label.q) // centralizer_order(label)


@lru_cache(maxsize=None)
def _lcm_orders(n: int, q: int) -> int:
    out = 1
    for i in range(1, n + 1):
        x = q**i - 1
        out = out * x // gcd(out, x)
    return out


def jordan_decompose(g: MatrixFq) -> tuple[MatrixFq, MatrixFq]:
    """Multiplicative Jordan decomposition g = g_s g_u = g_u g_s.

    g_s is the p'-part of g: g^x with x = 1 mod L and x = 0 mod p^a, where
    L kills every semisimple element and p^a >= n kills every unipotent one.
    """
    F = g.field
    if g.det() == 0:
        raise SingularMatrix("Jordan decomposition needs an invertible matrix")
    n = g.n
    L = _lcm_orders(n, g.q)
    pa = 1
    while pa < n:
        pa *= F.p
    x = pa * pow(pa, -1, L) % (L * pa) if L > 1 else pa
    gs = mat_pow(F, g.rows, x)
    gu = mat_mul(F, mat_inv(F, gs), g.rows)
    return MatrixFq(g.q, gs), MatrixFq(g.q, gu)


def is_semisimple(g: MatrixFq) -> bool:
    """Squarefree minimal polynomial, i.e. every block partition is 1^k."""
    return all(set(lam.parts) == {1} for _, lam in class_label(g).entries)


def is_unipotent(g: MatrixFq) -> bool:
    lab = class_label(g)
    return len(lab.entries) == 1 and lab.entries[0][0].coeffs == (GF(g.q).neg(1), 1)


def direct_sum(mats: Iterable[MatrixFq]) -> MatrixFq:
    mats = list(mats)
    return MatrixFq(mats[0].q, block_diag([m.rows for m in mats]))
