"""Flags in F_q^n, g-stable flags, Hall coefficients and parabolic induction for GL_2.

A flag with quotient dimensions (n_1, ..., n_m) is a chain
V = V^0 > V^1 > ... > V^m = 0 with dim V^{i-1}/V^i = n_i.  Subspaces are
held as reduced row-echelon bases of row vectors; g acts on column vectors,
so a row v maps to the row (g v)^T.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Iterator, Sequence

from .ffmatrix.classes import ClassLabel, class_label, representative
from .ffmatrix.field import GF, FieldSpec
from .ffmatrix.linalg import MatrixFq, row_echelon
from .qpoly import gauss_grassmannian


class CentralElement(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FlagSpec:
    n: int
    q: int
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 2:
            raise ValueError("a flag needs m >= 2 pieces")
        if any(d < 1 for d in dims) or sum(dims) != self.n:
            raise ValueError(f"quotient dimensions {dims} must be positive and sum to {self.n}")

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def a(self) -> tuple[int, ...]:
        """dim V^i for i = 1..m."""
        out, left = [], self.n
        for d in self.dims:
            left -= d
            out.append(left)
        return tuple(out)

    def exponent(self, S: Iterable[int]) -> int:
        """1 - n + sum_{i in S} (n_i - 1)."""
        return 1 - self.n + sum(self.dims[i - 1] - 1 for i in S)


def compositions(n: int, min_parts: int = 2) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(left: int, acc: list[int]) -> None:
        if left == 0:
            if len(acc) >= min_parts:
                out.append(tuple(acc))
            return
        for d in range(1, left + 1):
            rec(left - d, acc + [d])

    rec(n, [])
    return out


def count_flags(spec: FlagSpec) -> int:
    """prod_i [a_{i-1} choose n_i]_q."""
    total, dim = 1, spec.n
    for d in spec.dims:
        total *= gauss_grassmannian(dim, d)(spec.q)
        dim -= d
    return int(total)


@lru_cache(maxsize=None)
def rref_subspaces(q: int, n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All k-dimensional subspaces of F_q^n as RREF k x n matrices, deterministic order."""
    out = []
    for pivots in _combinations(n, k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in iproduct(range(q), repeat=len(free)):
            m = [[0] * n for _ in range(k)]
            for r, c in enumerate(pivots):
                m[r][c] = 1
            for (r, c), v in zip(free, vals):
                m[r][c] = v
            out.append(tuple(tuple(row) for row in m))
    return tuple(out)


def _combinations(n: int, k: int) -> list[tuple[int, ...]]:
    from itertools import combinations

    return list(combinations(range(n), k))


class _Space:
    """Subspace given by RREF rows and pivot columns."""

    __slots__ = ("rows", "pivots")

    def __init__(self, F: FieldSpec, basis: Sequence[Sequence[int]]) -> None:
        self.rows, self.pivots = row_echelon(F, basis) if basis else ([], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, F: FieldSpec, v: Sequence[int]) -> list[int]:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return v


def _apply(F: FieldSpec, g: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in g:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def _is_stable(F: FieldSpec, g: Sequence[Sequence[int]], W: _Space) -> bool:
    return all(not any(W.reduce(F, _apply(F, g, w))) for w in W.rows)


def _quotient_scalar(F: FieldSpec, g: Sequence[Sequence[int]], V: _Space, W: _Space) -> bool:
    """Does g act as a scalar on V/W?  The scalar is read off one basis image."""
    lam = None
    reduced = [(W.reduce(F, b), W.reduce(F, _apply(F, g, b))) for b in V.rows]
    for r, s in reduced:
        j = next((i for i, x in enumerate(r) if x), None)
        if j is not None:
            lam = F.div(s[j], r[j])
            break
    if lam is None:
        return True
    return all(all(F.sub(y, F.mul(lam, x)) == 0 for x, y in zip(r, s)) for r, s in reduced)


def _quotient_matrix(F: FieldSpec, g: Sequence[Sequence[int]], V: _Space, W: _Space) -> MatrixFq:
    """Matrix of g on V/W in the basis of RREF complement representatives."""
    U = _Space(F, [W.reduce(F, b) for b in V.rows])
    cols = []
    for u in U.rows:
        img = W.reduce(F, _apply(F, g, u))
        cols.append([img[p] for p in U.pivots])
    k = U.dim
    return MatrixFq(F.q, tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))


def _ambient(F: FieldSpec, coeffs: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(basis[0])
    out = []
    for c in coeffs:
        v = [0] * n
        for a, b in zip(c, basis):
            if a:
                v = [F.add(x, F.mul(a, y)) for x, y in zip(v, b)]
        out.append(v)
    return out


def stable_flags(g: MatrixFq, spec: FlagSpec) -> Iterator[list[_Space]]:
    """Every flag whose members are all g-stable, as [V^0, V^1, ..., V^m]."""
    F = GF(spec.q)
    if g.n != spec.n or g.q != spec.q:
        raise DimensionMismatch("matrix and flag spec disagree on n or q")
    rows = g.rows
    top = _Space(F, [[1 if i == j else 0 for j in range(spec.n)] for i in range(spec.n)])
    a = spec.a

    def rec(i: int, chain: list[_Space]) -> Iterator[list[_Space]]:
        if i == spec.m:
            yield chain
            return
        V = chain[-1]
        if a[i] == 0:
            yield from rec(i + 1, chain + [_Space(F, [])])
            return
        for coeffs in rref_subspaces(spec.q, V.dim, a[i]):
            W = _Space(F, _ambient(F, coeffs, V.rows))
            if _is_stable(F, rows, W):
                yield from rec(i + 1, chain + [W])

    yield from rec(0, [top])


def scalar_masks(g: MatrixFq, spec: FlagSpec) -> Counter:
    """Counter of per-quotient 'acts as a scalar' masks over all stable flags."""
    F = GF(spec.q)
    out: Counter = Counter()
    for chain in stable_flags(g, spec):
        out[tuple(_quotient_scalar(F, g.rows, chain[i], chain[i + 1]) for i in range(spec.m))] += 1
    return out


def _normalize_S(spec: FlagSpec, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(int(i) for i in S)
    if not S <= set(range(1, spec.m + 1)):
        raise ValueError(f"S must be a subset of 1..{spec.m}")
    return S


def count_from_masks(masks: Counter, S: Iterable[int], strict: bool) -> int:
    S = frozenset(S)
    total = 0
    for mask, k in masks.items():
        ok = True
        for i, scalar in enumerate(mask, start=1):
            if i not in S and not scalar:
                ok = False
                break
            if strict and i in S and scalar:
                ok = False
                break
        if ok:
            total += k
    return total


def stable_flag_count(g: MatrixFq, spec: FlagSpec, S: Iterable[int] = (), strict: bool = False) -> int:
    S = _normalize_S(spec, S)
    return count_from_masks(scalar_masks(g, spec), S, strict)


def is_central(g: MatrixFq) -> bool:
    c = g.rows[0][0]
    return all(x == (c if i == j else 0) for i, r in enumerate(g.rows) for j, x in enumerate(r))


@dataclass(frozen=True)
class FlagProbability:
    stable: int
    total: int
    exponent: int
    q: int

    @property
    def probability(self) -> Fraction:
        return Fraction(self.stable, self.total)

    @property
    def bound_constant(self) -> Fraction:
        return self.probability / Fraction(self.q) ** self.exponent

    def to_json(self) -> dict:
        p = self.probability
        return {
            "probability_num": p.numerator,
            "probability_den": p.denominator,
            "exponent": self.exponent,
            "constant": float(self.bound_constant),
        }


def flag_probability_report(g: MatrixFq, spec: FlagSpec, S: Iterable[int] = ()) -> FlagProbability:
    if is_central(g):
        raise CentralElement("the flag bound is stated for non-central g")
    S = _normalize_S(spec, S)
    stable = stable_flag_count(g, spec, S, strict=False)
    return FlagProbability(stable, count_flags(spec), spec.exponent(S), spec.q)


def all_subsets(m: int) -> list[frozenset[int]]:
    idx = range(1, m + 1)
    return [frozenset(i for i in idx if bits >> (i - 1) & 1) for bits in range(1 << m)]


def hall_table(g: MatrixFq, dims: Sequence[int]) -> Counter:
    """Counter over tuples (c_1, ..., c_m) of graded classes of g-stable flags."""
    spec = FlagSpec(g.n, g.q, tuple(dims))
    F = GF(g.q)
    out: Counter = Counter()
    for chain in stable_flags(g, spec):
        out[tuple(class_label(_quotient_matrix(F, g.rows, chain[i], chain[i + 1])) for i in range(spec.m))] += 1
    return out


def hall_coefficient(g: MatrixFq, *classes: ClassLabel) -> int:
    dims = tuple(c.n for c in classes)
    if sum(dims) != g.n:
        raise DimensionMismatch(f"class sizes {dims} do not add up to {g.n}")
    if any(c.q != g.q for c in classes):
        raise DimensionMismatch("classes over a different field")
    return hall_table(g, dims)[tuple(classes)]


def induce_gl2(alpha: int, beta: int, c: ClassLabel) -> complex:
    """(alpha o beta)(g) = sum_{c1, c2} H^g_{c1,c2} alpha(c1) beta(c2) for characters
    alpha, beta of F_q^* given by exponents."""
    from .gl2char import gl2_table

    if c.n != 2:
        raise DimensionMismatch("induce_gl2 takes a class of GL_2")
    t = gl2_table(c.q)
    g = representative(c)
    F = GF(c.q)
    vals = []
    for (c1, c2), h in sorted(hall_table(g, (1, 1)).items(), key=lambda kv: str(kv[0])):
        a1 = F.neg(c1.entries[0][0].coeffs[0])
        a2 = F.neg(c2.entries[0][0].coeffs[0])
        vals.append(h * t.alpha(alpha, a1) * t.alpha(beta, a2))
    return complex(sum(v.real for v in vals), sum(v.imag for v in vals))
