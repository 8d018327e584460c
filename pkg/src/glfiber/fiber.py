"""Commutator fibers |{(x, y) in G^2 : x y x^-1 y^-1 = g}| for G = GL_n(F_q), SL_n(F_q).

Three independent counters:

* ``brute``: every pair, vectorized over blocks of x.
* ``transporter``: sum over y of #{x : x y x^-1 = g y}, which is |Z_G(y)| or 0
  for GL; for SL the GL transporter coset is intersected with SL through the
  determinant image of the centralizer.
* ``character``: the class-function sum |G| sum_chi chi(g)/chi(1) (GL_2 only).
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .ffmatrix.classes import ClassLabel, centralizer_order, class_label, det_image_order, representative
from .ffmatrix.field import GF, FieldSpec
from .ffmatrix.linalg import (
    MatrixFq,
    all_matrices_with_prefix,
    batch_charpoly_coeffs,
    batch_inverse,
    batch_matmul,
    chunk_prefixes,
    filter_group,
    group_elements,
    group_order,
    mat_det,
    nullspace,
    sl_order,
)
from .ffmatrix.poly import IrredPoly
from .partitions import Partition

NAIVE_LIMIT = 10**9
TRANSPORTER_LIMIT = 10**8
BLOCK_TARGET = 1 << 17
METHODS = ("brute", "transporter", "character")
FAMILIES = ("transvection", "split", "elliptic")


class TooLarge(ValueError):
    pass


class NoPrimitiveRoot(ValueError):
    pass


class MethodMismatch(AssertionError):
    pass


class NoFamilyMember(ValueError):
    pass


def _group(group: str) -> str:
    g = group.upper()
    if g not in ("GL", "SL"):
        raise ValueError(f"group must be GL or SL, not {group!r}")
    return g


def order_of(n: int, q: int, group: str) -> int:
    return group_order(n, q) if _group(group) == "GL" else sl_order(n, q)


def _codes(q: int, mats: np.ndarray) -> np.ndarray:
    n2 = mats.shape[-1] * mats.shape[-2]
    flat = mats.reshape(-1, n2)
    weights = q ** np.arange(n2 - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def _code_of(q: int, g: MatrixFq) -> int:
    return int(_codes(q, g.to_array()[None])[0])


def _check_member(g: MatrixFq, n: int, q: int, group: str) -> None:
    if g.n != n or g.q != q:
        raise ValueError("g has the wrong size or field")
    d = g.det()
    if d == 0 or (group == "SL" and d != 1):
        raise ValueError(f"g is not in {group}_{n}(F_{q})")


# -- brute force --------------------------------------------------------------


@lru_cache(maxsize=8)
def commutator_histogram(n: int, q: int, group: str = "GL") -> dict[int, int]:
    """Matrix code -> number of pairs with that commutator."""
    group = _group(group)
    N = order_of(n, q, group)
    if N * N > NAIVE_LIMIT:
        raise TooLarge(f"|G|^2 = {N * N} exceeds {NAIVE_LIMIT}")
    F = GF(q)
    G = group_elements(F, n, group)
    Ginv = batch_inverse(F, G)
    counts = np.zeros(q ** (n * n), dtype=np.int64)
    block = max(1, BLOCK_TARGET // len(G))
    for start in range(0, len(G), block):
        X = G[start : start + block, None]
        Xi = Ginv[start : start + block, None]
        C = batch_matmul(F, batch_matmul(F, batch_matmul(F, X, G[None]), Xi), Ginv[None])
        counts += np.bincount(_codes(q, C), minlength=counts.size)
    nz = np.nonzero(counts)[0]
    return {int(c): int(counts[c]) for c in nz}


def fiber_count_naive(n: int, q: int, group: str, g: MatrixFq) -> int:
    group = _group(group)
    _check_member(g, n, q, group)
    return commutator_histogram(n, q, group).get(_code_of(q, g), 0)


# -- transporter ----------------------------------------------------------------


def intertwiners(F: FieldSpec, y: Sequence[Sequence[int]], z: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis (flattened row-major) of {X : X y = z X}."""
    n = len(y)
    eqs = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                # (X y)_ij = sum_k X_ik y_kj ; (z X)_ij = sum_k z_ik X_kj
                row[i * n + k] = F.add(row[i * n + k], y[k][j])
                row[k * n + j] = F.sub(row[k * n + j], z[i][k])
            eqs.append(row)
    return nullspace(F, eqs, n * n)


def find_transporter(F: FieldSpec, y, z, seed: int = 0, tries: int = 10000) -> tuple[tuple[int, ...], ...] | None:
    """Some invertible X with X y X^-1 = z, by seeded sampling of the intertwiner space."""
    basis = intertwiners(F, y, z)
    if not basis:
        return None
    n = len(y)
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randrange(F.q) for _ in basis]
        v = [0] * (n * n)
        for c, b in zip(coeffs, basis):
            if c:
                v = [F.add(x, F.mul(c, w)) for x, w in zip(v, b)]
        X = tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n))
        if mat_det(F, X) != 0:
            return X
    return None


def _in_power_subgroup(F: FieldSpec, d: int, h: int) -> bool:
    """Is d in the order-h subgroup of F_q^*?"""
    return F.pow(d, h) == 1


class _TransportCache:
    def __init__(self, F: FieldSpec, group: str) -> None:
        self.F = F
        self.group = group
        self.regular: dict[tuple[int, ...], int] = {}

    def count(self, y: np.ndarray, gy: np.ndarray, cp: tuple[int, ...]) -> int:
        F, q = self.F, self.F.q
        hit = self.regular.get(cp)
        if hit is not None:
            return hit
        yr = tuple(map(tuple, y.tolist()))
        zr = tuple(map(tuple, gy.tolist()))
        ly = class_label(MatrixFq(q, yr))
        regular = all(lam.parts == (1,) for _, lam in ly.entries)
        if not regular and class_label(MatrixFq(q, zr)) != ly:
            return 0
        z = centralizer_order(ly)
        if self.group == "GL":
            out = z
        else:
            h = det_image_order(ly)
            if h == q - 1:
                out = z // (q - 1)
            else:
                x0 = find_transporter(F, yr, zr)
                if x0 is None:
                    raise AssertionError("conjugate matrices without a transporter")
                out = z // h if _in_power_subgroup(F, mat_det(F, x0), h) else 0
        if regular:
            # squarefree characteristic polynomial: the class and the count depend on cp only
            self.regular[cp] = out
        return out


def _transporter_shard(args) -> int:
    n, q, group, g_rows, prefixes = args
    F = GF(q)
    g = np.array(g_rows, dtype=np.int64)
    cache = _TransportCache(F, group)
    total = 0
    for prefix in prefixes:
        Y = filter_group(F, all_matrices_with_prefix(F, n, prefix), group)
        if not len(Y):
            continue
        GY = batch_matmul(F, g[None], Y)
        cpY = batch_charpoly_coeffs(F, Y)
        cpG = batch_charpoly_coeffs(F, GY)
        idx = np.nonzero(np.all(cpY == cpG, axis=1))[0]
        for i in idx:
            total += cache.count(Y[i], GY[i], tuple(int(c) for c in cpY[i]))
    return total


def _shards(items: list, k: int) -> list[list]:
    k = max(1, min(k, len(items)))
    size = math.ceil(len(items) / k)
    return [items[i : i + size] for i in range(0, len(items), size)]


def fiber_count_transporter(n: int, q: int, group: str, g: MatrixFq, threads: int = 1) -> int:
    group = _group(group)
    _check_member(g, n, q, group)
    N = order_of(n, q, group)
    if N > TRANSPORTER_LIMIT:
        raise TooLarge(f"|G| = {N} exceeds {TRANSPORTER_LIMIT}")
    F = GF(q)
    prefixes = chunk_prefixes(F, n)
    jobs = [(n, q, group, g.rows, shard) for shard in _shards(prefixes, threads)]
    if threads <= 1 or len(jobs) == 1:
        return sum(_transporter_shard(j) for j in jobs)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_transporter_shard, jobs))


# -- character sum ------------------------------------------------------------


def fiber_count_character(n: int, q: int, group: str, g: MatrixFq | ClassLabel) -> int:
    from .gl2char import frobenius_fiber_gl2

    if n != 2 or _group(group) != "GL":
        raise ValueError("the character method covers GL_2 only")
    c = g if isinstance(g, ClassLabel) else class_label(g)
    return frobenius_fiber_gl2(q, c)


def fiber_count(n: int, q: int, group: str, g: MatrixFq, method: str, threads: int = 1) -> int:
    if method == "brute":
        return fiber_count_naive(n, q, group, g)
    if method == "transporter":
        return fiber_count_transporter(n, q, group, g, threads)
    if method == "character":
        return fiber_count_character(n, q, group, g)
    raise ValueError(f"unknown method {method!r}")


# -- reports --------------------------------------------------------------------


def default_exponent(n: int, group: str) -> int:
    return n * n + 1 if _group(group) == "GL" else n * n - 1


@dataclass
class FiberReport:
    n: int
    q: int
    group: str
    label: ClassLabel
    counts: dict[str, int] = field(default_factory=dict)
    exponent: int = 0

    @property
    def count(self) -> int:
        values = set(self.counts.values())
        if len(values) != 1:
            raise MethodMismatch(f"methods disagree: {self.counts}")
        return values.pop()

    @property
    def c_q(self) -> float:
        return self.count / self.q**self.exponent

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "group": self.group,
            "class": self.label.to_json(),
            "counts": dict(sorted(self.counts.items())),
            "exponent": self.exponent,
            "c_q": float(f"{self.c_q:.12g}"),
        }


def fiber_report(
    n: int, q: int, group: str, g: MatrixFq, methods: Sequence[str], exponent: int | None = None, threads: int = 1
) -> FiberReport:
    group = _group(group)
    rep = FiberReport(n, q, group, class_label(g), exponent=default_exponent(n, group) if exponent is None else exponent)
    for m in methods:
        rep.counts[m] = fiber_count(n, q, group, g, m, threads)
    rep.count  # raises on disagreement
    return rep


# -- class families for scans -----------------------------------------------------


def family_class(n: int, q: int, family: str) -> ClassLabel:
    """One non-central class of SL_n per q: a regular unipotent-by-scalar, split or elliptic element."""
    if n != 2 and family != "transvection":
        raise ValueError("split and elliptic families are defined for n = 2")
    F = GF(q)
    if family == "transvection":
        lam = Partition((2,)) if n == 2 else Partition((2,) + (1,) * (n - 2))
        return ClassLabel(q, ((IrredPoly(q, (F.neg(1), 1)), lam),))
    if family == "split":
        for a in range(2, q):
            b = F.inv(a)
            if a != b:
                return ClassLabel(q, ((IrredPoly(q, (F.neg(a), 1)), Partition((1,))), (IrredPoly(q, (F.neg(b), 1)), Partition((1,)))))
        raise NoFamilyMember(f"no split regular element of determinant 1 for q = {q}")
    if family == "elliptic":
        from .gl2char import gl2_table

        ext = gl2_table(q).ext
        lam = ext.exp[q - 1]
        tr, nrm = ext.trace_norm(lam)
        return ClassLabel(q, ((IrredPoly(q, (nrm, F.neg(tr), 1)), Partition((1,))),))
    raise ValueError(f"unknown family {family!r}")


@dataclass
class ScanResult:
    reports: list[FiberReport]
    slope: float

    def to_json(self) -> dict:
        return {"slope": float(f"{self.slope:.12g}"), "reports": [r.to_json() for r in self.reports]}


def fit_slope(qs: Sequence[int], counts: Sequence[int]) -> float:
    x = np.log(np.asarray(qs, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def exponent_scan(
    n: int, family: str, q_list: Sequence[int], method: str = "character", threads: int = 1, skip_missing: bool = False
) -> ScanResult:
    reports = []
    for q in q_list:
        try:
            c = family_class(n, q, family)
        except NoFamilyMember:
            if skip_missing:
                continue
            raise
        g = representative(c)
        reports.append(fiber_report(n, q, "GL", g, [method], threads=threads))
    return ScanResult(reports, fit_slope([r.q for r in reports], [r.count for r in reports]))


# -- central fiber -----------------------------------------------------------------


def primitive_root_of_unity(q: int, n: int) -> int:
    if (q - 1) % n:
        raise NoPrimitiveRoot(f"F_{q} has no primitive {n}-th root of unity (q != 1 mod {n})")
    F = GF(q)
    return F.pow(F.generator, (q - 1) // n)


def _nth_root(F: FieldSpec, n: int, target: int) -> int | None:
    for a in F.units():
        if F.pow(a, n) == target:
            return a
    return None


def clock_shift(n: int, q: int) -> tuple[MatrixFq, MatrixFq, int]:
    """A = diag(-1, -zeta, ..., -zeta^{n-1}), B = cyclic shift; A B A^-1 B^-1 = zeta I."""
    F = GF(q)
    zeta = primitive_root_of_unity(q, n)
    A = MatrixFq.diag(q, [F.neg(F.pow(zeta, j)) for j in range(n)])
    B = MatrixFq(q, tuple(tuple(1 if i == (j + 1) % n else 0 for j in range(n)) for i in range(n)))
    return A, B, zeta


@dataclass
class CentralFiber:
    n: int
    q: int
    zeta: int
    count: int
    expected: int
    witness: tuple[MatrixFq, MatrixFq]
    clock_shift_in_sl: bool

    @property
    def matches(self) -> bool:
        return self.count == self.expected

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "zeta": self.zeta,
            "count": self.count,
            "expected_pgl": self.expected,
            "matches": self.matches,
            "clock_shift_in_sl": self.clock_shift_in_sl,
            "witness": [self.witness[0].format(), self.witness[1].format()],
        }


def sl_witness(n: int, q: int, target: MatrixFq, seed: int = 0) -> tuple[MatrixFq, MatrixFq] | None:
    """First y in SL (lexicographic) with an SL transporter onto target*y, plus such an x."""
    F = GF(q)
    rng = random.Random(seed)
    for Y in (filter_group(F, all_matrices_with_prefix(F, n, p), "SL") for p in chunk_prefixes(F, n)):
        for y in Y:
            yr = tuple(map(tuple, y.tolist()))
            zr = (target @ MatrixFq(q, yr)).rows
            basis = intertwiners(F, yr, zr)
            if not basis:
                continue
            for _ in range(2000):
                v = [0] * (n * n)
                for b in basis:
                    c = rng.randrange(q)
                    if c:
                        v = [F.add(s, F.mul(c, w)) for s, w in zip(v, b)]
                X = tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n))
                if mat_det(F, X) == 1:
                    return MatrixFq(q, X), MatrixFq(q, yr)
    return None


def central_fiber_sl(n: int, q: int, method: str = "transporter", threads: int = 1) -> CentralFiber:
    A, B, zeta = clock_shift(n, q)
    F = GF(q)
    Z = MatrixFq.scalar(q, n, zeta)
    if A.commutator(B) != Z:
        raise AssertionError("clock/shift identity failed")
    a = _nth_root(F, n, F.inv(A.det()))
    b = _nth_root(F, n, F.inv(B.det()))
    in_sl = a is not None and b is not None
    if in_sl:
        witness = (A.scale(a), B.scale(b))
    else:
        found = sl_witness(n, q, Z)
        if found is None:
            raise AssertionError("no SL witness found")
        witness = found
    x, y = witness
    if x.det() != 1 or y.det() != 1 or x.commutator(y) != Z:
        raise AssertionError("witness check failed")
    count = fiber_count(n, q, "SL", Z, method, threads)
    return CentralFiber(n, q, zeta, count, group_order(n, q) // (q - 1), witness, in_sl)
