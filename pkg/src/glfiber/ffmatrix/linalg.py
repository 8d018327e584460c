"""Dense matrices over F_q.

``MatrixFq`` is the immutable value type used at API boundaries.  The
batch helpers at the bottom work on integer numpy arrays of shape
(N, n, n) through the field's add/mul tables and drive the exhaustive
group enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .field import FieldSpec, GF
from .poly import Coeffs, trim


class SingularMatrix(ValueError):
    pass


Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MatrixFq:
    q: int
    rows: Rows

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if any(not 0 <= x < self.q for r in rows for x in r):
            raise ValueError("entries must be field element codes")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> FieldSpec:
        return GF(self.q)

    @classmethod
    def identity(cls, q: int, n: int) -> MatrixFq:
        return cls.scalar(q, n, 1)

    @classmethod
    def scalar(cls, q: int, n: int, a: int) -> MatrixFq:
        return cls(q, tuple(tuple(a if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, q: int, entries: Sequence[int]) -> MatrixFq:
        n = len(entries)
        return cls(q, tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_array(cls, q: int, arr: np.ndarray) -> MatrixFq:
        return cls(q, tuple(tuple(int(x) for x in row) for row in arr))

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.n, self.n)

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        return MatrixFq(self.q, mat_mul(self.field, self.rows, other.rows))

    def __mul__(self, other: MatrixFq) -> MatrixFq:
        return self @ other

    def inverse(self) -> MatrixFq:
        return MatrixFq(self.q, mat_inv(self.field, self.rows))

    def det(self) -> int:
        return mat_det(self.field, self.rows)

    def rank(self) -> int:
        return mat_rank(self.field, self.rows)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def __pow__(self, e: int) -> MatrixFq:
        return MatrixFq(self.q, mat_pow(self.field, self.rows, e))

    def charpoly(self) -> Coeffs:
        return charpoly(self.field, self.rows)

    def scale(self, a: int) -> MatrixFq:
        F = self.field
        return MatrixFq(self.q, tuple(tuple(F.mul(a, x) for x in r) for r in self.rows))

    def commutator(self, other: MatrixFq) -> MatrixFq:
        """x y x^{-1} y^{-1}."""
        return self @ other @ self.inverse() @ other.inverse()

    def format(self) -> str:
        F = self.field
        sep = "," if F.is_prime else " "
        return ";".join(sep.join(F.format(x) for x in r) for r in self.rows)

    @classmethod
    def parse(cls, q: int, text: str) -> MatrixFq:
        """Rows separated by ';'.  Entries by ',' (prime fields) or whitespace."""
        F = GF(q)
        rows = []
        for row in text.strip().split(";"):
            row = row.strip()
            if F.is_prime and " " not in row:
                tokens = [t for t in row.split(",") if t]
            else:
                tokens = row.split()
            rows.append(tuple(F.parse(t) for t in tokens))
        return cls(q, tuple(rows))

    def __str__(self) -> str:
        return self.format()


# -- scalar-loop kernels on row tuples ----------------------------------------


def mat_mul(F: FieldSpec, a: Rows, b: Rows) -> Rows:
    n = len(a)
    bt = list(zip(*b))
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(n):
            acc = 0
            for x, y in zip(ai, bt[j]):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(F: FieldSpec, a: Rows, b: Rows) -> Rows:
    return tuple(tuple(F.add(x, y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scalar(F: FieldSpec, n: int, c: int) -> Rows:
    return tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(F: FieldSpec, a: Rows, e: int) -> Rows:
    n = len(a)
    if e < 0:
        a = mat_inv(F, a)
        e = -e
    out = mat_scalar(F, n, 1)
    base = a
    while e:
        if e & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        e >>= 1
    return out


def row_echelon(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def mat_rank(F: FieldSpec, a: Sequence[Sequence[int]]) -> int:
    return len(row_echelon(F, a)[1])


def mat_det(F: FieldSpec, a: Rows) -> int:
    m = [list(r) for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


def mat_inv(F: FieldSpec, a: Rows) -> Rows:
    n = len(a)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    red, piv = row_echelon(F, aug)
    if len(piv) < n or piv[n - 1] >= n:
        raise SingularMatrix("matrix is not invertible")
    return tuple(tuple(r[n:]) for r in red)


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0}."""
    red, piv = row_echelon(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, piv):
            v[pc] = F.neg(r[fc])
        basis.append(v)
    return basis


def charpoly(F: FieldSpec, a: Rows) -> Coeffs:
    """det(tI - a) via Hessenberg reduction; monic, lowest degree first."""
    n = len(a)
    h = [list(r) for r in a]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if h[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        inv = F.inv(h[m][m - 1])
        for i in range(m + 1, n):
            u = F.mul(h[i][m - 1], inv)
            if u:
                h[i] = [F.sub(x, F.mul(u, y)) for x, y in zip(h[i], h[m])]
                for row in h:
                    row[m] = F.add(row[m], F.mul(u, row[i]))
    # p_k(t) = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    polys: list[list[int]] = [[1]]
    for k in range(n):
        prev = polys[-1]
        cur = [0] + prev  # t * p_{k-1}
        for d, c in enumerate(prev):
            cur[d] = F.sub(cur[d], F.mul(h[k][k], c))
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = F.mul(prod, h[i + 1][i])
            coef = F.mul(h[i][k], prod)
            if coef:
                for d, c in enumerate(polys[i]):
                    cur[d] = F.sub(cur[d], F.mul(coef, c))
        polys.append(cur)
    return tuple(polys[-1])


def poly_of_matrix(F: FieldSpec, coeffs: Coeffs, a: Rows) -> Rows:
    """Horner evaluation of a polynomial at a matrix."""
    n = len(a)
    out = mat_scalar(F, n, 0)
    for c in reversed(coeffs):
        out = mat_add(F, mat_mul(F, out, a), mat_scalar(F, n, c))
    return out


def companion(F: FieldSpec, coeffs: Coeffs) -> Rows:
    """Companion matrix of a monic polynomial: ones below the diagonal, -c in the last column."""
    coeffs = trim(coeffs)
    d = len(coeffs) - 1
    return tuple(
        tuple(
            (F.neg(coeffs[i]) if j == d - 1 else (1 if i == j + 1 else 0))
            for j in range(d)
        )
        for i in range(d)
    )


def block_diag(blocks: Sequence[Rows]) -> Rows:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            out[off + i][off : off + len(r)] = r
        off += len(b)
    return tuple(tuple(r) for r in out)


# -- batch kernels on (N, n, n) integer arrays --------------------------------


def batch_matmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return np.matmul(a, b) % F.p
    add, mul = F.add_table, F.mul_table
    n = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = mul[a[..., i, 0], b[..., 0, j]]
            for k in range(1, n):
                acc = add[acc, mul[a[..., i, k], b[..., k, j]]]
            out[..., i, j] = acc
    return out


def _bsub(F: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return (x - y) % F.p
    return F.add_table[x, F.neg_table[y]]


def _badd(F: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return (x + y) % F.p
    return F.add_table[x, y]


def _bmul(F: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return (x * y) % F.p
    return F.mul_table[x, y]


def batch_det(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    if n == 1:
        return a[..., 0, 0].copy()
    if n == 2:
        return _bsub(F, _bmul(F, a[..., 0, 0], a[..., 1, 1]), _bmul(F, a[..., 0, 1], a[..., 1, 0]))
    if n == 3:
        def minor(i, j, k, l):
            return _bsub(F, _bmul(F, a[..., 1, i], a[..., 2, j]), _bmul(F, a[..., 1, k], a[..., 2, l]))
        t0 = _bmul(F, a[..., 0, 0], minor(1, 2, 2, 1))
        t1 = _bmul(F, a[..., 0, 1], minor(0, 2, 2, 0))
        t2 = _bmul(F, a[..., 0, 2], minor(0, 1, 1, 0))
        return _badd(F, _bsub(F, t0, t1), t2)
    flat = a.reshape(-1, n, n)
    out = np.array([mat_det(F, tuple(map(tuple, m.tolist()))) for m in flat], dtype=np.int64)
    return out.reshape(a.shape[:-2])


def batch_inverse(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Adjugate / det for n <= 3; generic per-matrix fallback otherwise."""
    n = a.shape[-1]
    det = batch_det(F, a)
    if np.any(det == 0):
        raise SingularMatrix("batch contains a singular matrix")
    dinv = F.inv_table[det]
    if n == 1:
        return dinv[..., None, None].copy()
    if n == 2:
        adj = np.empty_like(a)
        adj[..., 0, 0] = a[..., 1, 1]
        adj[..., 1, 1] = a[..., 0, 0]
        adj[..., 0, 1] = F.neg_table[a[..., 0, 1]]
        adj[..., 1, 0] = F.neg_table[a[..., 1, 0]]
        return _bmul(F, adj, dinv[..., None, None])
    if n == 3:
        adj = np.empty_like(a)
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != j]
                cols = [c for c in range(3) if c != i]
                m = _bsub(
                    F,
                    _bmul(F, a[..., rows[0], cols[0]], a[..., rows[1], cols[1]]),
                    _bmul(F, a[..., rows[0], cols[1]], a[..., rows[1], cols[0]]),
                )
                adj[..., i, j] = m if (i + j) % 2 == 0 else F.neg_table[m]
        return _bmul(F, adj, dinv[..., None, None])
    flat = a.reshape(-1, n, n)
    out = np.array([mat_inv(F, tuple(map(tuple, m.tolist()))) for m in flat], dtype=np.int64)
    return out.reshape(a.shape)


def batch_charpoly_coeffs(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Coefficients (c_0..c_{n-1}) of det(tI - a) for n <= 3, shape (..., n)."""
    n = a.shape[-1]
    tr = a[..., 0, 0]
    for i in range(1, n):
        tr = _badd(F, tr, a[..., i, i])
    det = batch_det(F, a)
    if n == 1:
        return F.neg_table[det][..., None]
    if n == 2:
        return np.stack([det, F.neg_table[tr]], axis=-1)
    if n == 3:
        c2 = None
        for i, j in ((0, 1), (0, 2), (1, 2)):
            m = _bsub(F, _bmul(F, a[..., i, i], a[..., j, j]), _bmul(F, a[..., i, j], a[..., j, i]))
            c2 = m if c2 is None else _badd(F, c2, m)
        return np.stack([F.neg_table[det], c2, F.neg_table[tr]], axis=-1)
    flat = a.reshape(-1, n, n)
    out = np.array([charpoly(F, tuple(map(tuple, m.tolist())))[:n] for m in flat], dtype=np.int64)
    return out.reshape(a.shape[:-2] + (n,))


def all_matrices_with_prefix(F: FieldSpec, n: int, prefix: Sequence[int]) -> np.ndarray:
    """Every n x n matrix whose row-major entries start with ``prefix``, lexicographic."""
    rest = n * n - len(prefix)
    q = F.q
    codes = np.arange(q**rest, dtype=np.int64)
    digits = np.empty((codes.size, rest), dtype=np.int64)
    for pos in range(rest - 1, -1, -1):
        digits[:, pos] = codes % q
        codes //= q
    head = np.broadcast_to(np.asarray(prefix, dtype=np.int64), (digits.shape[0], len(prefix)))
    return np.concatenate([head, digits], axis=1).reshape(-1, n, n)


CHUNK_TARGET = 1 << 18


def group_chunks(F: FieldSpec, n: int, group: str = "GL") -> Iterator[np.ndarray]:
    """GL_n(F_q) or SL_n(F_q) in row-major lexicographic order, as array chunks.

    Chunks are keyed by a fixed-length row-major prefix, so chunk i is the
    same for every run; shard workers take disjoint ranges of chunk indices.
    """
    for prefix in chunk_prefixes(F, n):
        yield filter_group(F, all_matrices_with_prefix(F, n, prefix), group)


def chunk_prefixes(F: FieldSpec, n: int) -> list[tuple[int, ...]]:
    q = F.q
    plen = 0
    while q ** (n * n - plen) > CHUNK_TARGET and plen < n * n:
        plen += 1
    out = []
    for code in range(q**plen):
        digits = []
        c = code
        for _ in range(plen):
            digits.append(c % q)
            c //= q
        out.append(tuple(reversed(digits)))
    return out


def filter_group(F: FieldSpec, mats: np.ndarray, group: str) -> np.ndarray:
    det = batch_det(F, mats)
    if group == "GL":
        return mats[det != 0]
    if group == "SL":
        return mats[det == 1]
    raise ValueError(f"unknown group {group!r}")


def group_elements(F: FieldSpec, n: int, group: str = "GL") -> np.ndarray:
    chunks = [c for c in group_chunks(F, n, group) if len(c)]
    return np.concatenate(chunks) if chunks else np.zeros((0, n, n), dtype=np.int64)


def group_order(n: int, q: int) -> int:
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i)."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def sl_order(n: int, q: int) -> int:
    return group_order(n, q) // (q - 1)
