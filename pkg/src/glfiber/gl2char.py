"""Character table of GL_2(F_q) and the Frobenius commutator-fiber sum.

Characters come in four families.  With alpha, beta characters of F_q^*
and phi a character of F_{q^2}^* with phi != phi^q:

    family      degree  aI          a*transv.   diag(a,b)              elliptic (lam, lam^q)
    linear      1       alpha(a)^2  alpha(a)^2  alpha(a)alpha(b)       alpha(N lam)
    steinberg   q       q alpha^2   0           alpha(a)alpha(b)       -alpha(N lam)
    principal   q+1     (q+1)ab(a)  ab(a)       alpha(a)beta(b)+(a<->b) 0
    discrete    q-1     (q-1)phi(a) -phi(a)     0                      -(phi(lam)+phi(lam^q))

Values are complex floats built from integer exponents of roots of unity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .ffmatrix.classes import ClassLabel, centralizer_order
from .ffmatrix.field import GF, FieldSpec
from .ffmatrix.linalg import group_order
from .ffmatrix.poly import enumerate_irreducibles
from .labels import CharLabel, enumerate_class_labels, enumerate_simplices, type_of
from .partitions import Partition, TypeTau

FAMILIES = ("linear", "steinberg", "principal", "discrete")
RESIDUE_LIMIT = 1e-4


class WrongGroup(ValueError):
    pass


class PrecisionLoss(ArithmeticError):
    pass


class CentralClass(ValueError):
    pass


class QuadraticExtension:
    """F_{q^2} = F_q[w]/(w^2 + a w + b), elements as pairs (x, y) = x + y w."""

    def __init__(self, F: FieldSpec) -> None:
        self.F = F
        q = F.q
        b, a, _ = enumerate_irreducibles(F, 2)[0].coeffs
        self.a, self.b = a, b
        order = q * q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and all(r % d for d in range(2, int(r**0.5) + 1))]
        for x in range(q):
            for y in range(q):
                if (x, y) == (0, 0):
                    continue
                if all(self.pow((x, y), order // r) != (1, 0) for r in primes):
                    self.gen = (x, y)
                    break
            else:
                continue
            break
        exp = [(1, 0)] * order
        for i in range(1, order):
            exp[i] = self.mul(exp[i - 1], self.gen)
        self.exp = exp
        self.log = {v: i for i, v in enumerate(exp)}
        if len(self.log) != order:
            raise AssertionError("generator search failed")

    def mul(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        F = self.F
        x1, y1 = u
        x2, y2 = v
        yy = F.mul(y1, y2)
        # w^2 = -a w - b
        x = F.sub(F.mul(x1, x2), F.mul(self.b, yy))
        y = F.sub(F.add(F.mul(x1, y2), F.mul(x2, y1)), F.mul(self.a, yy))
        return x, y

    def pow(self, u: tuple[int, int], e: int) -> tuple[int, int]:
        out = (1, 0)
        while e:
            if e & 1:
                out = self.mul(out, u)
            u = self.mul(u, u)
            e >>= 1
        return out

    def conj(self, u: tuple[int, int]) -> tuple[int, int]:
        """Frobenius x -> x^q; w^q = -a - w."""
        F = self.F
        x, y = u
        return F.sub(x, F.mul(self.a, y)), F.neg(y)

    def trace_norm(self, u: tuple[int, int]) -> tuple[int, int]:
        c = self.conj(u)
        s = (self.F.add(u[0], c[0]), self.F.add(u[1], c[1]))
        nrm = self.mul(u, c)
        assert s[1] == 0 and nrm[1] == 0
        return s[0], nrm[0]


@dataclass(frozen=True, order=True)
class GL2Char:
    q: int
    family: str
    params: tuple[int, ...]

    @property
    def degree(self) -> int:
        return {"linear": 1, "steinberg": self.q, "principal": self.q + 1, "discrete": self.q - 1}[self.family]

    def label(self) -> CharLabel:
        ones = {s.k: s for s in enumerate_simplices(self.q, 1)}
        if self.family == "linear":
            return CharLabel(self.q, ((ones[self.params[0]], Partition((2,))),))
        if self.family == "steinberg":
            return CharLabel(self.q, ((ones[self.params[0]], Partition((1, 1))),))
        if self.family == "principal":
            i, j = self.params
            return CharLabel(self.q, ((ones[i], Partition((1,))), (ones[j], Partition((1,)))))
        twos = {s.k: s for s in enumerate_simplices(self.q, 2)}
        return CharLabel(self.q, ((twos[self.params[0]], Partition((1,))),))

    def type(self) -> TypeTau:
        return type_of(self.label())

    def format_params(self) -> str:
        return " ".join(map(str, self.params))


def _root(n: int, m: int) -> complex:
    m %= n
    if m == 0:
        return 1.0 + 0j
    if 2 * m == n:
        return -1.0 + 0j
    if 4 * m == n:
        return 1j
    if 4 * m == 3 * n:
        return -1j
    return cmath.exp(2j * math.pi * m / n)


class GL2Table:
    """Classes, characters and values of GL_2(F_q)."""

    def __init__(self, q: int) -> None:
        self.q = q
        self.F = GF(q)
        self.ext = QuadraticExtension(self.F)
        self.order = group_order(2, q)
        self.chars = build_table(q)
        self.classes = enumerate_class_labels(2, q)
        # (trace, norm) -> log of a root in F_{q^2}
        self._elliptic_log: dict[tuple[int, int], int] = {}
        for (x, y), i in self.ext.log.items():
            if y != 0:
                self._elliptic_log.setdefault(self.ext.trace_norm((x, y)), i)

    def log_fq(self, a: int) -> int:
        """Log of a in F_q^* to the base gamma^{q+1}."""
        return self.ext.log[(a, 0)] // (self.q + 1)

    def alpha(self, i: int, a: int) -> complex:
        return _root(self.q - 1, i * self.log_fq(a))

    def classify(self, c: ClassLabel) -> tuple[str, tuple[int, ...]]:
        """Kind of a GL_2 class and its data: central (a), transvection (a),
        split (a, b), elliptic (log of an eigenvalue in F_{q^2})."""
        if c.q != self.q or c.n != 2:
            raise WrongGroup(f"{c} is not a class of GL_2(F_{self.q})")
        F = self.F
        entries = c.entries
        if len(entries) == 2:
            return "split", tuple(F.neg(f.coeffs[0]) for f, _ in entries)
        f, lam = entries[0]
        if f.degree == 2:
            key = (F.neg(f.coeffs[1]), f.coeffs[0])
            return "elliptic", (self._elliptic_log[key],)
        a = F.neg(f.coeffs[0])
        return ("central" if lam.parts == (1, 1) else "transvection"), (a,)

    def value(self, chi: GL2Char, c: ClassLabel) -> complex:
        kind, data = self.classify(c)
        q = self.q
        fam = chi.family
        if kind == "elliptic":
            ll = data[0]
            if fam == "linear":
                return _root(q - 1, chi.params[0] * ll)
            if fam == "steinberg":
                return -_root(q - 1, chi.params[0] * ll)
            if fam == "principal":
                return 0j
            k = chi.params[0]
            return -(_root(q * q - 1, k * ll) + _root(q * q - 1, k * q * ll))
        logs = [self.log_fq(a) for a in data]
        if kind in ("central", "transvection"):
            la = logs[0]
            if fam == "linear":
                return _root(q - 1, 2 * chi.params[0] * la)
            if fam == "steinberg":
                return q * _root(q - 1, 2 * chi.params[0] * la) if kind == "central" else 0j
            if fam == "principal":
                i, j = chi.params
                v = _root(q - 1, (i + j) * la)
                return (q + 1) * v if kind == "central" else v
            v = _root(q - 1, chi.params[0] * la)
            return (q - 1) * v if kind == "central" else -v
        la, lb = logs
        if fam in ("linear", "steinberg"):
            return _root(q - 1, chi.params[0] * (la + lb))
        if fam == "principal":
            i, j = chi.params
            return _root(q - 1, i * la + j * lb) + _root(q - 1, i * lb + j * la)
        return 0j

    @cached_property
    def matrix(self) -> np.ndarray:
        """values[chi index, class index]."""
        return np.array([[self.value(chi, c) for c in self.classes] for chi in self.chars], dtype=complex)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array([self.order // centralizer_order(c) for c in self.classes], dtype=np.int64)

    @cached_property
    def centralizer_orders(self) -> np.ndarray:
        return np.array([centralizer_order(c) for c in self.classes], dtype=np.int64)


@lru_cache(maxsize=32)
def gl2_table(q: int) -> GL2Table:
    return GL2Table(q)


def build_table(q: int) -> list[GL2Char]:
    ones = [s.k for s in enumerate_simplices(q, 1)]
    twos = [s.k for s in enumerate_simplices(q, 2)]
    chars = [GL2Char(q, "linear", (i,)) for i in ones]
    chars += [GL2Char(q, "steinberg", (i,)) for i in ones]
    chars += [GL2Char(q, "principal", (i, j)) for i in ones for j in ones if i < j]
    chars += [GL2Char(q, "discrete", (k,)) for k in twos]
    return chars


def char_value(chi: GL2Char, c: ClassLabel) -> complex:
    if chi.q != c.q:
        raise WrongGroup("character and class over different fields")
    return gl2_table(chi.q).value(chi, c)


def _ordered_sum(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def frobenius_sum(q: int, c: ClassLabel, chars: Sequence[GL2Char] | None = None) -> complex:
    """sum over chi of chi(c) / chi(1), in table order."""
    table = gl2_table(q)
    chars = table.chars if chars is None else chars
    return _ordered_sum(table.value(chi, c) / chi.degree for chi in chars)


def round_checked(x: complex, scale: int = 1) -> int:
    """Round |G| * sum to an integer, failing loudly on a large residue."""
    val = x * scale
    n = round(val.real)
    residue = max(abs(val.real - n), abs(val.imag))
    if residue >= RESIDUE_LIMIT:
        raise PrecisionLoss(f"rounding residue {residue:.3g} exceeds {RESIDUE_LIMIT}")
    return int(n)


def frobenius_fiber_gl2(q: int, c: ClassLabel) -> int:
    """|{(x, y) : [x, y] = g}| for g in class c, via sum_chi chi(g)/chi(1)."""
    table = gl2_table(q)
    table.classify(c)
    return round_checked(frobenius_sum(q, c), table.order)


def type_sum_gl2(q: int, tau: TypeTau, c: ClassLabel) -> complex:
    if c.is_central():
        raise CentralClass("type sums are bounded only at non-central classes")
    table = gl2_table(q)
    chars = [chi for chi in table.chars if chi.type() == tau]
    return frobenius_sum(q, c, chars)


def chars_by_type(q: int) -> dict[TypeTau, list[GL2Char]]:
    out: dict[TypeTau, list[GL2Char]] = {}
    for chi in gl2_table(q).chars:
        out.setdefault(chi.type(), []).append(chi)
    return dict(sorted(out.items()))


def orthogonality_errors(q: int) -> tuple[float, float]:
    """Max deviation of row and column orthogonality from the identity pattern."""
    t = gl2_table(q)
    X = t.matrix
    rows = (X * t.class_sizes[None, :]) @ X.conj().T / t.order
    row_err = float(np.max(np.abs(rows - np.eye(len(t.chars)))))
    cols = X.T @ X.conj()
    col_err = float(np.max(np.abs(cols - np.diag(t.centralizer_orders.astype(float)))))
    return row_err, col_err
