"""Exact polynomials and rational functions in one variable over Z.

Also hosts the two closed-form Green polynomial families (lambda = 1^m and
lambda = 1^{m-2}2, with lambda given as Jordan block sizes) and the
weighted sums over p_s(Lambda_v) they cancel into.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .partitions import Partition, enumerate_partitions


class UnsupportedLambda(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class InvalidFamily(ValueError):
    pass


class RangeError(ValueError):
    pass


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Polynomial in t with integer coefficients, ``coeffs[i]`` of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()) -> None:
        self.coeffs = _strip(int(c) for c in coeffs)

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> IntPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> IntPoly:
        return _as_poly(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        out = IntPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def compose_power(self, s: int) -> IntPoly:
        """p(t) -> p(t^s)."""
        out = [0] * (s * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[s * i] = c
        return IntPoly(out)

    def divmod_exact(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division over Z for a divisor with leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if abs(other.lead) != 1:
            q, r = _divmod_q(_to_frac(self), _to_frac(other))
            if any(c.denominator != 1 for c in q + r):
                raise ArithmeticError("non-integral quotient")
            return IntPoly(int(c) for c in q), IntPoly(int(c) for c in r)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), IntPoly(rem)
        quot = [0] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * lead  # lead is +-1
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return IntPoly(quot), IntPoly(rem)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(x: IntPoly | int) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly.constant(x)


def format_poly(p: IntPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    terms: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms)


_TERM = re.compile(r"^(\d*)\*?(t(?:\^(\d+))?)?$")


def parse_poly(text: str) -> IntPoly:
    """Inverse of :func:`format_poly`, e.g. "1 - t + 3*t^2"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"cannot parse term {body!r}")
        c = int(m.group(1)) if m.group(1) else 1
        k = 0 if not m.group(2) else (int(m.group(3)) if m.group(3) else 1)
        coeffs[k] = coeffs.get(k, 0) + (c if sign == "+" else -c)
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return IntPoly(out)


def _to_frac(p: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        quot[k] = c
        if c:
            for j, x in enumerate(b):
                a[k + j] -= c * x
    return _trim(quot), _trim(a[: len(b) - 1])


def _primitive(p: list[Fraction]) -> IntPoly:
    if not p:
        return IntPoly()
    den = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, ints, 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(ints)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (gcd over Q, made primitive)."""
    x, y = _to_frac(a), _to_frac(b)
    while y:
        _, r = _divmod_q(x, y)
        x, y = y, r
    return _primitive(x) if x else IntPoly()


class RatFunc:
    """Reduced quotient of integer polynomials.

    Numerator and denominator share no polynomial factor and no common
    integer content; the denominator has positive leading coefficient.
    Rational constants live in the contents, so 1/2 is IntPoly(1)/IntPoly(2).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly | int, den: IntPoly | int = 1) -> None:
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = IntPoly(), IntPoly.constant(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = _exact_div_primitive(num, g)
            den = _exact_div_primitive(den, g)
        c = gcd(num.content(), den.content())
        if den.lead < 0:
            c = -c
        self.num = IntPoly(x // c for x in num.coeffs)
        self.den = IntPoly(x // c for x in den.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, IntPoly)):
            other = RatFunc(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_rat(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        return self + (-_as_rat(other))

    def __mul__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_rat(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_rat(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and abs(self.den.lead) == 1

    def degree(self) -> int:
        """deg(num) - deg(den)."""
        if self.num.is_zero():
            raise ValueError("degree of zero")
        return int(self.num.degree - self.den.degree)

    def __call__(self, x) -> Fraction:
        return Fraction(self.num(x)) / Fraction(self.den(x))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == IntPoly.constant(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_rat(x: RatFunc | IntPoly | int) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def _exact_div_primitive(a: IntPoly, g: IntPoly) -> IntPoly:
    q, r = _divmod_q(_to_frac(a), _to_frac(g))
    if r or any(c.denominator != 1 for c in q):
        raise ArithmeticError("gcd does not divide exactly")
    return IntPoly(int(c) for c in q)


def parse_ratfunc(text: str) -> RatFunc:
    if "/" not in text:
        return RatFunc(parse_poly(text.strip().strip("()")))
    num, den = text.split("/", 1)
    return RatFunc(parse_poly(num.strip().strip("()")), parse_poly(den.strip().strip("()")))


# -- q-analogs ---------------------------------------------------------------

ONE = IntPoly.constant(1)
T = IntPoly((0, 1))


def one_minus_t_pow(i: int) -> IntPoly:
    return IntPoly((1,) + (0,) * (i - 1) + (-1,))


def phi(m: int) -> IntPoly:
    """(1 - t)(1 - t^2)...(1 - t^m); phi(0) = 1."""
    if m < 0:
        raise RangeError("phi needs m >= 0")
    out = ONE
    for i in range(1, m + 1):
        out = out * one_minus_t_pow(i)
    return out


def _cycle_denominator(rho: Partition) -> IntPoly:
    out = ONE
    for i, r in rho.multiplicities().items():
        out = out * one_minus_t_pow(i) ** r
    return out


def green_Q(rho: Partition, lam: Partition) -> IntPoly:
    """Green polynomial for lam = 1^m or 1^{m-2}2 (Jordan block sizes).

    The closed form is a quotient; it must divide exactly.
    """
    m = lam.size
    if rho.size != m:
        raise SizeMismatch(f"|rho| = {rho.size} but |lambda| = {m}")
    if lam.parts == (1,) * m:
        numerator = phi(m)
    elif m >= 2 and lam.parts == (2,) + (1,) * (m - 2):
        r1 = rho.multiplicity(1)
        numerator = phi(m - 2) * IntPoly.monomial(r1 - 1, m) - phi(m - 2) * IntPoly.monomial(r1, m - 1) + phi(m - 2)
    else:
        raise UnsupportedLambda(f"no closed form implemented for lambda = {lam}")
    quot, rem = numerator.divmod_exact(_cycle_denominator(rho))
    if not rem.is_zero():
        raise ArithmeticError(f"Green closed form for rho={rho}, lambda={lam} is not a polynomial")
    return quot


def _family_lambda(n: int, family: str, s: int) -> Partition:
    if family == "identity":
        return Partition((1,) * n)
    if family == "transvection":
        if s == 1:
            raise InvalidFamily("the transvection identity needs s > 1")
        if n < 2:
            raise InvalidFamily("the transvection identity needs n >= 2")
        return Partition((2,) + (1,) * (n - 2))
    raise InvalidFamily(f"unknown family {family!r}")


def cancel_sum(s: int, v: int, family: str) -> RatFunc:
    """Sum of Q_rho^lambda(t) / z_rho over rho in p_s(Lambda_v)."""
    if s < 1 or v < 1:
        raise RangeError("s and v must be positive")
    n = s * v
    lam = _family_lambda(n, family, s)
    total = RatFunc(0)
    for mu in enumerate_partitions(v):
        rho = mu.p(s)
        total = total + RatFunc(green_Q(rho, lam), rho.z())
    return total


def closed_form_rhs(s: int, v: int, family: str) -> RatFunc:
    if s < 1 or v < 1:
        raise RangeError("s and v must be positive")
    n = s * v
    _family_lambda(n, family, s)
    den = phi(v).compose_power(s) * s**v
    if family == "identity":
        return RatFunc(phi(n), den)
    return RatFunc(one_minus_t_pow(n) * phi(n - 2), den)


def gauss_grassmannian(n: int, a: int) -> IntPoly:
    """Gaussian binomial [n choose a]_t; at t = q it counts a-subspaces of F_q^n."""
    if not 0 <= a <= n:
        raise RangeError(f"need 0 <= a <= n, got n={n}, a={a}")
    num = ONE
    den = ONE
    for i in range(a):
        num = num * one_minus_t_pow(n - i)
        den = den * one_minus_t_pow(i + 1)
    quot, rem = num.divmod_exact(den)
    if not rem.is_zero():
        raise ArithmeticError("Gaussian binomial did not divide exactly")
    return quot
