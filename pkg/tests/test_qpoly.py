from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from glfiber.partitions import Partition, enumerate_partitions, one_m_minus_2_two, ones
from glfiber.qpoly import (
    IntPoly,
    RatFunc,
    SizeMismatch,
    cancel_sum,
    closed_form_rhs,
    format_poly,
    gauss_grassmannian,
    green_Q,
    parse_poly,
    phi,
)

t = sympy.symbols("t")


def to_sympy(p):
    if isinstance(p, RatFunc):
        return to_sympy(p.num) / to_sympy(p.den)
    return sum(c * t**i for i, c in enumerate(p.coeffs))


def sympy_phi(m):
    return sympy.prod([1 - t**i for i in range(1, m + 1)])


coeffs_st = st.lists(st.integers(-20, 20), max_size=6)
nonzero_poly = coeffs_st.filter(lambda c: any(c)).map(IntPoly)


def test_phi_examples():
    assert phi(0) == IntPoly((1,))
    assert phi(1) == IntPoly((1, -1))
    assert phi(2) == IntPoly((1, -1, -1, 1))
    for m in range(7):
        assert sympy.expand(to_sympy(phi(m)) - sympy_phi(m)) == 0


@given(coeffs_st, coeffs_st)
def test_intpoly_ring_ops_match_sympy(a, b):
    pa, pb = IntPoly(a), IntPoly(b)
    assert sympy.expand(to_sympy(pa * pb) - to_sympy(pa) * to_sympy(pb)) == 0
    assert sympy.expand(to_sympy(pa + pb) - to_sympy(pa) - to_sympy(pb)) == 0


@given(nonzero_poly, nonzero_poly, nonzero_poly, nonzero_poly)
def test_ratfunc_field_ops(a, b, c, d):
    x, y = RatFunc(a, b), RatFunc(c, d)
    assert x * (RatFunc(b, a)) == RatFunc(1)
    assert sympy.simplify(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
    assert (x + y) - y == x


@given(coeffs_st)
def test_format_parse_round_trip(c):
    p = IntPoly(c)
    assert parse_poly(format_poly(p)) == p


def test_green_Q_examples():
    assert green_Q(ones(2), ones(2)) == IntPoly((1, 1))
    assert green_Q(Partition((2,)), ones(2)) == IntPoly((1, -1))
    assert green_Q(Partition((2,)), Partition((2,))) == IntPoly((1,))


def sympy_green_Q(rho, lam):
    """Sympy transcription of the two closed forms, cancelled by sympy rather than by qpoly."""
    m = rho.size
    den = sympy.prod([1 - t**r for r in rho])
    if lam == ones(m):
        return sympy.cancel(sympy_phi(m) / den)
    r1 = sum(1 for r in rho if r == 1)
    return sympy.cancel(sympy_phi(m - 2) * ((r1 - 1) * t**m - r1 * t ** (m - 1) + 1) / den)


def test_green_Q_matches_independent_formula():
    for m in range(2, 9):
        for rho in enumerate_partitions(m):
            for lam in (ones(m), one_m_minus_2_two(m)):
                got = to_sympy(green_Q(rho, lam))
                assert sympy.expand(got - sympy_green_Q(rho, lam)) == 0


def test_green_Q_at_t0_is_one():
    # the constant term of each Q-polynomial here is 1
    for m in range(2, 8):
        for rho in enumerate_partitions(m):
            assert green_Q(rho, ones(m))(0) == 1


def test_green_Q_size_mismatch():
    with pytest.raises(SizeMismatch):
        green_Q(Partition((2,)), ones(3))


def test_green_Q_degree_bound():
    for m in range(2, 11):
        for rho in enumerate_partitions(m):
            assert green_Q(rho, ones(m)).degree == ones(m).n_lambda()
            assert green_Q(rho, one_m_minus_2_two(m)).degree <= one_m_minus_2_two(m).n_lambda()


def test_cancel_examples():
    for n in range(1, 13):
        assert cancel_sum(1, n, "identity") == RatFunc(1)
    assert cancel_sum(2, 1, "transvection") == RatFunc(1, 2)
    assert closed_form_rhs(2, 1, "transvection") == RatFunc(1, 2)
    for n in range(1, 8):
        expected = RatFunc(phi(n), IntPoly((1,) + (0,) * (n - 1) + (-1,)) * n)
        assert cancel_sum(n, 1, "identity") == expected
    assert closed_form_rhs(1, 5, "identity") == RatFunc(1)
    rhs = to_sympy(closed_form_rhs(2, 2, "identity"))
    assert sympy.simplify(rhs - sympy_phi(4) / (4 * (1 - t**2) * (1 - t**4))) == 0


def test_cancel_sum_s2_v2_against_sympy():
    # direct expansion over rho in p_2(Lambda_2) = {(2,2), (4)}
    lhs = to_sympy(cancel_sum(2, 2, "identity"))
    direct = sympy_phi(4) / (8 * (1 - t**2) ** 2) + sympy_phi(4) / (4 * (1 - t**4))
    assert sympy.simplify(lhs - direct) == 0


def test_cancel_holds_when_s_or_v_is_one():
    for n in range(1, 11):
        for s, v in ((1, n), (n, 1)):
            for fam in ("identity", "transvection"):
                if fam == "transvection" and s == 1:
                    continue
                assert cancel_sum(s, v, fam) == closed_form_rhs(s, v, fam)


def test_transvection_rhs_degree():
    for n in range(2, 11):
        for s in range(2, n + 1):
            if n % s == 0:
                v = n // s
                assert 2 * closed_form_rhs(s, v, "transvection").degree() == n * n - (v + 2) * n + 2


def brute_subspaces(q, n, k):
    """Count k-dim subspaces of F_q^n (q prime) as distinct row spaces."""
    vecs = list(product(range(q), repeat=n))
    spaces = set()

    def span(basis):
        out = set()
        for cs in product(range(q), repeat=len(basis)):
            out.add(tuple(sum(c * b[i] for c, b in zip(cs, basis)) % q for i in range(n)))
        return frozenset(out)

    for basis in product(vecs, repeat=k):
        sp = span(basis)
        if len(sp) == q**k:
            spaces.add(sp)
    return len(spaces)


def test_gauss_grassmannian_examples():
    assert gauss_grassmannian(2, 1) == IntPoly((1, 1))
    for n in range(5):
        assert gauss_grassmannian(n, 0) == IntPoly((1,))
    assert gauss_grassmannian(4, 2)(2) == 35


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 3, 2), (2, 4, 2), (3, 3, 1), (3, 2, 1), (5, 2, 1), (3, 3, 2)])
def test_gauss_grassmannian_vs_brute(q, n, k):
    assert gauss_grassmannian(n, k)(q) == brute_subspaces(q, n, k)
