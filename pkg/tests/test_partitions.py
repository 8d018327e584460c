import math
from collections import Counter
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from glfiber.partitions import (
    EMPTY,
    Partition,
    TypeTau,
    enumerate_partitions,
    enumerate_types,
    one_m_minus_2_two,
    ones,
    product as type_product,
)


def brute_partitions(n):
    """Every non-increasing tuple of positive ints summing to n, by filtering compositions."""
    out = set()

    def rec(left, acc):
        if left == 0:
            out.add(tuple(sorted(acc, reverse=True)))
            return
        for k in range(1, left + 1):
            rec(left - k, acc + [k])

    rec(n, [])
    return out


partitions_st = st.lists(st.integers(1, 6), max_size=6).map(lambda xs: Partition(tuple(sorted(xs, reverse=True))))


def test_conjugate_examples():
    assert EMPTY.conjugate() == EMPTY
    assert ones(5).conjugate() == Partition((5,))
    assert Partition((2, 1)).conjugate() == Partition((2, 1))


@given(partitions_st)
def test_conjugate_is_involution_and_transposes_diagram(lam):
    mu = lam.conjugate()
    assert mu.conjugate() == lam
    assert mu.size == lam.size
    assert list(mu) == [sum(1 for x in lam if x >= j) for j in range(1, (max(lam, default=0)) + 1)]


def test_n_lambda_examples():
    for m in range(2, 9):
        assert ones(m).n_lambda() == m * (m - 1) // 2
        assert one_m_minus_2_two(m).n_lambda() == (m - 1) * (m - 2) // 2
        assert Partition((m,)).n_lambda() == 0
    assert Partition((2, 2)).n_lambda() == 2


def test_z_examples():
    for n in range(1, 8):
        assert ones(n).z() == math.factorial(n)
        assert Partition((n,)).z() == n


@given(partitions_st)
def test_z_is_centralizer_order(lam):
    # |S_n| / class size, class size counted from the cycle-type formula independently
    n = lam.size
    mult = Counter(lam)
    size = math.factorial(n)
    for part, r in mult.items():
        size //= part**r * math.factorial(r)
    assert lam.z() * size == math.factorial(n)


@given(partitions_st, st.integers(1, 6))
def test_z_of_p_s(mu, s):
    # each part i becomes s*i with the same multiplicity, so z picks up s^{len(mu)}
    assert mu.p(s).z() == s ** len(mu) * mu.z()


def test_z_of_p_s_differs_from_size_power():
    mu = Partition((2,))
    assert mu.p(2).z() != 2**mu.size * mu.z()


def test_p_s_examples_and_image():
    assert Partition((2, 1)).p(1) == Partition((2, 1))
    assert ones(2).p(2) == Partition((2, 2))
    for s in range(1, 6):
        for v in range(0, 6):
            for mu in enumerate_partitions(v):
                assert mu.p(s).size == s * v


def test_enumerate_partitions_counts():
    assert enumerate_partitions(0) == [EMPTY]
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(10)) == 42
    for n in range(0, 13):
        got = enumerate_partitions(n)
        assert len(set(got)) == len(got)
        assert {tuple(p) for p in got} == brute_partitions(n)


def test_enumerate_partitions_reverse_lex():
    got = [tuple(p) for p in enumerate_partitions(7)]
    assert got == sorted(got, reverse=True)


def test_parse_round_trip():
    for n in range(0, 8):
        for lam in enumerate_partitions(n):
            assert Partition.parse(lam.exponent_str()) == lam
            if lam:
                assert Partition.parse(str(lam)) == lam


@given(partitions_st, partitions_st, partitions_st)
def test_partition_product(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * EMPTY == a
    assert (a * b).size == a.size + b.size


def test_types_n2_and_n1():
    assert sorted(str(t) for t in enumerate_types(2)) == sorted(["2->1", "1->1^2", "1->2", "1^2->1"])
    assert [str(t) for t in enumerate_types(1)] == ["1->1"]


def brute_types(n):
    """Generate-and-filter oracle: multisets of (lambda, mu) pairs with sum |lambda||mu| = n."""
    pieces = [(lam, mu) for a in range(1, n + 1) for b in range(1, n // a + 1)
              for lam in enumerate_partitions(a) for mu in enumerate_partitions(b)]
    found = set()

    def rec(start, left, chosen):
        if left == 0:
            found.add(tuple(sorted((tuple(l), tuple(m)) for l, m in chosen)))
            return
        for i in range(start, len(pieces)):
            lam, mu = pieces[i]
            if lam.size * mu.size <= left:
                rec(i, left - lam.size * mu.size, chosen + [(lam, mu)])

    rec(0, n, [])
    # a type maps distinct lambda to single mu: merge equal lambdas by multiplying mu
    types = set()
    for combo in found:
        merged = {}
        for lam, mu in combo:
            merged[lam] = tuple(sorted(merged.get(lam, ()) + mu, reverse=True))
        types.add(tuple(sorted(merged.items())))
    return types


def test_types_n3_n4_against_brute():
    for n in (3, 4):
        got = {tuple(sorted((tuple(l), tuple(m)) for l, m in t.entries)) for t in enumerate_types(n)}
        assert got == brute_types(n)
        assert len(got) == len(enumerate_types(n))


def test_types_factor_and_additivity():
    for n in range(1, 6):
        for t in enumerate_types(n):
            factors = t.primary_factors()
            assert all(f.is_primary() for f in factors)
            assert all(len(f.entries) == 1 for f in factors)
            assert type_product(factors) == t
            assert sum(f.degree for f in factors) == t.degree == n
            assert sum(f.dim for f in factors) == t.dim


def test_type_parse_round_trip():
    for t in enumerate_types(4):
        assert TypeTau.parse(str(t)) == t


def test_n_lambda_bound_exhaustive():
    for m in range(2, 13):
        for lam in enumerate_partitions(m):
            if lam in (ones(m), one_m_minus_2_two(m)):
                continue
            assert lam.n_lambda() <= (m - 2) * (m - 3) // 2 + 1
