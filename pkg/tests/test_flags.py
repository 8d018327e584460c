import random
from fractions import Fraction
from itertools import product

import pytest

from glfiber.ffmatrix import GF, MatrixFq, class_label, representative
from glfiber.flags import (
    CentralElement,
    DimensionMismatch,
    FlagSpec,
    all_subsets,
    count_flags,
    count_from_masks,
    flag_probability_report,
    hall_coefficient,
    hall_table,
    induce_gl2,
    scalar_masks,
    stable_flag_count,
)
from glfiber.gl2char import char_value, gl2_table
from glfiber.labels import enumerate_class_labels
from glfiber.qpoly import gauss_grassmannian


def brute_stable_lines(g):
    """g-stable lines of F_q^2 (q prime), by checking g v in span(v)."""
    q = g.q
    lines = set()
    for v in product(range(q), repeat=2):
        if not any(v):
            continue
        span = frozenset(tuple(c * x % q for x in v) for c in range(q))
        gv = tuple(sum(g.rows[i][j] * v[j] for j in range(2)) % q for i in range(2))
        if gv in span:
            lines.add(span)
    return len(lines)


def test_count_flags_examples():
    assert count_flags(FlagSpec(2, 3, (1, 1))) == 4
    assert count_flags(FlagSpec(3, 2, (1, 1, 1))) == 21
    for n in range(2, 6):
        for a in range(1, n):
            assert count_flags(FlagSpec(n, 3, (n - a, a))) == gauss_grassmannian(n, a)(3)


def test_flag_spec_validation():
    with pytest.raises(ValueError):
        FlagSpec(3, 2, (3,))
    with pytest.raises(ValueError):
        FlagSpec(3, 2, (1, 1))


@pytest.mark.parametrize("n,q,dims", [(2, 2, (1, 1)), (3, 2, (1, 1, 1)), (3, 3, (1, 2)), (4, 2, (2, 2)), (4, 2, (1, 2, 1))])
def test_identity_stabilizes_every_flag(n, q, dims):
    spec = FlagSpec(n, q, dims)
    g = MatrixFq.identity(q, n)
    assert stable_flag_count(g, spec) == count_flags(spec)
    for S in all_subsets(spec.m):
        if S:
            assert stable_flag_count(g, spec, S, strict=True) == 0


def test_diag_example():
    g = MatrixFq.diag(5, [1, 2])
    spec = FlagSpec(2, 5, (1, 1))
    assert stable_flag_count(g, spec) == 2 == brute_stable_lines(g)
    rep = flag_probability_report(g, spec)
    assert rep.probability == Fraction(1, 3)
    assert rep.bound_constant == Fraction(5, 3)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_stable_lines_brute(q):
    for c in enumerate_class_labels(2, q):
        g = representative(c)
        assert stable_flag_count(g, FlagSpec(2, q, (1, 1))) == brute_stable_lines(g)


def test_nilpotent_example():
    for q in (2, 3, 5):
        g = MatrixFq(q, ((1, 1), (0, 1)))
        rep = flag_probability_report(g, FlagSpec(2, q, (1, 1)), {1})
        assert rep.probability == Fraction(1, q + 1)


def test_one_dim_pieces_strict_is_zero():
    for q in (2, 3):
        for c in enumerate_class_labels(2, q):
            if c.is_central():
                continue
            g = representative(c)
            spec = FlagSpec(2, q, (1, 1))
            for S in all_subsets(2):
                if S:
                    assert stable_flag_count(g, spec, S, strict=True) == 0


def test_central_rejected():
    with pytest.raises(CentralElement):
        flag_probability_report(MatrixFq.identity(3, 2), FlagSpec(2, 3, (1, 1)))


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_union_decomposition(n, q):
    from glfiber.flags import compositions

    rng = random.Random(n * q)
    classes = [c for c in enumerate_class_labels(n, q) if not c.is_central()]
    for c in rng.sample(classes, min(6, len(classes))):
        g = representative(c)
        for dims in compositions(n):
            spec = FlagSpec(n, q, dims)
            masks = scalar_masks(g, spec)
            for S in all_subsets(spec.m):
                strict = sum(count_from_masks(masks, T, True) for T in all_subsets(spec.m) if T <= S)
                assert strict == count_from_masks(masks, S, False)


def test_hall_examples():
    q = 5
    g = MatrixFq.diag(q, [1, 2])
    c_quot = class_label(MatrixFq(q, ((2,),)))
    c_line = class_label(MatrixFq(q, ((1,),)))
    assert hall_coefficient(g, c_quot, c_line) == 1
    with pytest.raises(DimensionMismatch):
        hall_coefficient(g, c_quot)


@pytest.mark.parametrize("q", [2, 3])
def test_hall_sum_is_stable_count(q):
    for c in enumerate_class_labels(3, q):
        g = representative(c)
        for dims in ((1, 2), (2, 1), (1, 1, 1)):
            spec = FlagSpec(3, q, dims)
            assert sum(hall_table(g, dims).values()) == stable_flag_count(g, spec, all_subsets(spec.m)[-1])


def test_hall_central():
    q = 3
    g = MatrixFq.scalar(q, 3, 2)
    table = hall_table(g, (1, 2))
    assert len(table) == 1
    (c1, c2), h = next(iter(table.items()))
    assert c1 == class_label(MatrixFq.scalar(q, 1, 2)) and c2 == class_label(MatrixFq.scalar(q, 2, 2))
    assert h == count_flags(FlagSpec(3, q, (1, 2)))


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_induction_matches_table(q):
    t = gl2_table(q)
    by_params = {(chi.family, chi.params): chi for chi in t.chars}
    for a in range(q - 1):
        for b in range(q - 1):
            for c in t.classes:
                val = induce_gl2(a, b, c)
                if a != b:
                    i, j = sorted((a, b))
                    want = char_value(by_params[("principal", (i, j))], c)
                else:
                    want = char_value(by_params[("linear", (a,))], c) + char_value(by_params[("steinberg", (a,))], c)
                assert abs(val - want) < 1e-9
    one = class_label(MatrixFq.identity(q, 2))
    assert abs(induce_gl2(0, 1 % (q - 1), one) - (q + 1)) < 1e-9


@pytest.mark.parametrize("q", [3, 4, 5])
def test_induction_norm(q):
    t = gl2_table(q)
    for a, b in ((0, 0), (0, 1)):
        vals = [induce_gl2(a, b, c) for c in t.classes]
        norm = sum(abs(v) ** 2 * s for v, s in zip(vals, t.class_sizes)) / t.order
        assert abs(norm - (2 if a == b else 1)) < 1e-9
