import random

import numpy as np
import pytest

from glfiber.ffmatrix import GF, MatrixFq, class_label, class_size, group_order, representative, sl_order
from glfiber.ffmatrix.linalg import group_elements
from glfiber.fiber import (
    NoPrimitiveRoot,
    TooLarge,
    central_fiber_sl,
    clock_shift,
    commutator_histogram,
    exponent_scan,
    family_class,
    fiber_count,
    fiber_count_character,
    fiber_count_naive,
    fiber_count_transporter,
    fit_slope,
)
from glfiber.labels import enumerate_class_labels


def brute_pairs(q, g, group="GL"):
    """Plain double loop over MatrixFq objects, independent of the vectorized kernels."""
    F = GF(q)
    elems = [MatrixFq(q, tuple(map(tuple, m.tolist()))) for m in group_elements(F, 2, group)]
    inv = [x.inverse() for x in elems]
    return sum(1 for x, xi in zip(elems, inv) for y, yi in zip(elems, inv) if x @ y @ xi @ yi == g)


def test_examples():
    assert fiber_count_naive(2, 2, "GL", MatrixFq(2, ((0, 1), (1, 1)))) == 9
    assert fiber_count_naive(2, 2, "GL", MatrixFq(2, ((1, 1), (0, 1)))) == 0
    assert fiber_count_naive(2, 3, "GL", MatrixFq.identity(3, 2)) == 48 * 8


@pytest.mark.parametrize("q", [2, 3])
def test_naive_against_plain_loop(q):
    for c in enumerate_class_labels(2, q):
        g = representative(c)
        assert fiber_count_naive(2, q, "GL", g) == brute_pairs(q, g)


def test_sl_naive_against_plain_loop():
    q = 3
    for g in (MatrixFq.identity(q, 2), MatrixFq.scalar(q, 2, 2), MatrixFq(q, ((1, 1), (0, 1)))):
        assert fiber_count_naive(2, q, "SL", g) == brute_pairs(q, g, "SL")


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_three_methods_agree_gl2(q):
    for c in enumerate_class_labels(2, q):
        g = representative(c)
        counts = {m: fiber_count(2, q, "GL", g, m) for m in ("brute", "transporter", "character")}
        assert len(set(counts.values())) == 1, (str(c), counts)


def test_transporter_matches_character_q7():
    q = 7
    for c in enumerate_class_labels(2, q):
        g = representative(c)
        assert fiber_count_transporter(2, q, "GL", g) == fiber_count_character(2, q, "GL", c)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 4), (2, 5), (3, 2)])
def test_sl_transporter_matches_naive(n, q):
    for c in enumerate_class_labels(n, q):
        g = representative(c)
        if g.det() != 1:
            continue
        assert fiber_count_transporter(n, q, "SL", g) == fiber_count_naive(n, q, "SL", g)


@pytest.mark.parametrize("n,q,group", [(2, 3, "GL"), (2, 5, "GL"), (2, 5, "SL"), (3, 2, "GL")])
def test_conservation(n, q, group):
    order = group_order(n, q) if group == "GL" else sl_order(n, q)
    assert sum(commutator_histogram(n, q, group).values()) == order * order


@pytest.mark.parametrize("q", [3, 5])
def test_conjugation_invariance(q):
    rng = random.Random(q)
    G = group_elements(GF(q), 2)
    for c in enumerate_class_labels(2, q):
        g = representative(c)
        h = MatrixFq(q, tuple(map(tuple, G[rng.randrange(len(G))].tolist())))
        assert fiber_count_transporter(2, q, "GL", h @ g @ h.inverse()) == fiber_count_transporter(2, q, "GL", g)


def test_identity_is_burnside_sum():
    for q in (3, 4, 5):
        classes = enumerate_class_labels(2, q)
        assert fiber_count_transporter(2, q, "GL", MatrixFq.identity(q, 2)) == group_order(2, q) * len(classes)


def test_threads_do_not_change_counts():
    q = 5
    for c in enumerate_class_labels(2, q)[:6]:
        g = representative(c)
        assert fiber_count_transporter(2, q, "GL", g, threads=3) == fiber_count_transporter(2, q, "GL", g, threads=1)


def test_guards():
    with pytest.raises(TooLarge):
        fiber_count_naive(3, 4, "GL", MatrixFq.identity(4, 3))
    with pytest.raises(TooLarge):
        fiber_count_transporter(4, 4, "GL", MatrixFq.identity(4, 4))


def test_membership_checked():
    with pytest.raises(ValueError):
        fiber_count_naive(2, 3, "SL", MatrixFq.diag(3, [1, 2]))


@pytest.mark.parametrize("q,expected", [(3, 24), (5, 120), (7, 336)])
def test_central_fiber_n2(q, expected):
    res = central_fiber_sl(2, q)
    assert res.count == expected == group_order(2, q) // (q - 1)
    A, B = res.witness
    zeta = MatrixFq.scalar(q, 2, res.zeta)
    assert A.det() == 1 and B.det() == 1
    assert A @ B @ A.inverse() @ B.inverse() == zeta


def test_central_fiber_brute_q3():
    res = central_fiber_sl(2, 3, method="brute")
    assert res.count == 24


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (3, 7), (3, 4), (2, 9)])
def test_clock_shift_commutator(n, q):
    A, B, zeta = clock_shift(n, q)
    assert A @ B @ A.inverse() @ B.inverse() == MatrixFq.scalar(q, n, zeta)
    F = GF(q)
    assert F.pow(zeta, n) == 1 and all(F.pow(zeta, k) != 1 for k in range(1, n))


def test_no_primitive_root():
    with pytest.raises(NoPrimitiveRoot):
        central_fiber_sl(2, 4)
    with pytest.raises(NoPrimitiveRoot):
        central_fiber_sl(3, 5)


def test_family_classes_are_noncentral():
    for q in (4, 5, 7, 8, 9):
        for fam in ("transvection", "split", "elliptic"):
            c = family_class(2, q, fam)
            assert not c.is_central() and representative(c).det() == 1


def test_fit_slope_exact_power():
    qs = [3, 5, 7, 11]
    assert abs(fit_slope(qs, [q**5 for q in qs]) - 5) < 1e-12


def test_transvection_count_closed_form():
    # brute force at q = 3 gives 36 = q^2 (q-1)^2 (q-2); the character method agrees beyond
    assert fiber_count_naive(2, 3, "GL", representative(family_class(2, 3, "transvection"))) == 36
    for q in (4, 5, 7, 8, 9, 11):
        c = family_class(2, q, "transvection")
        assert fiber_count_character(2, q, "GL", c) == q**2 * (q - 1) ** 2 * (q - 2)


def test_scan_skips_missing_split():
    res = exponent_scan(2, "split", [3, 4, 5], skip_missing=True)
    assert [r.q for r in res.reports] == [4, 5]
