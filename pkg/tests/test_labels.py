import pytest

from glfiber.ffmatrix import MatrixFq, class_label, enumerate_irreducibles, representative
from glfiber.labels import (
    CharLabel,
    Simplex,
    count_by_type,
    enumerate_char_labels,
    enumerate_class_labels,
    enumerate_simplices,
    max_eigenvalue_multiplicity,
    modes_of_substitution,
    type_of,
)
from glfiber.partitions import Partition, TypeTau, enumerate_partitions, enumerate_types, ones


def T(text):
    return TypeTau.parse(text)


def test_simplex_examples():
    assert [s.orbit() for s in enumerate_simplices(3, 1)] == [(0,), (1,)]
    assert [s.orbit() for s in enumerate_simplices(2, 2)] == [(1, 2)]


def test_simplex_counts_match_irreducibles():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for s in range(1, 5):
            assert len(enumerate_simplices(q, s)) == len(enumerate_irreducibles(q, s))


def test_simplex_representative_is_least():
    with pytest.raises(ValueError):
        Simplex(2, 2, 2)


def test_gl2_q3_label_counts():
    assert len(enumerate_class_labels(2, 3)) == 8
    assert len(enumerate_char_labels(2, 3)) == 8


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_gl1_labels(q):
    assert len(enumerate_class_labels(1, q)) == q - 1
    assert len(enumerate_char_labels(1, q)) == q - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_duality_per_type(n, q):
    classes = enumerate_class_labels(n, q)
    chars = enumerate_char_labels(n, q)
    assert len(classes) == len(chars)
    assert count_by_type(classes) == count_by_type(chars)
    assert set(count_by_type(classes)) <= set(enumerate_types(n))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_gl2_family_counts(q):
    counts = count_by_type(enumerate_class_labels(2, q))
    assert counts.get(T("2->1"), 0) == q - 1
    assert counts.get(T("1->1^2"), 0) == (q - 1) * (q - 2) // 2
    assert counts.get(T("1->2"), 0) == q * (q - 1) // 2
    assert counts.get(T("1^2->1"), 0) == q - 1


def test_type_examples():
    q = 5
    assert type_of(class_label(MatrixFq.scalar(q, 2, 3))) == T("2->1")
    s1, s2 = enumerate_simplices(q, 1)[:2]
    p1 = Partition((1,))
    assert type_of(CharLabel(q, ((s1, p1), (s2, p1)))) == T("1->1^2")
    d = enumerate_simplices(q, 2)[0]
    assert type_of(CharLabel(q, ((d, p1),))) == T("1->2")


def test_char_label_json_round_trip():
    for lab in enumerate_char_labels(3, 3):
        assert CharLabel.from_json(lab.to_json()) == lab


def test_modes_examples():
    q = 3
    ell = class_label(MatrixFq(q, ((0, 2), (1, 0))))
    modes = modes_of_substitution(Partition((2,)), ell)
    assert len(modes) == 1 and modes[0].entries[0][1] == Partition((1,))
    split = class_label(MatrixFq.diag(q, [1, 2]))
    assert modes_of_substitution(Partition((2,)), split) == []


@pytest.mark.parametrize("q", [2, 3, 5])
def test_modes_rho_ones(q):
    for n in range(1, 4):
        for c in enumerate_class_labels(n, q):
            if all(f.degree == 1 for f, _ in c.entries):
                modes = modes_of_substitution(ones(n), c)
                assert len(modes) == 1
                assert all(mu == ones(mu.size) for _, mu in modes[0].entries)


def test_modes_products():
    for q in (2, 3):
        for n in range(1, 5):
            for rho in enumerate_partitions(n):
                for c in enumerate_class_labels(n, q):
                    for m in modes_of_substitution(rho, c):
                        assert m.product() == rho


def _mode_cases(n_max=4, qs=(2, 3)):
    for q in qs:
        for n in range(2, n_max + 1):
            classes = enumerate_class_labels(n, q)
            for s in range(2, n + 1):
                if n % s:
                    continue
                for mu in enumerate_partitions(n // s):
                    rho = mu.p(s)
                    for c in classes:
                        for m in modes_of_substitution(rho, c):
                            if len(m.nonempty()) >= 2:
                                yield n, s, q, rho, c


def test_mode_eigenvalue_multiplicity_bound():
    # two distinct f with nonempty m(f) leave at most n - s for any single eigenvalue
    cases = list(_mode_cases())
    assert cases
    for n, s, q, rho, c in cases:
        assert max_eigenvalue_multiplicity(c) <= n - s


def test_mode_multiplicity_bound_is_attained():
    hits = [(n, s, str(rho)) for n, s, q, rho, c in _mode_cases() if max_eigenvalue_multiplicity(c) == n - s]
    assert (4, 2, "2,2") in hits

