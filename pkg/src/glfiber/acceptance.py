"""The eleven acceptance checks, each returning a result with its data tables.

Used by ``glfiber reproduce`` and by tests/test_acceptance.py.  Measured
constants live in ``data/acceptance_fixtures.json`` (regenerate with
scripts/gen_fixtures.py); the checks compare fresh measurements against them.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .ffmatrix.classes import class_label, representative
from .ffmatrix.field import is_prime_power
from .ffmatrix.linalg import MatrixFq, group_order
from .ffmatrix.poly import count_irreducibles_formula, enumerate_irreducibles
from .fiber import (
    FAMILIES,
    central_fiber_sl,
    exponent_scan,
    fiber_count_character,
    fiber_count_naive,
    fiber_count_transporter,
)
from .flags import FlagSpec, all_subsets, compositions, count_flags, count_from_masks, induce_gl2, scalar_masks
from .gl2char import GL2Char, gl2_table, orthogonality_errors, type_sum_gl2
from .labels import count_by_type, enumerate_char_labels, enumerate_class_labels, enumerate_simplices
from .partitions import enumerate_partitions, enumerate_types, one_m_minus_2_two, ones
from .qpoly import cancel_sum, closed_form_rhs, green_Q

FIXTURE_SCHEMA = "acceptance-fixtures/v1"
GL2_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13)
TYPE_QS = (3, 4, 5, 7, 8, 9, 11, 13)
SCAN_QS = tuple(q for q in range(3, 32) if is_prime_power(q))
SLOPE_WINDOW = (4.8, 5.2)
BAND_FACTOR = 2.0
STABLE_RTOL = 1e-9


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    tables: dict[str, list[dict]] = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {verdict}  {self.title}: {self.detail}"


def load_fixtures() -> dict:
    text = resources.files("glfiber.data").joinpath("acceptance_fixtures.json").read_text()
    data = json.loads(text)
    if data.get("schema") != FIXTURE_SCHEMA:
        raise ValueError(f"fixture schema {data.get('schema')!r} != {FIXTURE_SCHEMA!r}")
    return data


def _timed(fn: Callable[[], CriterionResult]) -> CriterionResult:
    t0 = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t0
    return res


# -- 1-3: symbolic ------------------------------------------------------------


def criterion_1() -> CriterionResult:
    rows, ok = [], True
    for n in range(1, 11):
        for s in range(1, n + 1):
            if n % s:
                continue
            v = n // s
            fams = ["identity"] + (["transvection"] if s > 1 and n >= 2 else [])
            for fam in fams:
                lhs, rhs = cancel_sum(s, v, fam), closed_form_rhs(s, v, fam)
                equal = lhs == rhs
                deg_ok = True
                if fam == "transvection":
                    deg_ok = 2 * rhs.degree() == n * n - (v + 2) * n + 2
                ok &= equal and deg_ok
                rows.append({"n": n, "s": s, "v": v, "family": fam, "equal": equal, "rhs_degree": rhs.degree(), "degree_ok": deg_ok})
    bad = [f"({r['s']},{r['v']},{r['family'][:5]})" for r in rows if not r["equal"]]
    deg_bad = sum(not r["degree_ok"] for r in rows)
    detail = f"{len(rows)} (s, v, family) cases, {len(bad)} unequal, {deg_bad} degree failures"
    if bad:
        detail += ": " + " ".join(bad)
    return CriterionResult(1, "cancellation identities", ok, detail, {"cancel_check": rows})


def criterion_2() -> CriterionResult:
    rows, ok = [], True
    for m in range(1, 13):
        worst_other = None
        for lam in enumerate_partitions(m):
            nl = lam.n_lambda()
            if lam == ones(m):
                good = nl == m * (m - 1) // 2
            elif m >= 2 and lam == one_m_minus_2_two(m):
                good = nl == (m - 1) * (m - 2) // 2
            else:
                good = 2 * nl <= (m - 2) * (m - 3) + 2
                worst_other = nl if worst_other is None else max(worst_other, nl)
            ok &= good
        rows.append({"m": m, "n_1m": ones(m).n_lambda(), "max_other": worst_other})
    return CriterionResult(2, "n_lambda cases", ok, "all partitions of m <= 12", {"n_lambda": rows})


def criterion_3() -> CriterionResult:
    rows, ok, cases = [], True, 0
    for m in range(1, 11):
        lams = [ones(m)] + ([one_m_minus_2_two(m)] if m >= 2 else [])
        for lam in lams:
            bound = lam.n_lambda()
            for rho in enumerate_partitions(m):
                d = green_Q(rho, lam).degree
                good = d <= bound and (d == bound if lam == ones(m) else True)
                ok &= good
                cases += 1
            rows.append({"m": m, "lambda": str(lam), "n_lambda": bound})
    return CriterionResult(3, "Green degree bound", ok, f"{cases} (rho, lambda) pairs", {"green_degree": rows})


# -- 4-6: GL_2 table and duality --------------------------------------------------


def criterion_4() -> CriterionResult:
    rows, ok = [], True
    for q in GL2_QS:
        t = gl2_table(q)
        row_err, col_err = orthogonality_errors(q)
        sq = sum(c.degree**2 for c in t.chars)
        good = row_err < 1e-8 and col_err < 1e-8 and sq == t.order and len(t.chars) == q * q - 1
        ok &= good
        rows.append({"q": q, "chars": len(t.chars), "sum_deg_sq": sq, "order": t.order, "row_err": row_err, "col_err": col_err})
    worst = max(max(r["row_err"], r["col_err"]) for r in rows)
    return CriterionResult(4, "GL_2 orthogonality", ok, f"max error {worst:.3g}", {"orthogonality": rows})


def criterion_5() -> CriterionResult:
    rows, ok = [], True
    for q in (2, 3, 5):
        for c in gl2_table(q).classes:
            g = representative(c)
            brute = fiber_count_naive(2, q, "GL", g)
            char = fiber_count_character(2, q, "GL", c)
            ok &= brute == char
            rows.append({"q": q, "class": c.format(), "brute": brute, "character": char})
    t2 = {r["class"]: r["brute"] for r in rows if r["q"] == 2}
    ok &= t2.get("{t^2 + t + 1 -> (1)}") == 9 and t2.get("{t + 1 -> (1,1)}") == 0
    return CriterionResult(5, "Frobenius formula vs brute force", ok, f"{len(rows)} classes, q in (2, 3, 5)", {"frobenius": rows})


def criterion_6() -> CriterionResult:
    rows, ok = [], True
    for n in range(1, 5):
        for q in (2, 3, 4, 5):
            a = count_by_type(enumerate_class_labels(n, q))
            b = count_by_type(enumerate_char_labels(n, q))
            ok &= a == b
            rows.append({"n": n, "q": q, "classes": sum(a.values()), "characters": sum(b.values()), "types": len(a), "per_type_equal": a == b})
    srows = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        for s in range(1, 5):
            ns = len(enumerate_simplices(q, s))
            ni = len(enumerate_irreducibles(q, s))
            good = ns == ni == count_irreducibles_formula(q, s)
            ok &= good
            srows.append({"q": q, "s": s, "simplices": ns, "irreducibles": ni})
    return CriterionResult(6, "class/character duality", ok, f"{len(rows)} (n, q) pairs, {len(srows)} simplex counts", {"duality": rows, "simplices": srows})


# -- 7-9: types, flags, induction -----------------------------------------------------


def char_count_ratios() -> dict[str, dict[int, float]]:
    out: dict[str, dict[int, float]] = {}
    for q in TYPE_QS:
        for tau, k in count_by_type(enumerate_char_labels(2, q)).items():
            out.setdefault(str(tau), {})[q] = k / q**tau.dim
    return out


def type_sum_ratios() -> dict[str, dict[int, float]]:
    out: dict[str, dict[int, float]] = {}
    for q in TYPE_QS:
        classes = [c for c in gl2_table(q).classes if not c.is_central()]
        for tau in enumerate_types(2):
            worst = max(abs(type_sum_gl2(q, tau, c)) for c in classes)
            out.setdefault(str(tau), {})[q] = worst / q
    return out


def _stable(measured: float, recorded: float) -> bool:
    return math.isclose(measured, recorded, rel_tol=STABLE_RTOL, abs_tol=1e-12)


def criterion_7(fixtures: dict | None = None) -> CriterionResult:
    fx = fixtures or load_fixtures()
    rows, ok = [], True
    for name, kind in (("char_count", char_count_ratios()), ("type_sum", type_sum_ratios())):
        recorded = fx[f"{name}_constants"]
        for tau, per_q in sorted(kind.items()):
            C = max(per_q.values())
            good = _stable(C, recorded[tau]) and all(r <= recorded[tau] * (1 + STABLE_RTOL) for r in per_q.values())
            if name == "char_count":
                good &= all(r <= 1 for r in per_q.values())
            ok &= good
            for q, r in sorted(per_q.items()):
                rows.append({"quantity": name, "type": tau, "q": q, "ratio": r, "constant": recorded[tau]})
    return CriterionResult(7, "type counts and type sums", ok, f"constants stable over q in {TYPE_QS}", {"type_constants": rows})


def flag_sweep(ns=(2, 3, 4), qs=(2, 3)) -> list[dict]:
    rows = []
    for n in ns:
        for q in qs:
            for c in enumerate_class_labels(n, q):
                if c.is_central():
                    continue
                g = representative(c)
                for dims in compositions(n):
                    spec = FlagSpec(n, q, dims)
                    masks = scalar_masks(g, spec)
                    total = count_flags(spec)
                    subsets = all_subsets(spec.m)
                    for S in subsets:
                        stable = count_from_masks(masks, S, strict=False)
                        union = sum(count_from_masks(masks, T, strict=True) for T in subsets if T <= S)
                        e = spec.exponent(S)
                        rows.append({
                            "n": n, "q": q, "class": c.format(), "dims": ",".join(map(str, dims)),
                            "S": ",".join(map(str, sorted(S))), "stable": stable, "total": total,
                            "exponent": e, "constant": stable / total / q**e, "union_ok": union == stable,
                        })
    return rows


def criterion_8(fixtures: dict | None = None) -> CriterionResult:
    C = (fixtures or load_fixtures())["flag_constant"]
    rows = flag_sweep()
    worst = max(r["constant"] for r in rows)
    ok = worst <= C and all(r["union_ok"] for r in rows)
    return CriterionResult(8, "flag probability bound", ok, f"max constant {worst:.6g} vs C = {C} over {len(rows)} cases", {"flags": rows})


def criterion_9() -> CriterionResult:
    rows, ok, worst = [], True, 0.0
    for q in (2, 3, 4, 5, 7):
        t = gl2_table(q)
        for c in t.classes:
            for i in range(q - 1):
                for j in range(i, q - 1):
                    got = induce_gl2(i, j, c)
                    if i < j:
                        want = t.value(GL2Char(q, "principal", (i, j)), c)
                    else:
                        want = t.value(GL2Char(q, "linear", (i,)), c) + t.value(GL2Char(q, "steinberg", (i,)), c)
                    worst = max(worst, abs(got - want))
        rows.append({"q": q, "classes": len(t.classes), "max_error": worst})
    ok = worst < 1e-8
    return CriterionResult(9, "parabolic induction", ok, f"max error {worst:.3g}", {"induction": rows})


# -- 10-11: fibers -------------------------------------------------------------------


def scan_family_qs(family: str) -> tuple[int, ...]:
    # q = 3 has no determinant-one split regular element
    return tuple(q for q in SCAN_QS if not (family == "split" and q < 4))


def n3_ratios() -> list[dict]:
    rows = []
    for q in (2, 3):
        for c in enumerate_class_labels(3, q):
            if c.is_central():
                continue
            g = representative(c)
            count = fiber_count_transporter(3, q, "GL", g)
            rows.append({"q": q, "class": c.format(), "count": count, "ratio": count / q**10})
    return rows


def _identity_class_count(q: int) -> int:
    return group_order(2, q) * (q * q - 1)


def criterion_10(fixtures: dict | None = None) -> CriterionResult:
    fx = fixtures or load_fixtures()
    scan_rows, checks = [], []
    for fam in FAMILIES:
        res = exponent_scan(2, fam, scan_family_qs(fam), method="character")
        band = [r.c_q for r in res.reports if r.q >= 5]
        ratio = max(band) / min(band)
        slope_ok = SLOPE_WINDOW[0] <= res.slope <= SLOPE_WINDOW[1]
        band_ok = ratio <= BAND_FACTOR
        checks.append(f"{fam}: slope {res.slope:.4f} {'ok' if slope_ok else 'OUT'}, band {ratio:.3f} {'ok' if band_ok else 'OUT'}")
        for r in res.reports:
            scan_rows.append({"family": fam, "q": r.q, "count": r.count, "c_q": r.c_q, "slope": res.slope})
        checks.append(slope_ok and band_ok)
    n3 = n3_ratios()
    C3 = fx["n3_constant"]
    n3_max = max(r["ratio"] for r in n3)
    n3_ok = n3_max <= C3 * (1 + STABLE_RTOL) and _stable(n3_max, C3)
    ident = []
    for q in SCAN_QS:
        count = _identity_class_count(q)
        ident.append({"q": q, "count": count, "over_q5": count / q**5, "over_q6": count / q**6})
    # the identity fiber is checked against the character method at every q
    for r in ident:
        one = class_label(MatrixFq.identity(r["q"], 2))
        r["character"] = fiber_count_character(2, r["q"], "GL", one)
    ident_ok = all(r["character"] == r["count"] for r in ident)
    ident_ok &= all(r["over_q6"] <= 1 for r in ident)
    q5 = [r["over_q5"] for r in ident]
    ident_ok &= all(b > a for a, b in zip(q5, q5[1:])) and q5[-1] / q5[0] > SCAN_QS[-1] / SCAN_QS[0] / 2
    flags = [c for c in checks if isinstance(c, bool)]
    text = [c for c in checks if isinstance(c, str)]
    ok = all(flags) and n3_ok and ident_ok
    detail = "; ".join(text) + f"; n=3 max count/q^10 {n3_max:.6g} (C {C3:.6g}); identity contrast {'ok' if ident_ok else 'OUT'}"
    return CriterionResult(10, "flatness scaling", ok, detail, {"scan": scan_rows, "n3": n3, "identity": ident})


def criterion_11(include_slow: bool = False) -> CriterionResult:
    rows, ok = [], True
    cases = [(2, 3), (2, 5), (2, 7)] + ([(3, 7)] if include_slow else [])
    for n, q in cases:
        r = central_fiber_sl(n, q)
        A, B = r.witness
        witness_ok = A.commutator(B) == MatrixFq.scalar(q, n, r.zeta) and A.det() == 1 and B.det() == 1
        ok &= r.matches and witness_ok
        rows.append({"n": n, "q": q, "count": r.count, "expected_pgl": r.expected, "witness_ok": witness_ok,
                     "clock_shift_in_sl": r.clock_shift_in_sl, "A": A.format(), "B": B.format()})
    detail = ", ".join(f"n={r['n']} q={r['q']}: {r['count']}" for r in rows)
    return CriterionResult(11, "central fiber", ok, detail, {"central": rows})


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_all(include_slow: bool = False) -> list[CriterionResult]:
    out = []
    for k, fn in CRITERIA.items():
        out.append(_timed(lambda fn=fn, k=k: fn(include_slow) if k == 11 else fn()))
    return out


def measure_fixtures() -> dict:
    """Fresh measurement of every recorded constant."""
    return {
        "schema": FIXTURE_SCHEMA,
        "flag_constant": 4,
        "flag_measured_max": max(r["constant"] for r in flag_sweep()),
        "char_count_constants": {t: max(v.values()) for t, v in sorted(char_count_ratios().items())},
        "type_sum_constants": {t: max(v.values()) for t, v in sorted(type_sum_ratios().items())},
        "n3_constant": max(r["ratio"] for r in n3_ratios()),
    }
