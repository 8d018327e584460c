"""Command-line front end: ``glfiber <subcommand> [options]``.

Exit status: 0 success, 1 usage error, 2 size guard exceeded, 3 acceptance failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Sequence

from .ffmatrix.classes import BLOCKS, GREEN, ClassLabel, centralizer_order, class_size, representative
from .ffmatrix.field import FieldTooLarge, factor_prime_power, is_prime_power
from .ffmatrix.linalg import MatrixFq
from .fiber import (
    FAMILIES,
    METHODS,
    TooLarge,
    central_fiber_sl,
    exponent_scan,
    family_class,
    fiber_report,
)
from .flags import FlagSpec, flag_probability_report, induce_gl2
from .labels import CharLabel, enumerate_char_labels, enumerate_class_labels, type_of
from .partitions import Partition, enumerate_partitions, enumerate_types
from .qpoly import cancel_sum, closed_form_rhs, format_poly, green_Q

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_ACCEPTANCE = 0, 1, 2, 3
CACHE_ENV = "GLFIBER_CACHE_DIR"
CACHE_SCHEMA = "glfiber-cache/v1"
FLOAT_DIGITS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 by default
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- formatting ---------------------------------------------------------------------


def fmt_float(x: float) -> str:
    return f"{round(float(x), FLOAT_DIGITS) + 0.0:.{FLOAT_DIGITS}f}"


def fmt_value(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, complex):
        re, im = fmt_float(x.real), fmt_float(x.imag)
        return f"{re}{'' if im.startswith('-') else '+'}{im}j"
    if isinstance(x, float):
        return fmt_float(x)
    if x is None:
        return ""
    return str(x)


def json_value(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, complex):
        return [float(fmt_float(x.real)), float(fmt_float(x.imag))]
    if isinstance(x, float):
        return float(fmt_float(x))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [json_value(v) for v in x]
    return str(x)


def csv_schema() -> dict[str, list[str]]:
    text = resources.files("glfiber.data").joinpath("csv_schema.json").read_text()
    return json.loads(text)["tables"]


def table_columns(table: str, rows: Sequence[dict]) -> list[str]:
    schema = csv_schema().get(table)
    if schema is None:
        raise KeyError(f"table {table!r} missing from the CSV schema")
    cols: list[str] = []
    for c in schema:
        if c.endswith("*"):
            prefix = c[:-1]
            cols.extend(k for k in (rows[0] if rows else {}) if k.startswith(prefix))
        else:
            cols.append(c)
    return cols


def render(table: str, rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    cols = table_columns(table, rows)
    if fmt == "json":
        payload = {"table": table, **(extra or {}), "rows": [{c: json_value(r.get(c)) for c in cols} for r in rows]}
        return json.dumps(json_value(payload), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([fmt_value(r.get(c)) for c in cols])
        return buf.getvalue()
    cells = [cols] + [[fmt_value(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    if extra:
        lines += [f"{k}: {fmt_value(v)}" for k, v in extra.items()]
    return "\n".join(lines) + "\n"


# -- cache ----------------------------------------------------------------------------


class Cache:
    """Versioned JSON files keyed by (kind, p, k, n); disabled when no directory is set."""

    def __init__(self, root: str | None) -> None:
        self.root = Path(root) if root else None

    def get_or_compute(self, kind: str, q: int, n: int, compute: Callable[[], Any]) -> Any:
        if self.root is None:
            return compute()
        p, k = factor_prime_power(q)
        path = self.root / CACHE_SCHEMA.replace("/", "-") / f"{kind}_p{p}_k{k}_n{n}.json"
        if path.exists():
            try:
                data = json.loads(path.read_text())
                if data.get("schema") == CACHE_SCHEMA:
                    return data["payload"]
            except (OSError, ValueError):
                pass
        payload = compute()
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"schema": CACHE_SCHEMA, "payload": payload}, sort_keys=True))
        return payload


def cached_class_labels(cache: Cache, n: int, q: int) -> list[ClassLabel]:
    data = cache.get_or_compute("classes", q, n, lambda: [c.to_json(BLOCKS) for c in enumerate_class_labels(n, q)])
    return [ClassLabel.from_json(d) for d in data]


def cached_char_labels(cache: Cache, n: int, q: int) -> list[CharLabel]:
    data = cache.get_or_compute("chars", q, n, lambda: [c.to_json() for c in enumerate_char_labels(n, q)])
    return [CharLabel.from_json(d) for d in data]


# -- argument helpers -------------------------------------------------------------------


def _field_size(text: str) -> int:
    q = int(text)
    if not is_prime_power(q):
        raise argparse.ArgumentTypeError(f"{q} is not a prime power")
    return q


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _q_list(text: str) -> list[int]:
    vals = _int_list(text)
    if ".." in text:
        return [q for q in vals if q >= 2 and is_prime_power(q)]
    bad = [q for q in vals if not is_prime_power(q)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime powers: {bad}")
    return vals


def element_order(g: MatrixFq) -> int:
    ident = MatrixFq.identity(g.q, g.n)
    x, k = g, 1
    while x != ident:
        x, k = x @ g, k + 1
    return k


def resolve_class(n: int, q: int, spec: str | None, matrix: str | None, cache: Cache) -> MatrixFq:
    if matrix:
        return MatrixFq.parse(q, matrix)
    if not spec:
        raise UsageError("give --class or --g")
    if spec == "identity":
        return MatrixFq.identity(q, n)
    if spec in FAMILIES:
        return representative(family_class(n, q, spec))
    if spec.startswith("order") and spec[5:].isdigit():
        k = int(spec[5:])
        for c in cached_class_labels(cache, n, q):
            g = representative(c)
            if element_order(g) == k:
                return g
        raise UsageError(f"no class of order {k} in GL_{n}(F_{q})")
    if spec.lstrip().startswith("{"):
        return representative(ClassLabel.from_json(json.loads(spec)), n)
    raise UsageError(f"unknown class {spec!r}: use identity, {', '.join(FAMILIES)}, orderK, a JSON label or --g")


# -- subcommands ----------------------------------------------------------------------


def cmd_partitions(a, cache) -> tuple[str, list[dict], dict]:
    rows = [
        {"partition": str(p), "size": p.size, "conjugate": str(p.conjugate()), "n_lambda": p.n_lambda(), "z": p.z()}
        for p in enumerate_partitions(a.n)
    ]
    return "partitions", rows, {}


def cmd_types(a, cache):
    rows = [
        {"type": str(t), "degree": t.degree, "dim": t.dim, "primary_factors": " * ".join(str(f) for f in t.primary_factors())}
        for t in enumerate_types(a.n)
    ]
    return "types", rows, {}


def cmd_greenq(a, cache):
    rho, lam = Partition.parse(a.rho), Partition.parse(a.lam)
    p = green_Q(rho, lam)
    return "greenq", [{"rho": str(rho), "lambda": str(lam), "polynomial": format_poly(p), "degree": p.degree}], {}


def cmd_cancel(a, cache):
    rows = []
    for s in range(1, a.n + 1):
        if a.n % s:
            continue
        v = a.n // s
        for fam in ("identity", "transvection"):
            if fam == "transvection" and (s == 1 or a.n < 2):
                continue
            ok = cancel_sum(s, v, fam) == closed_form_rhs(s, v, fam)
            rows.append({"n": a.n, "s": s, "v": v, "family": fam, "status": "OK" if ok else "MISMATCH"})
    return "cancel", rows, {}


def cmd_classes(a, cache):
    rows = []
    for c in cached_class_labels(cache, a.n, a.q):
        rows.append({
            "class": c.format(a.convention), "type": str(type_of(c)),
            "centralizer_order": centralizer_order(c), "class_size": class_size(c),
        })
    return "classes", rows, {}


def cmd_chars(a, cache):
    rows = [{"label": str(c), "type": str(type_of(c))} for c in cached_char_labels(cache, a.n, a.q)]
    return "chars", rows, {}


def cmd_gl2(a, cache):
    from .gl2char import frobenius_fiber_gl2, gl2_table

    t = gl2_table(a.q)
    if a.action == "table":
        rows = []
        for chi in t.chars:
            row: dict[str, Any] = {"family": chi.family, "params": chi.format_params(), "degree": chi.degree}
            for c in t.classes:
                row[f"value:{c.format(a.convention)}"] = t.value(chi, c)
            rows.append(row)
        return "gl2_table", rows, {}
    rows = [
        {"class": c.format(a.convention), "class_size": class_size(c), "fiber_count": frobenius_fiber_gl2(a.q, c)}
        for c in t.classes
    ]
    return "gl2_frobenius", rows, {}


def cmd_flags(a, cache):
    dims = tuple(_int_list(a.dims))
    spec = FlagSpec(a.n, a.q, dims)
    g = MatrixFq.parse(a.q, a.g)
    rep = flag_probability_report(g, spec, _int_list(a.S))
    row = {"n": a.n, "q": a.q, "dims": ",".join(map(str, dims)), "S": ",".join(map(str, sorted(_int_list(a.S)))), **rep.to_json()}
    return "flags_prob", [row], {}


def cmd_induce(a, cache):
    from .gl2char import gl2_table

    rows = [{"class": c.format(a.convention), "value": induce_gl2(a.alpha, a.beta, c)} for c in gl2_table(a.q).classes]
    return "induce", rows, {}


def cmd_fiber(a, cache):
    if a.action == "count":
        g = resolve_class(a.n, a.q, a.cls, a.g, cache)
        rep = fiber_report(a.n, a.q, a.group, g, [a.method], threads=a.threads)
        row = {
            "n": rep.n, "q": rep.q, "group": rep.group, "class": rep.label.format(a.convention), "g": g.format(),
            "method": a.method, "count": rep.count, "exponent": rep.exponent, "c_q": rep.c_q,
        }
        return "fiber", [row], {}
    if a.action == "scan":
        res = exponent_scan(
            a.n, a.family, _q_list(a.q_list), method=a.method, threads=a.threads, skip_missing=".." in a.q_list
        )
        rows = [
            {"family": a.family, "q": r.q, "class": r.label.format(a.convention), "count": r.count,
             "exponent": r.exponent, "c_q": r.c_q, "slope": res.slope}
            for r in res.reports
        ]
        return "fiber_scan", rows, {}
    r = central_fiber_sl(a.n, a.q, threads=a.threads)
    row = {
        "n": r.n, "q": r.q, "zeta": r.zeta, "count": r.count, "expected_pgl": r.expected, "matches": r.matches,
        "clock_shift_in_sl": r.clock_shift_in_sl, "A": r.witness[0].format(), "B": r.witness[1].format(),
    }
    return "fiber_central", [row], {}


def cmd_reproduce(a, cache) -> int:
    from .acceptance import run_all

    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    results = run_all(include_slow=a.slow)
    summary = []
    for r in results:
        for name, rows in r.tables.items():
            (out / f"c{r.number:02d}_{name}.csv").write_text(render(name, rows, "csv"))
        summary.append({"criterion": r.number, "verdict": "PASS" if r.passed else "FAIL", "title": r.title, "detail": r.detail})
    (out / "summary.csv").write_text(render("summary", summary, "csv"))
    (out / "summary.json").write_text(render("summary", summary, "json"))
    text = "\n".join(r.line() for r in results) + "\n"
    (out / "summary.txt").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_ACCEPTANCE


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for sharded counts")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--convention", choices=(GREEN, BLOCKS), default=GREEN, help="partition convention for class labels")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${CACHE_ENV}, else no cache)")

    p = _Parser(prog="glfiber", description="Character theory and commutator fibers of GL_n over finite fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("partitions", parents=[common], help="partitions of n with n_lambda and z")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("types", parents=[common], help="types of degree n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_types)

    s = sub.add_parser("greenq", parents=[common], help="Green polynomial Q_rho^lambda")
    s.add_argument("--rho", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_greenq)

    s = sub.add_parser("cancel", parents=[common], help="check the p_s cancellation identities for n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cancel)

    for name, func, helptext in (("classes", cmd_classes, "conjugacy classes of GL_n(F_q)"), ("chars", cmd_chars, "character labels of GL_n(F_q)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--q", type=_field_size, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("gl2", parents=[common], help="GL_2(F_q) character table or Frobenius fiber counts")
    s.add_argument("action", choices=("table", "frobenius"))
    s.add_argument("--q", type=_field_size, required=True)
    s.set_defaults(func=cmd_gl2)

    s = sub.add_parser("flags", parents=[common], help="g-stable flag probability")
    s.add_argument("action", choices=("prob",))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=_field_size, required=True)
    s.add_argument("--dims", required=True, help="quotient dimensions n1,n2,...")
    s.add_argument("--S", default="", help="index subset, e.g. 1,2")
    s.add_argument("--g", required=True, help="matrix, rows separated by ';'")
    s.set_defaults(func=cmd_flags)

    s = sub.add_parser("induce", parents=[common], help="parabolic induction alpha o beta on GL_2 classes")
    s.add_argument("--q", type=_field_size, required=True)
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--beta", type=int, required=True)
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("fiber", parents=[common], help="commutator fiber counts")
    s.add_argument("action", choices=("count", "scan", "central"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=_field_size)
    s.add_argument("--group", choices=("gl", "sl", "GL", "SL"), default="gl")
    s.add_argument("--class", dest="cls")
    s.add_argument("--g")
    s.add_argument("--method", choices=METHODS, default="transporter")
    s.add_argument("--q-list", default="3..31")
    s.add_argument("--family", choices=FAMILIES, default="transvection")
    s.set_defaults(func=cmd_fiber)

    s = sub.add_parser("reproduce", parents=[common], help="run every acceptance check and write tables")
    s.add_argument("--out", default="reproduce_out")
    s.add_argument("--slow", action="store_true", help="include the n = 3, q = 7 central fiber")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        cache = Cache(a.cache_dir or os.environ.get(CACHE_ENV))
        if a.command == "fiber":
            if a.action in ("count", "central") and a.q is None:
                raise UsageError("--q is required")
            a.group = a.group.upper()
        if a.command == "reproduce":
            return cmd_reproduce(a, cache)
        table, rows, extra = a.func(a, cache)
        sys.stdout.write(render(table, rows, a.format, extra))
        return EXIT_OK
    except UsageError as e:
        print(f"glfiber: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TooLarge, FieldTooLarge) as e:
        print(f"glfiber: guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, KeyError, ArithmeticError) as e:
        print(f"glfiber: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
