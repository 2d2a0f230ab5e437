"""Command-line surface: evaluate function specs, report seminorms, run the
cross-verification harness over a seeded corpus, select disjoint segments,
and emit shattering certificates.

Output is deterministic: fixed column order, rows sorted before emission,
rationals as "p/q", floats at 12 significant digits.  `AVLIP_THREADS` caps
worker threads for the per-function corpus work; parallelism never changes
output bytes because rows are sorted at the end.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from . import covering as covering_mod
from . import shattering as shattering_mod
from .corpus import verification_corpus
from .funcs import (
    FunctionSpec,
    PiecewiseLinear,
    StepFunction,
    add,
    evaluate,
    from_json_obj,
    load_spec_file,
    materialize,
    regularize,
    scale,
)
from .maximal import check_weak_bound, maximal_evaluator
from .rational import INF, format_extended, is_finite, parse_rational
from .seminorms import strong_avg, weak_avg
from .slope import lipschitz_constant, local_slope
from .variation import total_variation

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class RunConfig:
    tol: Fraction
    cap: float
    grid_n: int
    seed: int
    fmt: str
    out: str | None
    threads: int


def _parse_tol(text: str) -> Fraction:
    # exact even for scientific notation
    return Fraction(Decimal(text))


def _threads_from_env() -> int:
    raw = os.environ.get("AVLIP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _config(args) -> RunConfig:
    return RunConfig(
        tol=_parse_tol(args.tol),
        cap=float(args.cap),
        grid_n=int(args.grid),
        seed=int(args.seed),
        fmt=args.format,
        out=args.out,
        threads=_threads_from_env(),
    )


def _load_function(args) -> FunctionSpec:
    if args.inline is not None:
        try:
            return from_json_obj(json.loads(args.inline))
        except (ValueError, KeyError) as exc:
            raise SystemExit(f"error: cannot parse inline spec: {exc}")
    if args.spec is None:
        raise SystemExit("error: provide --spec PATH or --inline JSON")
    try:
        return load_spec_file(args.spec)
    except (OSError, ValueError, KeyError) as exc:
        raise SystemExit(f"error: cannot load spec {args.spec}: {exc}")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction) and x.denominator > 10**18:
        return format_extended(float(x))  # display rounding only
    if isinstance(x, (Fraction, int)):
        return format_extended(Fraction(x))
    if isinstance(x, float):
        return format_extended(x)
    return str(x)


def _emit(rows: list[dict], columns: list[str], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = [{k: _fmt(r[k]) for k in columns} for r in rows]
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt(r[k]) for k in columns])
        text = buf.getvalue()
    else:
        cells = [[_fmt(r[k]) for k in columns] for r in rows]
        widths = [
            max(len(col), *(len(row[i]) for row in cells)) if cells else len(col)
            for i, col in enumerate(columns)
        ]
        lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    cfg = _config(args)
    f = _load_function(args)
    x = parse_rational(args.x)
    value = evaluate(f, x)
    slope = local_slope(f, x)
    rows = [
        {
            "x": x,
            "value": value,
            "local_slope": slope.value,
            "slope_witness": "" if slope.attained_at is None else slope.attained_at,
        }
    ]
    _emit(rows, ["x", "value", "local_slope", "slope_witness"], cfg.fmt, cfg.out)
    return 0


def _seminorm_summary(f: FunctionSpec, cfg: RunConfig) -> dict:
    g = materialize(f)
    v = total_variation(g)
    s = strong_avg(g, cfg.tol, cfg.cap)
    w = weak_avg(g, cfg.tol)
    lip = lipschitz_constant(g)
    chain_ok = (w.lower / 2 <= v + Fraction(1, 10**9)) and (
        s.is_divergent or v <= s.upper + cfg.tol
    )
    return {
        "variation": v,
        "strong_lower": s.lower,
        "strong_upper": "inf (cap exceeded)" if s.is_divergent else s.upper,
        "strong_verdict": s.verdict,
        "weak_lower": w.lower,
        "weak_upper": w.upper,
        "lipschitz": lip,
        "chain_verdict": "PASS" if chain_ok else "FAIL",
    }


_SEMINORM_COLUMNS = [
    "variation",
    "strong_lower",
    "strong_upper",
    "strong_verdict",
    "weak_lower",
    "weak_upper",
    "lipschitz",
    "chain_verdict",
]


def cmd_seminorms(args) -> int:
    cfg = _config(args)
    f = _load_function(args)
    row = _seminorm_summary(f, cfg)
    _emit([row], _SEMINORM_COLUMNS, cfg.fmt, cfg.out)
    return 0 if row["chain_verdict"] == "PASS" else 1


_VERIFY_COLUMNS = ["function_id", "check_name", "lhs", "rhs", "slack", "verdict"]

_WEAK_TYPE_T = (Fraction(1, 8), Fraction(1), Fraction(32))


def _row(fid: str, name: str, lhs, rhs, slack) -> dict:
    if is_finite(rhs) and is_finite(lhs):
        ok = lhs <= rhs + slack
    else:
        ok = not is_finite(rhs)
    return {
        "function_id": fid,
        "check_name": name,
        "lhs": lhs,
        "rhs": rhs if is_finite(rhs) else INF,
        "slack": slack,
        "verdict": "PASS" if ok else "FAIL",
    }


def _verify_base(fid: str, spec: FunctionSpec, cfg: RunConfig):
    """Per-function quantities shared across checks."""
    g = materialize(spec)
    return {
        "g": g,
        "v": total_variation(g),
        "s": strong_avg(g, cfg.tol, cfg.cap),
        "w": weak_avg(g, cfg.tol),
        "lip": lipschitz_constant(g),
    }


def _verify_rows(
    fid: str,
    base: dict,
    partner: dict | None,
    cfg: RunConfig,
    mutate: bool,
) -> list[dict]:
    g, v, s, w, lip = base["g"], base["v"], base["s"], base["w"], base["lip"]
    rows = [
        _row(fid, "weak_le_strong", w.lower, s.upper, cfg.tol),
        _row(fid, "strong_le_lipschitz", s.lower, lip, cfg.tol),
        _row(
            fid,
            "half_weak_le_variation",
            w.lower / 2,
            v / 3 if mutate else v,
            Fraction(1, 10**9),
        ),
        _row(fid, "variation_le_strong", v, s.upper, cfg.tol),
    ]

    w_scaled = weak_avg(scale(g, Fraction(-2)), cfg.tol)
    lo2, hi2 = 2 * w.lower, 2 * w.upper
    gap = max(w_scaled.lower - hi2, lo2 - w_scaled.upper)
    rows.append(_row(fid, "weak_homogeneity_alpha_-2", gap, Fraction(0), 3 * cfg.tol))

    if partner is not None:
        w_sum = weak_avg(add(g, partner["g"]), cfg.tol)
        rows.append(
            _row(
                fid,
                "weak_quasi_triangle",
                w_sum.lower,
                2 * (w.upper + partner["w"].upper),
                Fraction(1, 10**6),
            )
        )

    rng = random.Random(f"{cfg.seed}:{fid}")
    queries = [Fraction(rng.randint(0, 10**6), 10**6) for _ in range(200)]
    # the maximal function wants a right-continuous representative; the
    # regularized version has the same variation, so the bound is unchanged
    h = g
    if isinstance(h, StepFunction) and not h.is_right_continuous():
        h = regularize(h)
    ev = maximal_evaluator(h)
    if isinstance(h, PiecewiseLinear):
        queries.extend(h.breakpoints)
    violations = 0
    for x in queries:
        if ev.value(x) < local_slope(h, x).value:
            violations += 1
    rows.append(_row(fid, "maximal_domination", violations, 0, 0))

    worst = None
    for t in _WEAK_TYPE_T:
        rep = check_weak_bound(h, t, cfg.grid_n)
        excess = rep.estimate - rep.bound - rep.slack
        worst = excess if worst is None else max(worst, excess)
    rows.append(_row(fid, "weak_type_bound", worst, Fraction(0), Fraction(0)))
    return rows


def cmd_verify(args) -> int:
    cfg = _config(args)
    corpus = verification_corpus(cfg.seed, size=int(args.size))

    def run_base(item):
        fid, spec = item
        return _verify_base(fid, spec, cfg)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            bases = list(pool.map(run_base, corpus))
    else:
        bases = [run_base(item) for item in corpus]

    # quasi-triangle pairs are drawn from the random entries only; the named
    # constructions include step functions (sums undefined) and one
    # approximate family whose node denominators would bloat exact sums
    plf_ids = [i for i, (fid, _) in enumerate(corpus) if fid.startswith("plf_")]
    partners: dict[int, dict] = {}
    for k, idx in enumerate(plf_ids):
        partners[idx] = bases[plf_ids[(k + 1) % len(plf_ids)]]

    mutate = bool(args.self_test_mutant)
    jobs = list(range(len(corpus)))

    def run_rows(i: int) -> list[dict]:
        return _verify_rows(corpus[i][0], bases[i], partners.get(i), cfg, mutate)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            chunks = list(pool.map(run_rows, jobs))
    else:
        chunks = [run_rows(i) for i in jobs]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["function_id"], r["check_name"]))
    _emit(rows, _VERIFY_COLUMNS, cfg.fmt, cfg.out)
    return 0 if all(r["verdict"] == "PASS" for r in rows) else 1


def cmd_covering(args) -> int:
    cfg = _config(args)
    if args.inline is not None:
        raw = json.loads(args.inline)
    elif args.segments is not None:
        with open(args.segments, encoding="utf-8") as fh:
            raw = json.load(fh)
    else:
        raise SystemExit("error: provide --segments PATH or --inline JSON")
    try:
        segments = [
            covering_mod.Segment(parse_rational(str(l)), parse_rational(str(r)))
            for l, r in raw
        ]
    except (TypeError, ValueError) as exc:
        raise SystemExit(f"error: segments must be [left, right] pairs: {exc}")
    result = covering_mod.select_disjoint(segments)
    row = {
        "selected_indices": ";".join(str(i) for i in result.indices),
        "selected_total": result.selected_total,
        "union_measure": result.union_total,
        "half_bound_ok": result.meets_half_bound,
    }
    _emit(
        [row],
        ["selected_indices", "selected_total", "union_measure", "half_bound_ok"],
        cfg.fmt,
        cfg.out,
    )
    return 0 if result.meets_half_bound else 1


def cmd_shatter(args) -> int:
    cfg = _config(args)
    lip = parse_rational(args.lipschitz)
    gamma = parse_rational(args.gamma)
    tol = cfg.tol if args.tol != "1e-6" else Fraction(1, 100)
    if args.budget == "strong":
        m, cert = shattering_mod.fat_lower_bound_strong(lip, gamma, tol)
    else:
        m = int(args.m)
        instance = shattering_mod.dyadic_instance(m, gamma)
        cert = shattering_mod.check_shattered(
            instance,
            shattering_mod.dyadic_witness_provider(m, gamma),
            shattering_mod.WEAK,
            lip,
            tol,
        )
    rows = [
        {
            "labeling": e.code,
            "labels": "".join("+" if y > 0 else "-" for y in e.labels),
            "margin": e.margin,
            "seminorm_bound": e.seminorm_bound,
            "within_budget": e.within_budget(cert.budget_limit, cert.tol),
        }
        for e in cert.entries
    ]
    summary_cols = ["labeling", "labels", "margin", "seminorm_bound", "within_budget"]
    if cfg.fmt == "json":
        payload = {
            "budget": args.budget,
            "limit": _fmt(lip),
            "gamma": _fmt(gamma),
            "m": m,
            "points": [_fmt(x) for x in cert.instance.points],
            "offsets": [_fmt(r) for r in cert.instance.offsets],
            "labelings": [{k: _fmt(r[k]) for k in summary_cols} for r in rows],
            "passed": cert.passed,
        }
        text = json.dumps(payload, indent=2) + "\n"
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(rows, summary_cols, cfg.fmt, cfg.out)
    return 0 if cert.passed else 1


# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, spec_input: bool = False) -> None:
    p.add_argument("--tol", default="1e-6", help="bracket tolerance (default 1e-6)")
    p.add_argument("--cap", default="1e6", help="divergence cap (default 1e6)")
    p.add_argument("--grid", default="10000", help="grid size (default 10000)")
    p.add_argument("--seed", default=str(DEFAULT_SEED), help="corpus seed")
    p.add_argument(
        "--format", choices=("csv", "json", "table"), default="table",
        help="output format",
    )
    p.add_argument("--out", default=None, help="write output to this path")
    if spec_input:
        p.add_argument("--spec", default=None, help="function spec JSON file")
        p.add_argument("--inline", default=None, help="function spec JSON literal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avlip",
        description=(
            "Exact variation, local-slope seminorms, maximal functions, "
            "segment covering and shattering certificates on [0,1]."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function spec at a point")
    _add_common(p_eval, spec_input=True)
    p_eval.add_argument("--x", required=True, help="query point, e.g. 1/3")
    p_eval.set_defaults(fn=cmd_eval)

    p_sem = sub.add_parser("seminorms", help="variation / averages / chain verdict")
    _add_common(p_sem, spec_input=True)
    p_sem.set_defaults(fn=cmd_seminorms)

    p_ver = sub.add_parser("verify", help="cross-verification harness over a corpus")
    _add_common(p_ver)
    p_ver.add_argument("--size", default="100", help="random corpus size")
    p_ver.add_argument(
        "--self-test-mutant", action="store_true", help=argparse.SUPPRESS
    )
    p_ver.set_defaults(fn=cmd_verify)

    p_cov = sub.add_parser("covering", help="disjoint segment selection")
    _add_common(p_cov)
    p_cov.add_argument("--segments", default=None, help="JSON file of [l,r] pairs")
    p_cov.add_argument("--inline", default=None, help="JSON literal of [l,r] pairs")
    p_cov.set_defaults(fn=cmd_covering)

    p_sh = sub.add_parser("shatter", help="shattering certificates")
    _add_common(p_sh)
    p_sh.add_argument("--budget", choices=("strong", "weak"), required=True)
    p_sh.add_argument("--lipschitz", "-L", required=True, help="budget L")
    p_sh.add_argument("--gamma", required=True, help="margin gamma")
    p_sh.add_argument("--m", default="12", help="point count (weak budget)")
    p_sh.set_defaults(fn=cmd_shatter)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
