"""Command-line front end.

Subcommands: dist, pgf, stats, sample, verify, series-check, asympt, plot-data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import asymptotics as asy
from .distribution import PathLengthDistribution, longest_path_counts, pgf
from .orientations import (
    BRUTE_FORCE_BUDGET,
    brute_force_distribution,
    format_matrix,
    has_forbidden_minor,
    is_acyclic,
    is_lonesum,
    iter_matrices,
    longest_path_dag,
    longest_path_via_classes,
)
from .sampler import empirical_distribution, make_rng, sample_orientation
from .series import expand_B, expand_F, expand_parity_parts

DEFAULT_SEED = 0
PLOT_NS = (2, 5, 10, 20, 30)


@dataclass
class OutputRecord:
    command: str
    arguments: dict[str, Any]
    seed: int | None = None
    payload: dict[str, Any] = field(default_factory=dict)
    format: str = "table"
    ok: bool = True

    def to_json(self) -> str:
        data = asdict(self)
        # exact payload values become decimal strings; metadata stays plain JSON
        data["payload"] = _jsonable(data["payload"])
        return json.dumps(data, indent=2)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"numerator": str(obj.numerator), "denominator": str(obj.denominator)}
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_rational(obj) -> Fraction:
    return Fraction(int(obj["numerator"]), int(obj["denominator"]))


def _f17(x: float) -> str:
    return format(x, ".17g")


# ---------------------------------------------------------------- commands


def cmd_dist(n: int, k: int, fmt: str = "table") -> OutputRecord:
    dist = longest_path_counts(n, k)
    poly = pgf(n, k)
    rows = [
        {"length": ell, "count": c, "probability": p}
        for ell, (c, p) in enumerate(zip(dist.counts, poly.coefficients))
        if c
    ]
    payload = {
        "n": n,
        "k": k,
        "total": dist.total,
        "rows": rows,
        "mean": poly.mean(),
        "variance": poly.variance(),
    }
    return OutputRecord("dist", {"n": n, "k": k}, payload=payload, format=fmt)


def cmd_pgf(n: int, k: int, fmt: str = "table") -> OutputRecord:
    poly = pgf(n, k)
    return OutputRecord(
        "pgf", {"n": n, "k": k}, payload={"coefficients": list(poly.coefficients)}, format=fmt
    )


def cmd_stats(n: int, k: int, fmt: str = "table") -> OutputRecord:
    poly = pgf(n, k)
    mean, var = poly.mean(), poly.variance()
    payload = {
        "mean": mean,
        "variance": var,
        "mean_float": float(mean),
        "variance_float": float(var),
    }
    return OutputRecord("stats", {"n": n, "k": k}, payload=payload, format=fmt)


def cmd_sample(
    n: int, k: int, count: int, seed: int = DEFAULT_SEED, fmt: str = "table", dump: bool = False
) -> OutputRecord:
    rng = make_rng(seed)
    matrices = []
    if dump:
        from collections import Counter

        hist: Counter = Counter()
        for _ in range(count):
            M = sample_orientation(n, k, rng)
            matrices.append(format_matrix(M))
            hist[longest_path_dag(M)] += 1
        from .sampler import EmpiricalDistribution

        emp = EmpiricalDistribution(n, k, count, hist)
    else:
        emp = empirical_distribution(n, k, count, rng)
    exact = longest_path_counts(n, k)
    payload: dict[str, Any] = {
        "histogram": {ell: c for ell, c in sorted(emp.histogram.items())},
        "proportions": emp.proportions(),
        "exact": {ell: Fraction(c, exact.total) for ell, c in exact.as_dict().items()},
        "tv_distance": emp.tv_distance(),
        "kolmogorov_distance": _empirical_kolmogorov(emp.histogram, count, exact),
    }
    if dump:
        payload["matrices"] = matrices
    return OutputRecord(
        "sample", {"n": n, "k": k, "count": count}, seed=seed, payload=payload, format=fmt
    )


def _empirical_kolmogorov(hist, count: int, exact: PathLengthDistribution) -> float:
    top = max(max(hist, default=0), len(exact.counts) - 1)
    emp_cdf = Fraction(0)
    ex_cdf = Fraction(0)
    worst = Fraction(0)
    for ell in range(top + 1):
        emp_cdf += Fraction(hist.get(ell, 0), count)
        ex_cdf += Fraction(exact.counts[ell], exact.total) if ell < len(exact.counts) else 0
        worst = max(worst, abs(emp_cdf - ex_cdf))
    return float(worst)


def _pairs(max_nk: int):
    return [(n, k) for n in range(1, max_nk + 1) for k in range(1, max_nk // n + 1)]


def run_verify(
    max_nk: int,
    counts_fn: Callable[[int, int], PathLengthDistribution] = longest_path_counts,
    series_order: int = 6,
) -> OutputRecord:
    """Oracle, bijection and series checks; ``counts_fn`` is injectable for fault tests."""
    if max_nk < 1 or max_nk > BRUTE_FORCE_BUDGET:
        raise ValueError(f"max_nk must be in 1..{BRUTE_FORCE_BUDGET}")
    checks = []

    failure = None
    for n, k in _pairs(max_nk):
        brute = brute_force_distribution(n, k)
        formula = counts_fn(n, k)
        if brute.counts != formula.counts or brute.total != formula.total:
            failure = {"n": n, "k": k, "brute_force": list(brute.counts), "formula": list(formula.counts)}
            break
    checks.append({"name": "oracle", "passed": failure is None, "counterexample": failure})

    failure = None
    for n, k in _pairs(min(max_nk, 12)):
        for M in iter_matrices(n, k):
            lonesum = is_lonesum(M)
            if lonesum != is_acyclic(M) or lonesum == has_forbidden_minor(M):
                failure = {"matrix": format_matrix(M), "lonesum": lonesum}
                break
            if lonesum and longest_path_via_classes(M) != longest_path_dag(M):
                failure = {
                    "matrix": format_matrix(M),
                    "via_classes": longest_path_via_classes(M),
                    "dag": longest_path_dag(M),
                }
                break
        if failure:
            break
    checks.append({"name": "bijection", "passed": failure is None, "counterexample": failure})

    order = min(series_order, max_nk)
    checks.append(_series_check(order, counts_fn))
    ok = all(c["passed"] for c in checks)
    return OutputRecord("verify", {"max_nk": max_nk}, payload={"checks": checks}, ok=ok)


def _series_check(order: int, counts_fn=longest_path_counts) -> dict:
    F = expand_F(order)
    egf = F.egf_counts()
    failure = None
    for n in range(1, order + 1):
        for k in range(1, order + 1):
            dist = counts_fn(n, k)
            for ell in range(F.u_width):
                want = dist.counts[ell] if ell < len(dist.counts) else 0
                got = egf.get((n, k, ell), 0)
                if got != want:
                    failure = {"n": n, "k": k, "length": ell, "series": got, "formula": want}
                    break
            if failure:
                break
        if failure:
            break
    B = expand_B(order)
    specialized_ok = F.at_u(1) == B.at_u(1)
    odd, even = expand_parity_parts(order)
    parity_ok = odd + even == F
    passed = failure is None and specialized_ok and parity_ok
    return {
        "name": "series",
        "passed": passed,
        "order": order,
        "coefficients_match": failure is None,
        "u1_matches_B": specialized_ok,
        "parity_parts_sum": parity_ok,
        "counterexample": failure,
    }


def cmd_verify(max_nk: int) -> OutputRecord:
    return run_verify(max_nk)


def cmd_series_check(order: int) -> OutputRecord:
    check = _series_check(order)
    return OutputRecord("series-check", {"order": order}, payload=check, ok=check["passed"])


def cmd_asympt(n_list, u_list, curvature: bool = False, grid_size: int = 256) -> OutputRecord:
    mean_est = asy.mean_asymptotic()
    var_est = asy.variance_asymptotic()
    rows = []
    for n in n_list:
        poly = pgf(n, n)
        mean, var = float(poly.mean()), float(poly.variance())
        row = {
            "n": n,
            "mean_exact": mean,
            "mean_asymptotic": mean_est.value_at(n),
            "variance_exact": var,
            "variance_asymptotic": var_est.value_at(n),
            "kolmogorov": asy.tv_to_gaussian(n),
            "pb_ratio": asy.pb_diagonal_ratio(n),
        }
        for u in u_list:
            row[f"residual_u={u}"] = asy.quasi_power_residual(n, u)
        rows.append(row)
    payload: dict[str, Any] = {
        "mean_leading": mean_est.leading,
        "mean_constant": mean_est.constant,
        "variance_leading": var_est.leading,
        "variance_constant": var_est.constant,
        "rows": rows,
    }
    if curvature:
        payload["curvature"] = {
            "theta=0": asy.curvature(0.0, 1.0),
            "theta=pi": asy.curvature(math.pi, 1.0),
        }
        payload["minimality"] = [
            asdict(asy.certify_strict_minimality(u, grid_size)) for u in (0.97, 1.0, 1.03)
        ]
    return OutputRecord(
        "asympt", {"n": list(n_list), "u": list(u_list), "curvature": curvature}, payload=payload
    )


def plot_rows(n_list=PLOT_NS):
    rows = []
    for n in n_list:
        dist = longest_path_counts(n, n)
        for ell, c in enumerate(dist.counts):
            if c:
                rows.append((n, ell, c / dist.total))
    return rows


def cmd_plotdata(n_list, out_path: str | None) -> OutputRecord:
    rows = plot_rows(n_list)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "length", "probability"])
    for n, ell, p in rows:
        writer.writerow([n, ell, _f17(p)])
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OutputRecord(
        "plot-data", {"n": list(n_list), "out": out_path}, payload={"csv": text}, format="csv"
    )


# ---------------------------------------------------------------- rendering


def _show(value) -> str:
    if isinstance(value, float):
        return _f17(value)
    return str(value)


def render_table(record: OutputRecord) -> str:
    p = record.payload
    lines = []
    if record.command == "dist":
        lines.append(f"K_{{{p['n']},{p['k']}}}: {p['total']} acyclic orientations")
        lines.append(f"{'length':>6}  {'count':>20}  probability")
        for row in p["rows"]:
            lines.append(f"{row['length']:>6}  {row['count']:>20}  {row['probability']}")
        lines.append(f"mean     = {p['mean']}")
        lines.append(f"variance = {p['variance']}")
    elif record.command == "pgf":
        terms = [f"({c})u^{ell}" for ell, c in enumerate(p["coefficients"]) if c]
        lines.append(" + ".join(terms))
    elif record.command == "sample":
        lines.append(f"seed {record.seed}, {record.arguments['count']} samples")
        lines.append(f"{'length':>6}  {'count':>8}  {'empirical':>10}  exact")
        for ell, c in p["histogram"].items():
            lines.append(
                f"{ell:>6}  {c:>8}  {p['proportions'][ell]:>10.6f}  {float(p['exact'].get(ell, 0)):.6f}"
            )
        lines.append(f"tv distance         = {_f17(p['tv_distance'])}")
        lines.append(f"kolmogorov distance = {_f17(p['kolmogorov_distance'])}")
        for text in p.get("matrices", []):
            lines.append(text.rstrip("\n"))
    elif record.command == "verify":
        for c in p["checks"]:
            lines.append(f"{c['name']:<10} {'PASS' if c['passed'] else 'FAIL'}")
            if c.get("counterexample"):
                lines.append(f"  counterexample: {json.dumps(_jsonable(c['counterexample']))}")
    elif record.command == "asympt":
        lines.append(f"mean     ~ {_f17(p['mean_leading'])} n + {_f17(p['mean_constant'])}")
        lines.append(f"variance ~ {_f17(p['variance_leading'])} n + {_f17(p['variance_constant'])}")
        if p["rows"]:
            keys = list(p["rows"][0])
            lines.append("  ".join(f"{key:>22}" for key in keys))
            for row in p["rows"]:
                lines.append("  ".join(f"{_show(row[key]):>22}" for key in keys))
        if "curvature" in p:
            for key, val in p["curvature"].items():
                lines.append(f"curvature({key}, u=1) = {_f17(val)}")
            for rep in p["minimality"]:
                lines.append(
                    f"minimality u={rep['u']}: floor {rep['off_center_floor']:.6g}, "
                    f"back-half max {rep['max_modulus_back_half']:.6f}, "
                    f"bound {rep['modulus_bound']:.6f}, {'PASS' if rep['passed'] else 'FAIL'}"
                )
    elif record.command == "plot-data":
        lines.append(p["csv"].rstrip("\n"))
    else:
        for key, value in p.items():
            lines.append(f"{key} = {_show(value)}")
    return "\n".join(lines)


def render(record: OutputRecord) -> str:
    if record.format == "json":
        return record.to_json()
    return render_table(record)


# ---------------------------------------------------------------- parsing


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _int_list(text: str) -> list[int]:
    return [_positive(t) for t in text.split(",") if t]


def _float_list(text: str) -> list[float]:
    values = [float(t) for t in text.split(",") if t]
    if any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("u values must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acyclic-bipartite",
        description="Longest paths in random acyclic orientations of K_{n,k}.",
        epilog="K_{0,k} has exactly one (empty) orientation, with longest path 0.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def sized(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("n", type=_positive)
        p.add_argument("k", type=_positive)
        p.add_argument("--format", choices=("table", "json"), default="table")
        return p

    sized("dist", "exact longest-path counts, PGF and moments")
    sized("pgf", "probability generating polynomial")
    sized("stats", "exact mean and variance")

    p = sized("sample", "uniform samples and their path-length histogram")
    p.add_argument("count", type=_positive)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--dump-matrices", action="store_true")

    p = sub.add_parser("verify", help="oracle, bijection and series checks")
    p.add_argument("--max-nk", type=_positive, default=16)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("series-check", help="closed-form series vs counts")
    p.add_argument("--order", type=_positive, default=8)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("asympt", help="exact vs asymptotic moments and diagnostics")
    p.add_argument("--n", dest="n_list", type=_int_list, default=[10, 20, 40])
    p.add_argument("--u", dest="u_list", type=_float_list, default=[0.95, 1.05])
    p.add_argument("--curvature", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("plot-data", help="CSV of P(length = l) for K_{n,n}")
    p.add_argument("--n", dest="n_list", type=_int_list, default=list(PLOT_NS))
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "table")
    try:
        if args.command == "dist":
            record = cmd_dist(args.n, args.k, fmt)
        elif args.command == "pgf":
            record = cmd_pgf(args.n, args.k, fmt)
        elif args.command == "stats":
            record = cmd_stats(args.n, args.k, fmt)
        elif args.command == "sample":
            record = cmd_sample(args.n, args.k, args.count, args.seed, fmt, args.dump_matrices)
        elif args.command == "verify":
            if args.max_nk > BRUTE_FORCE_BUDGET:
                parser.error(f"--max-nk must be at most {BRUTE_FORCE_BUDGET}")
            record = cmd_verify(args.max_nk)
        elif args.command == "series-check":
            record = cmd_series_check(args.order)
        elif args.command == "asympt":
            record = cmd_asympt(args.n_list, args.u_list, args.curvature)
        else:
            record = cmd_plotdata(args.n_list, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    record.format = fmt
    if args.command == "plot-data" and fmt == "csv":
        if not args.out:
            sys.stdout.write(record.payload["csv"])
        return 0
    print(render(record))
    return 0 if record.ok else 1


if __name__ == "__main__":
    sys.exit(main())
