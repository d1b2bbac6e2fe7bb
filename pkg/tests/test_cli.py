import csv
import io
import json
import math
from fractions import Fraction

import pytest

from acyclic_bipartite import cli
from acyclic_bipartite.distribution import PathLengthDistribution, longest_path_counts, pgf
from acyclic_bipartite.orientations import is_lonesum, parse_matrix


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_dist_table(capsys):
    code, out = run(capsys, "dist", "2", "2")
    assert code == 0
    assert "17/7" in out
    assert "26/49" in out


def test_dist_one_by_one(capsys):
    code, out = run(capsys, "dist", "1", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [(r["length"], r["count"]) for r in data["payload"]["rows"]] == [("1", "2")]


def test_dist_six_by_six(capsys):
    _, out = run(capsys, "dist", "6", "6", "--format", "json")
    assert json.loads(out)["payload"]["total"] == "22934774"


@pytest.mark.parametrize("argv", [["dist", "0", "2"], ["dist", "2", "-1"], ["pgf", "x", "1"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code != 0


def test_json_round_trip(capsys):
    _, out = run(capsys, "dist", "7", "5", "--format", "json")
    payload = json.loads(out)["payload"]
    dist = longest_path_counts(7, 5)
    assert int(payload["total"]) == dist.total
    assert {int(r["length"]): int(r["count"]) for r in payload["rows"]} == dist.as_dict()
    probs = {int(r["length"]): cli.parse_rational(r["probability"]) for r in payload["rows"]}
    assert probs == {ell: Fraction(c, dist.total) for ell, c in dist.as_dict().items()}
    poly = pgf(7, 5)
    assert cli.parse_rational(payload["mean"]) == poly.mean()
    assert cli.parse_rational(payload["variance"]) == poly.variance()


def test_pgf_and_stats(capsys):
    _, out = run(capsys, "pgf", "2", "2")
    assert out.strip() == "(1/7)u^1 + (2/7)u^2 + (4/7)u^3"
    _, out = run(capsys, "stats", "2", "2", "--format", "json")
    data = json.loads(out)["payload"]
    assert cli.parse_rational(data["mean"]) == Fraction(17, 7)
    assert data["mean_float"] == 17 / 7


def test_verify_small(capsys):
    code, out = run(capsys, "verify", "--max-nk", "4")
    assert code == 0
    assert out.count("PASS") == 3


@pytest.mark.slow
def test_verify_sixteen():
    record = cli.cmd_verify(16)
    assert record.ok
    assert all(c["passed"] for c in record.payload["checks"])


def tampered(n, k):
    dist = longest_path_counts(n, k)
    if (n, k) != (2, 3):
        return dist
    counts = list(dist.counts)
    counts[1] += 1
    counts[2] -= 1
    return PathLengthDistribution(n, k, tuple(counts), dist.total)


def test_verify_detects_tampering(capsys, monkeypatch):
    record = cli.run_verify(8, counts_fn=tampered)
    assert not record.ok
    oracle = record.payload["checks"][0]
    assert not oracle["passed"]
    assert oracle["counterexample"]["n"] == 2 and oracle["counterexample"]["k"] == 3
    monkeypatch.setattr(cli, "cmd_verify", lambda max_nk: cli.run_verify(max_nk, counts_fn=tampered))
    code, out = run(capsys, "verify", "--max-nk", "8")
    assert code != 0
    assert "FAIL" in out and "counterexample" in out


def test_verify_budget(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--max-nk", "21"])
    assert exc.value.code != 0
    with pytest.raises(ValueError):
        cli.run_verify(25)


def test_series_check(capsys):
    code, out = run(capsys, "series-check", "--order", "5")
    assert code == 0
    assert "passed = True" in out


def test_sample_proportions(capsys):
    code, out = run(capsys, "sample", "2", "2", "14000", "--seed", "7", "--format", "json")
    props = json.loads(out)["payload"]["proportions"]
    assert code == 0
    for ell, p in {1: 1 / 7, 2: 2 / 7, 3: 4 / 7}.items():
        assert abs(props[str(ell)] - p) < 0.02


def test_sample_one_by_one(capsys):
    _, out = run(capsys, "sample", "1", "1", "100", "--format", "json")
    payload = json.loads(out)["payload"]
    assert payload["histogram"] == {"1": "100"}


def test_sample_is_reproducible(capsys):
    _, first = run(capsys, "sample", "4", "5", "300", "--seed", "31337", "--dump-matrices")
    _, second = run(capsys, "sample", "4", "5", "300", "--seed", "31337", "--dump-matrices")
    _, other = run(capsys, "sample", "4", "5", "300", "--seed", "31338", "--dump-matrices")
    assert first == second
    assert first != other


def test_sample_dump_is_parseable(capsys):
    _, out = run(capsys, "sample", "3", "4", "20", "--seed", "5", "--dump-matrices", "--format", "json")
    mats = json.loads(out)["payload"]["matrices"]
    assert len(mats) == 20
    assert all(is_lonesum(parse_matrix(text)) for text in mats)


def test_asympt(capsys):
    code, out = run(capsys, "asympt", "--n", "10,20,40", "--format", "json")
    payload = json.loads(out)["payload"]
    ks = [row["kolmogorov"] for row in payload["rows"]]
    assert code == 0
    assert ks[0] > ks[1] > ks[2]
    assert payload["mean_leading"] == pytest.approx(1 / math.log(2))
    assert payload["variance_leading"] == pytest.approx((1 - math.log(2)) / (2 * math.log(2) ** 2))


def test_asympt_curvature(capsys):
    _, out = run(capsys, "asympt", "--n", "5", "--curvature")
    assert "1.22134" in out
    assert "0.88539" in out
    assert out.count("PASS") == 3


def test_plot_data(tmp_path, capsys):
    path = tmp_path / "fig.csv"
    code, _ = run(capsys, "plot-data", "--out", str(path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    by_n = {}
    for r in rows:
        by_n.setdefault(int(r["n"]), []).append((int(r["length"]), float(r["probability"])))
    assert sorted(by_n) == [2, 5, 10, 20, 30]
    assert by_n[2] == [(1, pytest.approx(1 / 7, abs=1e-15)), (2, pytest.approx(2 / 7, abs=1e-15)),
                       (3, pytest.approx(4 / 7, abs=1e-15))]
    for pts in by_n.values():
        assert abs(sum(p for _, p in pts) - 1) < 1e-12
    probs = [p for _, p in by_n[30]]
    peak = probs.index(max(probs))
    assert all(a <= b for a, b in zip(probs[:peak], probs[1 : peak + 1]))
    assert all(a >= b for a, b in zip(probs[peak:], probs[peak + 1 :]))


def test_plot_data_stdout(capsys):
    code, out = run(capsys, "plot-data", "--n", "2")
    assert code == 0
    assert out.splitlines()[0] == "n,length,probability"
    assert len(out.splitlines()) == 4


def test_plot_data_io_error(tmp_path, capsys):
    code = cli.main(["plot-data", "--n", "2", "--out", str(tmp_path)])
    assert code != 0


def test_output_record_float_round_trip():
    rec = cli.OutputRecord("x", {}, payload={"v": 0.1 + 0.2, "q": Fraction(-3, 9)})
    data = json.loads(rec.to_json())
    assert data["payload"]["v"] == 0.1 + 0.2
    assert cli.parse_rational(data["payload"]["q"]) == Fraction(-1, 3)
