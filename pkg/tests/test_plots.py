import csv
import math
import sys
from pathlib import Path

import pytest

PLOTS_DIR = Path(__file__).resolve().parent.parent / "plots"
sys.path.insert(0, str(PLOTS_DIR))
import render  # noqa: E402


def write_rows(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def test_single_point_has_zero_halfwidth():
    rows = [{"method": "direct", "n": "11", "score": "0.5"}]
    series = render.aggregate(rows, "n", "score", None)
    assert series == {"direct": [(11.0, 0.5, 0.0)]}


def test_halfwidth_is_normal_approximation():
    rows = [{"method": "a", "n": "5", "score": s} for s in ("0.4", "0.6")]
    ((x, mean, half),) = render.aggregate(rows, "n", "score", None)["a"]
    assert (x, mean) == (5.0, pytest.approx(0.5))
    # sample sd with ddof=1 is sqrt(0.02), k=2
    assert half == pytest.approx(1.96 * math.sqrt(0.02 / 2))


def test_aggregate_sorts_filters_and_drops_nan():
    rows = [
        {"method": "a", "n": "21", "score": "0.7"},
        {"method": "a", "n": "11", "score": "0.6"},
        {"method": "a", "n": "31", "score": "nan"},
        {"method": "b", "n": "11", "score": "0.1"},
    ]
    series = render.aggregate(rows, "n", "score", ["a"])
    assert list(series) == ["a"]
    assert [p[0] for p in series["a"]] == [11.0, 21.0]


def test_two_methods_identical_data_render(tmp_path):
    rows = [
        {"method": m, "n": str(n), "score": "0.5"}
        for m in ("a", "b")
        for n in (11, 21)
    ]
    src = tmp_path / "rows.csv"
    write_rows(src, rows)
    out = tmp_path / "fig.png"
    assert render.main(["--csv", str(src), "--y", "score", "--x", "n",
                        "--out", str(out)]) == 0
    assert out.stat().st_size > 0
    # overlapping lines, one legend entry each
    series = render.aggregate(rows, "n", "score", None)
    assert len(series) == 2 and series["a"] == series["b"]


def test_missing_column_is_an_error(tmp_path, capsys):
    src = tmp_path / "rows.csv"
    write_rows(src, [{"method": "a", "n": "1", "score": "0.5"}])
    code = render.main(["--csv", str(src), "--y", "runtime_s", "--x", "n",
                        "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "no column" in capsys.readouterr().err


def test_empty_selection_is_an_error(tmp_path, capsys):
    src = tmp_path / "rows.csv"
    write_rows(src, [{"method": "a", "n": "1", "score": "0.5"}])
    code = render.main(["--csv", str(src), "--methods", "zz",
                        "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "empty" in capsys.readouterr().err


def test_headers_only_is_an_error(tmp_path, capsys):
    src = tmp_path / "rows.csv"
    src.write_text("method,n,score\n")
    code = render.main(["--csv", str(src), "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "no data rows" in capsys.readouterr().err


def test_same_csv_gives_identical_image_bytes(tmp_path):
    rows = [
        {"method": m, "n": str(n), "score": f"0.{5 + k}"}
        for k, m in enumerate(("a", "b"))
        for n in (11, 21, 31)
    ]
    src = tmp_path / "rows.csv"
    write_rows(src, rows)
    first, second = tmp_path / "one.png", tmp_path / "two.png"
    for out in (first, second):
        assert render.main(["--csv", str(src), "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()
