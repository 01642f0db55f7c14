import csv
import io
import json
import subprocess
import sys

import pytest

from tempus.cli import main, parse_window, render
from tempus.tvg import GraphError, Lifetime

# S1 bridges H1 to J1 early; the direct H1-J1 edge is shorter but arrives late,
# so S1 carries temporal but no static betweenness
RAPID_NODES = "id,type,birth\nH1(05),,\nS1(05),,\nJ1(06),,\n"
RAPID_EDGES = "src,dst,birth\nH1(05),S1(05),2005\nS1(05),J1(06),2006\nH1(05),J1(06),2009\n"


@pytest.fixture
def rapid(tmp_path):
    (tmp_path / "nodes.csv").write_text(RAPID_NODES)
    (tmp_path / "edges.csv").write_text(RAPID_EDGES)
    return ["--nodes", str(tmp_path / "nodes.csv"), "--edges", str(tmp_path / "edges.csv")]


@pytest.fixture(scope="module")
def generated(tmp_path_factory):
    d = tmp_path_factory.mktemp("gen")
    assert main(["generate", "--out-dir", str(d), "--seed", "0"]) == 0
    return ["--nodes", str(d / "nodes.csv"), "--edges", str(d / "edges.csv")]


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_stats_has_one_column_per_year(capsys, generated):
    code, out, _ = run(capsys, ["stats", *generated])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["metric", "2005", "2006", "2007", "2008", "2009", "2010", "2011"]
    assert rows[1] == ["#Nodes", "10", "55", "81", "151", "201", "288", "366"]
    assert rows[2][-1] == "750"
    assert len(rows) == 16


def test_json_and_csv_carry_the_same_numbers(capsys, generated):
    _, as_csv, _ = run(capsys, ["stats", *generated, "--window", "2005:2007"])
    _, as_json, _ = run(capsys, ["stats", *generated, "--window", "2005:2007", "--format", "json"])
    rows = table(as_csv)
    records = json.loads(as_json)
    assert len(rows) == len(records)
    for row, rec in zip(rows, records):
        assert row["metric"] == rec["metric"]
        for year in ("2005", "2006", "2007"):
            assert float(row[year]) == rec[year]


def test_static_bc_adjusted_and_raw(capsys, tmp_path):
    (tmp_path / "e.csv").write_text("src,dst,birth\na,b,1\nb,c,1\nx,y,1\n")
    code, out, err = run(capsys, ["static-bc", "--edges", str(tmp_path / "e.csv")])
    assert code == 0 and "warning" in err  # nodes created from the edge list
    assert table(out)[0] == {"node": "b", "score": "0.6", "rank": "1"}
    _, out, _ = run(capsys, ["static-bc", "--edges", str(tmp_path / "e.csv"), "--raw"])
    assert table(out)[0]["score"] == "1"


def test_temporal_bc_window(capsys, rapid):
    code, out, _ = run(capsys, ["temporal-bc", *rapid])
    assert code == 0
    rows = table(out)
    assert rows[0] == {"node": "S1(05)", "score": "1", "raw": "1", "rank": "1"}
    _, out, _ = run(capsys, ["temporal-bc", *rapid, "--window", "2006:2009"])
    assert {r["node"] for r in table(out)} == {"H1(05)", "S1(05)", "J1(06)"}
    assert all(r["score"] == "0" for r in table(out))


def test_classify_flags_the_invisible_rapid(capsys, rapid):
    code, out, _ = run(capsys, ["classify", *rapid, "--top", "20", "--low", "100"])
    assert code == 0
    rows = table(out)
    assert rows[0] == {"window": "2005:2009", "node": "S1(05)", "label": "invisible_rapid",
                       "temporal_rank": "1", "static_rank": ""}
    _, out, _ = run(capsys, ["classify", *rapid, "--invisible-only", "--format", "json"])
    # from 2006 the H1 -> J1 -> S1 route is born (2009, 2006): J1 turns into a brook
    assert json.loads(out) == [
        {"window": "2005:2009", "node": "S1(05)", "label": "invisible_rapid", "temporal_rank": 1, "static_rank": None},
        {"window": "2006:2009", "node": "J1(06)", "label": "invisible_brook", "temporal_rank": None, "static_rank": 1},
    ]


def test_compare_single_window(capsys, rapid):
    code, out, _ = run(capsys, ["compare", *rapid])
    assert code == 0
    assert table(out)[0]["label"] == "invisible_rapid"


def test_sweep_rows_and_figures(capsys, rapid, tmp_path):
    figs = tmp_path / "figs"
    code, out, _ = run(capsys, ["sweep", *rapid, "--figures", str(figs)])
    assert code == 0
    windows = [r["window"] for r in table(out)]
    assert windows[0] == "2005:2009"
    pngs = sorted(p.name for p in figs.iterdir())
    assert "rank_trajectories.png" in pngs and "ranks_2005-2009.png" in pngs
    first = (figs / "rank_trajectories.png").read_bytes()
    run(capsys, ["sweep", *rapid, "--figures", str(figs)])
    assert (figs / "rank_trajectories.png").read_bytes() == first


def test_threads_from_environment(capsys, rapid, monkeypatch):
    _, serial, _ = run(capsys, ["sweep", *rapid, "--threads", "1"])
    monkeypatch.setenv("TEMPUS_THREADS", "2")
    _, env, _ = run(capsys, ["sweep", *rapid])
    assert env == serial


def test_communities(capsys, tmp_path):
    (tmp_path / "e.csv").write_text("src,dst,birth\na,b,1\nb,c,1\na,c,1\nx,y,1\ny,z,1\nx,z,1\nc,x,2\n")
    code, out, _ = run(capsys, ["communities", "--edges", str(tmp_path / "e.csv")])
    assert code == 0
    rows = table(out)
    assert {r["partition"] for r in rows} == {"static"}
    assert len({r["community"] for r in rows}) == 2
    _, out, _ = run(capsys, ["communities", "--edges", str(tmp_path / "e.csv"), "--focus", "c"])
    assert table(out)[0]["partition"] == "temporal:c"


def test_out_file(tmp_path, rapid, capsys):
    out = tmp_path / "bc.json"
    assert main(["static-bc", *rapid, "--format", "json", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())[0]["node"] in {"H1(05)", "J1(06)", "S1(05)"}


@pytest.mark.parametrize("argv", [
    ["stats", "--bogus"],
    ["frobnicate"],
    [],
    ["temporal-bc", "--edges", "x.csv", "--threads", "0"],
    ["stats", "--edges", "x.csv", "--format", "xml"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, argv)
    assert code == 1
    assert "usage:" in err


def test_input_errors_exit_1(capsys, rapid, tmp_path):
    assert run(capsys, ["stats", "--edges", str(tmp_path / "missing.csv")])[0] == 1
    assert run(capsys, ["stats", *rapid, "--window", "2009:2005"])[0] == 1
    assert run(capsys, ["stats", *rapid, "--window", "banana"])[0] == 1
    assert run(capsys, ["temporal-bc", *rapid, "--window", "2004:2009"])[0] == 1
    assert run(capsys, ["classify", *rapid, "--top", "50", "--low", "10"])[0] == 1
    assert run(capsys, ["communities", *rapid, "--focus", "nobody"])[0] == 1
    (tmp_path / "bad.csv").write_text("src,dst,birth\na,b,later\n")
    code, _, err = run(capsys, ["stats", "--edges", str(tmp_path / "bad.csv")])
    assert code == 1 and "bad.csv:2" in err


def test_route_ceiling_exits_2(capsys, tmp_path):
    names = [f"v{i}" for i in range(6)]
    lines = ["src,dst,birth"] + [f"{a},{b},1" for i, a in enumerate(names) for b in names[i + 1:]]
    (tmp_path / "k6.csv").write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, ["temporal-bc", "--edges", str(tmp_path / "k6.csv"), "--route-ceiling", "3"])
    assert code == 2 and "limit" in err
    code, _, _ = run(capsys, ["temporal-bc", "--edges", str(tmp_path / "k6.csv"), "--search-budget", "5"])
    assert code == 2
    assert run(capsys, ["temporal-bc", "--edges", str(tmp_path / "k6.csv"), "--route-ceiling", "0"])[0] == 0


def test_parse_window():
    life = Lifetime(2005, 2011)
    assert parse_window(None, life) == life
    assert parse_window("2007:2011", life) == Lifetime(2007, 2011)
    assert parse_window("2008:", life) == Lifetime(2008, 2011)
    assert parse_window(":2006", life) == Lifetime(2005, 2006)
    with pytest.raises(GraphError):
        parse_window("2007", life)


def test_render_formats():
    cols = ["node", "score", "rank"]
    rows = [["a", 1 / 3, 1], ["b", None, None]]
    assert render(cols, rows, "csv") == "node,score,rank\na,0.333333333333,1\nb,,\n"
    assert json.loads(render(cols, rows, "json")) == [
        {"node": "a", "score": 0.333333333333, "rank": 1}, {"node": "b", "score": None, "rank": None}]


def test_module_entry_point(rapid):
    proc = subprocess.run([sys.executable, "-m", "tempus", "static-bc", *rapid],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("node,score,rank\n")
