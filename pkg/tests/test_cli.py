import csv

import pytest

from pecldpc.cli import main


def run_cli(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else "")


def rows_of(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


# ---------------------------------------------------------
# capacity
# ---------------------------------------------------------
def test_capacity_values(tmp_path):
    code, text = run_cli(
        ["capacity", "--q", "4", "--M", "2", "--eps-grid", "0:1:0.5"], tmp_path
    )
    assert code == 0
    assert text.startswith("# pecldpc capacity")
    assert "seed=0" in text.splitlines()[0]
    rows = rows_of(text)
    assert rows[0] == ["q", "M", "epsilon", "capacity_qary", "capacity_bits"]
    caps = [float(r[3]) for r in rows[1:]]
    assert caps == [1.0, 0.75, 0.5]


def test_capacity_qec_column(tmp_path):
    code, text = run_cli(
        ["capacity", "--q", "5", "--M", "5", "--eps-grid", "0:1:0.25"], tmp_path
    )
    assert code == 0
    for r in rows_of(text)[1:]:
        assert float(r[3]) == pytest.approx(1 - float(r[2]), abs=1e-12)


# ---------------------------------------------------------
# threshold
# ---------------------------------------------------------
def test_threshold_rows(tmp_path):
    code, text = run_cli(
        [
            "threshold", "--q", "2", "--M", "2", "--dv", "3", "--dc", "6",
            "--model", "exact,balls", "--tol", "1e-3", "--no-check-monotone",
        ],
        tmp_path,
    )
    assert code == 0
    rows = rows_of(text)
    assert rows[0] == ["q", "M", "d_v", "d_c", "model", "epsilon_threshold"]
    ths = {r[4]: float(r[5]) for r in rows[1:]}
    assert set(ths) == {"exact", "balls"}
    for v in ths.values():
        assert abs(v - 0.4294) < 2e-3


# ---------------------------------------------------------
# pm-table
# ---------------------------------------------------------
def test_pm_table_exact_anchor(tmp_path):
    code, text = run_cli(
        ["pm-table", "--q", "4", "--sizes", "2,2", "--model", "exact"], tmp_path
    )
    assert code == 0
    rows = rows_of(text)
    probs = {int(r[2]): float(r[3]) for r in rows[1:]}
    assert probs[2] == pytest.approx(1 / 3, abs=1e-12)
    assert probs[3] == 0.0
    assert probs[4] == pytest.approx(2 / 3, abs=1e-12)
    assert rows[1][1] == "2+2"


def test_pm_table_all_models(tmp_path):
    code, text = run_cli(["pm-table", "--q", "5", "--sizes", "2,2"], tmp_path)
    assert code == 0
    models = {r[4] for r in rows_of(text)[1:]}
    assert models == {"exact", "bound-lower", "bound-upper", "balls", "union"}


# ---------------------------------------------------------
# simulate
# ---------------------------------------------------------
def test_simulate_no_erasures(tmp_path):
    code, text = run_cli(
        [
            "simulate", "--q", "4", "--M", "2", "--dv", "3", "--dc", "6",
            "--n", "60", "--eps", "0", "--trials", "4", "--seed", "5",
        ],
        tmp_path,
    )
    assert code == 0
    row = rows_of(text)[1]
    assert row[6] == "4" and row[7] == "4"  # trials == successes


# ---------------------------------------------------------
# decode-trace
# ---------------------------------------------------------
@pytest.fixture
def worked_example_files(tmp_path):
    graph = tmp_path / "graph.txt"
    graph.write_text("5 3 1\n0 0 2\n1 0 4\n2 0 3\n")
    received = tmp_path / "received.txt"
    received.write_text("0,1\n0,2,3\n0,1,2,3,4\n")
    return graph, received


def test_decode_trace_worked_example(tmp_path, worked_example_files):
    graph, received = worked_example_files
    code, text = run_cli(
        ["decode-trace", "--graph", str(graph), "--received", str(received)],
        tmp_path,
    )
    assert code == 0
    rows = rows_of(text)
    ctv1 = {
        (r[3], r[4]): r[5]
        for r in rows[1:]
        if r[0] == "1" and r[1] == "ctv"
    }
    assert ctv1[("2", "0")] == "{0,1,2,4}"
    status = [r for r in rows[1:] if r[1] == "status"]
    assert status[0][5] == "stalled"  # degree-1 variables cannot resolve


# ---------------------------------------------------------
# determinism and exit codes
# ---------------------------------------------------------
def test_byte_identical_reruns(tmp_path):
    cases = [
        ["capacity", "--q", "4", "--M", "2,4", "--eps-grid", "0:1:0.1"],
        ["pm-table", "--q", "5", "--sizes", "2,3"],
        [
            "simulate", "--q", "4", "--M", "2", "--dv", "3", "--dc", "6",
            "--n", "48", "--eps-grid", "0.2:0.6:0.2", "--trials", "3",
            "--seed", "7",
        ],
    ]
    for i, args in enumerate(cases):
        _, a = run_cli(args, tmp_path, name=f"a{i}.csv")
        _, b = run_cli(args, tmp_path, name=f"b{i}.csv")
        assert a == b and a


def test_validation_exit_code(tmp_path, capsys):
    assert main(["capacity", "--q", "6", "--M", "2", "--eps", "0.5"]) == 2
    assert "prime power" in capsys.readouterr().err
    assert main(["capacity", "--q", "4", "--M", "2"]) == 2  # missing eps
    assert main(["capacity", "--q", "4", "--M", "9", "--eps", "0.5"]) == 2
    assert main(["capacity", "--q", "4", "--M", "2", "--eps", "1.5"]) == 2
    assert main(["pm-table", "--q", "4", "--sizes", "2,2", "--model", "nope"]) == 2
    assert main(["bogus-command"]) == 2


def test_budget_exit_code(tmp_path, capsys):
    args = ["pm-table", "--q", "16", "--sizes", "8,8,8", "--model", "exact"]
    assert main(args + ["--out", str(tmp_path / "x.csv")]) == 3
    assert "--mc-samples" in capsys.readouterr().err
    code = main(
        args + ["--mc-samples", "20000", "--seed", "1", "--out", str(tmp_path / "y.csv")]
    )
    assert code == 0


def test_stdout_default(capsys):
    assert main(["capacity", "--q", "4", "--M", "2", "--eps", "0.5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# pecldpc capacity")
    assert "0.75" in out
