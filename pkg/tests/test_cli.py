import json

import pytest

from qudit_coloring.cli import main


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_synth(graph_dir, capsys):
    code, out, _ = run(capsys, "synth", "--graph", graph_dir / "k3.txt", "--k", 3, "--d", 2, "--out", graph_dir / "o.net")
    assert code == 0 and "6 data + 3 ancilla + 1 invalid-flag + 1 output" in out
    assert (graph_dir / "o.net").read_text().startswith("dims 2 2")


def test_synth_k5_invalid_colors(graph_dir, capsys):
    code, out, _ = run(capsys, "synth", "--graph", graph_dir / "k3.col", "--k", 5, "--d", 2, "--out", graph_dir / "o.net")
    assert code == 0 and "c=3" in out


def test_simulate(graph_dir, capsys):
    hist = graph_dir / "h.csv"
    code, out, _ = run(capsys, "simulate", "--graph", graph_dir / "k3.txt", "--k", 3, "--d", 2, "--iterations", "auto", "--histogram", hist)
    assert code == 0 and "success probability: 0.99" in out
    assert hist.read_text().splitlines()[0] == "basis_string,probability"


def test_simulate_ternary_lists_marked_first(graph_dir, capsys):
    code, out, _ = run(capsys, "simulate", "--graph", graph_dir / "star3.txt", "--k", 3, "--d", 3)
    lines = [l for l in out.splitlines() if l.startswith("  |")]
    assert len(lines) == 12 and all(l.endswith("*") for l in lines)


def test_simulate_no_solutions(graph_dir, capsys):
    code, out, err = run(capsys, "simulate", "--graph", graph_dir / "k3.txt", "--k", 2, "--d", 2, "--histogram", graph_dir / "h.json")
    assert code == 0 and "0 solutions" in out and "warning" in err
    probs = [row["probability"] for row in json.loads((graph_dir / "h.json").read_text())]
    assert probs == pytest.approx([1 / 8] * 8)


def test_decompose_verify(graph_dir, capsys):
    net, low = graph_dir / "o.net", graph_dir / "low.net"
    run(capsys, "synth", "--graph", graph_dir / "k3.txt", "--k", 3, "--d", 2, "--out", net)
    code, out, _ = run(capsys, "decompose", "--netlist", net, "--level", "two-wire", "--out", low, "--verify")
    assert code == 0 and "max arity: 2" in out
    line = next(l for l in out.splitlines() if l.startswith("max deviation"))
    assert float(line.split()[2]) < 1e-9


def test_decompose_low_netlist_unchanged(graph_dir, capsys):
    net, low = graph_dir / "a.net", graph_dir / "b.net"
    net.write_text("dims 2 2\nnot 1 ctrl 0:1\n")
    assert run(capsys, "decompose", "--netlist", net, "--out", low)[0] == 0
    assert low.read_text() == net.read_text()


def test_report_json(graph_dir, capsys):
    code, out, _ = run(capsys, "report", "--graph", graph_dir / "star3.txt", "--k", 3, "--d", 3, "--compare-baselines", "--json", "-")
    data = json.loads(out)
    assert code == 0 and data["baseline_comparisons"][0]["baseline"] == 106


def test_report_binary_table(graph_dir, capsys):
    code, out, _ = run(capsys, "report", "--graph", graph_dir / "k3.json", "--k", 3, "--d", 2, "--compare-baselines")
    assert code == 0 and "one-hot" in out


@pytest.mark.parametrize("args, code", [
    (["synth", "--graph", "missing.txt", "--k", "3", "--d", "2", "--out", "x"], 2),
    (["decompose", "--netlist", "{bad}", "--out", "x"], 2),
    (["simulate", "--graph", "{k3}", "--k", "3", "--d", "1"], 2),
    (["simulate", "--graph", "{big}", "--k", "3", "--d", "2"], 3),
])
def test_exit_codes(graph_dir, capsys, args, code):
    (graph_dir / "bad.net").write_text("dims 2\nnot 4\n")
    (graph_dir / "big.txt").write_text("12\n1 2\n")
    subs = {"{bad}": graph_dir / "bad.net", "{k3}": graph_dir / "k3.txt", "{big}": graph_dir / "big.txt"}
    args = [str(subs.get(a, a)) for a in args]
    assert main(args) == code


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--graph", "x", "--k", "3", "--d", "2", "--iterations", "many"])
    assert exc.value.code == 2
