import json

import pytest

from ramseypack.cli import main
from ramseypack.formats import format_edgelist, format_pattern, to_graph6
from ramseypack.graph import ColourPattern, Graph
from ramseypack.senders import SenderCandidate, format_sender


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_p(capsys, tmp_path):
    w = tmp_path / "w.txt"
    code, out, _ = run(capsys, "exact-p", "-r", "2", "-k", "2", "--n-max", "5", "--witness-out", str(w))
    rep = json.loads(out)
    assert code == 0 and rep["value"] == 4 and rep["schema"] == 1 and rep["seed"] == 0
    assert rep["certificates"][0] == {**rep["certificates"][0], "n": 3, "exhausted": True}
    assert w.read_text().startswith("pattern 4 2")
    code, out, _ = run(capsys, "exact-p", "-r", "3", "-k", "2", "--n-max", "5")
    assert code == 2 and json.loads(out)["value"] == {"lo": 6, "hi": None}
    code, _, _ = run(capsys, "exact-p", "-r", "3", "-k", "2", "--n-max", "6", "--budget-nodes", "500")
    assert code == 3


def test_bounds_csv_and_json(capsys):
    code, out, _ = run(capsys, "bounds", "-k", "3", "--r-max", "10")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 10 and lines[0].startswith("r,k,p_k")
    code, out, _ = run(capsys, "bounds", "-k", "4", "--r-max", "5", "--format", "json", "--model", "shearer_k2")
    rep = json.loads(out)
    assert code == 0 and len(rep["rows"]) == 4 and rep["g_condition"]["holds"] is True


def test_verify_sender_exit_codes(capsys, tmp_path):
    tri = tmp_path / "bad.txt"
    tri.write_text(format_sender(SenderCandidate(Graph.complete(3), (0, 1), (0, 2), "negative")))
    code, out, _ = run(capsys, "verify-sender", str(tri))
    assert code == 2 and json.loads(out)["outcome"] == "BothBehavioursPossible"
    broken = tmp_path / "broken.txt"
    broken.write_text("signal 0 1 0 2 negative 2 3\n3 3\n0 1\n0 x\n1 2\n")
    code, _, err = run(capsys, "verify-sender", str(broken))
    assert code == 1 and "broken.txt:4:3" in err


def test_usage_and_io_errors(capsys, tmp_path):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "peel", str(tmp_path / "missing.txt"), "-k", "2")[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_pack_lll(capsys, tmp_path):
    code, out, _ = run(capsys, "pack-lll", "-n", "5", "-r", "2", "--seed", "3", "--deterministic")
    rep = json.loads(out)
    assert code == 0 and rep["success"] and rep["seed"] == 3 and "elapsed" not in rep
    code, out, _ = run(capsys, "pack-lll", "-n", "4", "-r", "2", "--budget-resamples", "500")
    assert code == 3 and json.loads(out)["success"] is False


def test_deterministic_reports_identical(capsys, tmp_path):
    args = ("pack-lll", "-n", "8", "-r", "2", "--seed", "17", "--deterministic", "--workers", "1")
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b
    args = ("construct-moment", "-k", "3", "-r", "3", "-q", "7", "--samples", "5", "--deterministic")
    a, b = run(capsys, *args), run(capsys, *args)
    assert a[1] == b[1] and json.loads(a[1])["n"] == 343


def test_peel_and_verify_pattern(capsys, tmp_path):
    p = ColourPattern.of(Graph.from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)]),
                         Graph.from_edges(4, [(0, 3), (1, 2)]))
    f = tmp_path / "p.txt"
    f.write_text(format_pattern(p))
    code, out, _ = run(capsys, "peel", str(f), "-k", "2")
    rep = json.loads(out)
    assert code == 0 and rep["r_out"] == 1 and rep["n_out"] >= 2 and rep["forces"]
    code, out, _ = run(capsys, "verify-pattern", str(f), "-k", "2")
    assert code == 0 and json.loads(out)["forces"]
    esc = tmp_path / "e.txt"
    esc.write_text(format_pattern(ColourPattern.of(Graph.from_edges(3, [(0, 1)]), Graph.empty(3))))
    code, out, _ = run(capsys, "verify-pattern", str(esc), "-k", "2")
    assert code == 2 and "escape_colouring" in json.loads(out)


def test_assemble(capsys, tmp_path):
    pattern = tmp_path / "p.txt"
    pattern.write_text(format_pattern(ColourPattern.of(Graph.from_edges(3, [(0, 1)]), Graph.empty(3))))
    pos, neg = tmp_path / "pos.txt", tmp_path / "neg.txt"
    pos.write_text(format_sender(SenderCandidate(Graph.path(6), (0, 1), (4, 5), "positive")))
    neg.write_text(format_sender(SenderCandidate(Graph.path(6), (0, 1), (4, 5), "negative")))
    g6 = tmp_path / "out.g6"
    code, out, _ = run(capsys, "assemble", str(pattern), "--pos", str(pos), "--neg", str(neg), "--h", "3",
                       "--trust-senders", "--apex", "--graph-out", str(g6))
    rep = json.loads(out)
    assert code == 0 and rep["layout"]["apex"] == 11 and g6.exists()
    code, out, _ = run(capsys, "assemble", str(pattern), "--pos", str(pos), "--neg", str(neg), "--h", "3")
    assert code == 2 and json.loads(out)["error"] == "UnverifiedSender"


@pytest.mark.parametrize("g", [Graph.cycle(7), Graph.empty(0), Graph.complete(64), Graph.path(2)])
def test_convert_roundtrip(capsys, tmp_path, g):
    src = tmp_path / "g.g6"
    src.write_bytes(to_graph6(g) + b"\n")
    mid = tmp_path / "g.txt"
    assert run(capsys, "convert", str(src), "--out", str(mid))[0] == 0
    assert mid.read_text() == format_edgelist(g)
    back = tmp_path / "back.g6"
    assert run(capsys, "convert", str(mid), "--out", str(back))[0] == 0
    assert back.read_bytes() == to_graph6(g) + b"\n"


def test_log_env(capsys, monkeypatch):
    monkeypatch.setenv("RAMSEYPACK_LOG", "debug")
    assert run(capsys, "bounds", "-k", "3", "--r-max", "3")[0] == 0
