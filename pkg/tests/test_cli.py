import json
import subprocess
import sys

import pytest

from distspec.cli import run
from distspec.constructions import paper_graph_G, paper_graph_H
from distspec.graph import to_edge_list_text, to_graph6

G6 = to_graph6(paper_graph_G())
H6 = to_graph6(paper_graph_H())
K2 = "A_"
P3 = "Bg"
K3 = "Bw"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, "--json", *argv)
    return code, json.loads(out) if out else None, err


def test_cospectral_gadgets(capsys):
    code, doc, _ = call_json(capsys, "cospectral", G6, H6)
    assert code == 0
    assert doc["cospectral"] is True and doc["isomorphic"] is False
    assert doc["edges"] == [17, 16]


def test_spectrum_k2(capsys):
    code, doc, _ = call_json(capsys, "spectrum", K2)
    assert code == 0 and doc["charpoly"] == [-1, 0, 1]
    assert doc["eigenvalues"] == pytest.approx([-1.0, 1.0])


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["cospectral", G6, H6], 0),
        (["cospectral", K2, P3], 1),
        (["cospectral", P3, K3], 1),
        (["identify", P3, "0", K2, "1"], 0),
        (["pair", K2, "1", "1"], 0),
        (["family", "2"], 0),
        (["verify-t21", P3, "2", "0"], 0),
        (["switch-scan", G6], 0),
        (["nonsense"], 2),
        ([], 2),
        (["spectrum", "A"], 2),
        (["spectrum", "~~~"], 2),
        (["spectrum", "@file:/nonexistent/path"], 2),
        (["spectrum", "B?"], 2),
        (["identify", P3, "5", K2, "0"], 2),
        (["pair", K2, "4"], 2),
        (["family", "0"], 2),
        (["verify-t21"], 2),
        (["--tol", "0", "spectrum", K2], 2),
        (["--tol", "-1", "spectrum", K2], 2),
        (["--threads", "0", "spectrum", K2], 2),
        (["switch-apply", G6, "1,2"], 2),
        (["mine", "10"], 2),
    ],
)
def test_exit_code_matrix(capsys, argv, expected):
    code, _, err = call(capsys, *argv)
    assert code == expected
    if expected == 2 and argv:
        assert err


def test_json_is_one_document(capsys):
    for argv in (["spectrum", P3], ["cospectral", G6, H6], ["pair", P3], ["switch-scan", P3]):
        code, out, _ = call(capsys, "--json", *argv)
        json.loads(out)
        assert out.count("\n") == 1


def test_text_and_json_agree(capsys):
    for argv in (["cospectral", G6, H6], ["cospectral", K2, P3], ["pair", P3, "1"]):
        c_text, out, _ = call(capsys, *argv)
        c_json, doc, _ = call_json(capsys, *argv)
        assert c_text == c_json
        assert f"cospectral: {doc['cospectral']}" in out


def test_flags_after_subcommand(capsys):
    code, out, _ = call(capsys, "spectrum", K2, "--json")
    assert code == 0 and json.loads(out)["n"] == 2


def test_edge_list_file_input(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text(to_edge_list_text(paper_graph_G()))
    code, doc, _ = call_json(capsys, "cospectral", f"@file:{path}", H6)
    assert code == 0 and doc["edges"] == [17, 16]


def test_pair_and_verify(capsys):
    code, doc, _ = call_json(capsys, "pair", P3, "0", "0")
    assert code == 0 and doc["edges"] == [19, 18] and not doc["isomorphic"]
    code, doc, _ = call_json(capsys, "verify-t21", K3, "1", "1")
    assert code == 0 and doc["summary"]["passed"]


def test_switching_commands(capsys, mined7):
    cls, pair = mined7.pairs[0]
    cert = pair.certificate
    src = to_graph6(cls.graphs[cert["source"]])
    tup = ",".join(str(x) for x in [cert["s"], *cert["g"], *cert["h"]])
    code, doc, _ = call_json(capsys, "switch-scan", src)
    assert code == 0 and any(r["applicable"] for r in doc["candidates"])
    code, doc, _ = call_json(capsys, "switch-apply", src, tup)
    assert code == 0 and doc["hypotheses_hold"]
    code, doc, _ = call_json(capsys, "verify-t32", src, tup)
    assert code == 0 and doc["summary"]["passed"]
    u = next(w for w in range(7) if w not in (*cert["g"], *cert["h"]))
    code, doc, _ = call_json(capsys, "corollary", src, tup, str(u), P3)
    assert code == 0 and doc["cospectral"]
    code, _, _ = call(capsys, "corollary", src, tup, str(cert["g"][0]), P3)
    assert code == 2


def test_verify_t32_false_verdict(capsys):
    from test_switching import _failing_candidate

    g, t = _failing_candidate()
    tup = ",".join(str(x) for x in [t.s, *t.g, *t.h])
    code, doc, _ = call_json(capsys, "verify-t32", to_graph6(g), tup)
    assert code == 1 and doc["passed"] is False and doc["reason"]


def test_mine_seven(tmp_path, capsys):
    out = tmp_path / "r.json"
    dump = tmp_path / "g6.txt"
    code, doc, _ = call_json(capsys, "mine", "7", "--out", str(out), "--g6-dump", str(dump))
    assert code == 0
    pairs = [p for c in doc["classes"] for p in c["pairs"]]
    assert pairs and all(p["switch_certificate"] is not None for p in pairs)
    assert json.loads(out.read_text()) == doc
    assert len(dump.read_text().split()) == 853


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("DISTSPEC_THREADS", "2")
    from distspec.cli import build_parser

    assert build_parser().parse_args(["spectrum", K2]).threads == 2
    monkeypatch.setenv("DISTSPEC_THREADS", "junk")
    assert build_parser().parse_args(["spectrum", K2]).threads == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "distspec", "--json", "spectrum", K2],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["charpoly"] == [-1, 0, 1]
