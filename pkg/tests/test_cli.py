import io
import json

import pytest

from dp4brauer.cli import EXIT_MALFORMED, EXIT_OK, EXIT_SINGULAR, main
from dp4brauer.pencil import Pencil, SymMat5


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_analyze_round_trip(capsys):
    code, out = run(capsys, "analyze", "@example")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert json.loads(json.dumps(obj)) == obj
    assert json.dumps(obj, indent=2, ensure_ascii=False) == out.strip()
    assert obj["order"] == 2 and obj["degeneracy_degrees"] == [2, 3]
    assert obj["generators"][0]["eps"] == -5


def test_text_and_json_agree(capsys):
    _, js = run(capsys, "analyze", "@bsd")
    _, tx = run(capsys, "analyze", "@bsd", "--emit", "text")
    values = [line.split(": ", 1)[1] for line in tx.splitlines()]
    flat = []

    def walk(o):
        if isinstance(o, dict):
            for v in o.values():
                walk(v)
        elif isinstance(o, list) and o:
            for v in o:
                walk(v)
        else:
            flat.append(json.dumps(o, ensure_ascii=False))

    walk(json.loads(js))
    assert values == flat


def test_pencil_file_and_stdin(capsys, tmp_path, example, monkeypatch):
    f = tmp_path / "p.json"
    f.write_text(json.dumps(example.to_json_obj()))
    code, out = run(capsys, "analyze", str(f))
    assert code == EXIT_OK and json.loads(out)["order"] == 2
    monkeypatch.setattr("sys.stdin", io.StringIO(f.read_text()))
    code, out = run(capsys, "analyze", "-")
    assert code == EXIT_OK and json.loads(out)["order"] == 2


def test_malformed(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert main(["analyze", str(f)]) == EXIT_MALFORMED
    assert main(["analyze", "@nope"]) == EXIT_MALFORMED


def test_singular(capsys, tmp_path):
    p = Pencil(SymMat5.diagonal([1, 1, 1, 1, 1]), SymMat5.diagonal([1, 1, 2, 3, 4]))
    f = tmp_path / "sing.json"
    f.write_text(json.dumps(p.to_json_obj()))
    code, out = run(capsys, "analyze", str(f))
    assert code == EXIT_SINGULAR and out == ""


def test_scan_bsd(capsys):
    code, out = run(capsys, "scan", "@bsd", "--samples", "8")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "obstructed (sampled)"


def test_evaluate(capsys):
    code, out = run(capsys, "evaluate", "@example", "--point=-1,0,1,0,0", "--place", "inf")
    assert code == EXIT_OK and json.loads(out)["invariants"] == ["1/2"]
    assert main(["evaluate", "@example", "--point=1,1,1,1,1", "--place", "3"]) == EXIT_MALFORMED


def test_fibers_bsd(capsys):
    code, out = run(capsys, "fibers", "@bsd", "--t", "0,1,-1,2,1/2")
    assert code == EXIT_OK
    rows = json.loads(out)["fibers"]
    assert [r["smooth"] for r in rows] == [False, False, False, True, True]
    assert rows[3]["insolvable_at"]


@pytest.mark.parametrize("kind", ["block23", "bsd_type", "planted_point", "random"])
def test_generate(capsys, kind):
    code, out = run(capsys, "generate", "--kind", kind, "--bound", "5", "--seed", "2")
    assert code == EXIT_OK
    obj = json.loads(out)
    p = Pencil.from_json_obj(obj)
    assert obj["provenance"]["kind"] == kind
    assert p.from_json(json.dumps(p.to_json_obj())) == p
