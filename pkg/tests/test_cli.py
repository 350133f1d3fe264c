import io
import json
import subprocess
import sys

import pytest

from clm import serialize as ser
from clm.cli import run
from clm.linalg import Split, Subspace

GRAPH_ID = ser.subspace_to_json(Subspace.span([[1, 0, 1, 0], [0, 1, 0, 1]], 4, Split(2, 2)))


def call(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin if isinstance(stdin, str) else json.dumps(stdin)))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin=None: call(argv, stdin, capsys, monkeypatch)


def test_identity(cli):
    code, out, _ = cli(["identity", "--u", "3", "--k", "1"])
    assert code == 0
    d = json.loads(out)
    assert (d["lhs"], d["rhs"], d["equal"]) == (6, 6, True)


def test_identity_csv(cli):
    code, out, _ = cli(["identity", "--max-u", "40", "--max-k", "12", "--format", "text"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "u,k,lhs,rhs,equal"
    assert len(lines) == 481
    assert all(line.endswith(",true") for line in lines[1:])


def test_classify_stdin(cli):
    code, out, _ = cli(["classify", "--sigma", "1"], GRAPH_ID)
    assert code == 0
    d = json.loads(out)
    assert d["status"] == "stable" and d["semistable_interval"] == [0, 2]
    code, out, _ = cli(["classify", "--sigma", "1/2", "--format", "text"], GRAPH_ID)
    assert "status: stable" in out


def test_classify_sweep(cli):
    code, out, _ = cli(["classify", "--sweep", "100", "--seed", "4"])
    assert code == 0 and json.loads(out)["agree"] == 100


def test_file_input(cli, tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps(GRAPH_ID))
    code, out, _ = cli(["weights", str(path), "--sigma", "1"])
    d = json.loads(out)
    assert code == 0 and d["weights"] == [-2, 0, 2] and d["oracle_status"] == "stable"
    code, _, err = cli(["weights", str(tmp_path / "missing.json")])
    assert code == 1 and json.loads(err)["error"] == "parse"


def test_errors_and_usage(cli):
    code, _, err = cli(["classify", "--sigma", "0"], "{not json")
    assert code == 1 and json.loads(err)["error"] == "parse"
    code, _, err = cli(["classify", "--sigma", "0", "--u", "3"], GRAPH_ID)
    assert code == 2
    assert cli(["no-such-command"])[0] == 2
    assert cli(["classify"], GRAPH_ID)[0] == 2
    assert cli(["dims", "--dim-v", "2"])[0] == 2
    code, _, err = cli(["dims", "--dim-v", "1", "--dim-w", "2", "--u", "2"])
    assert code == 1 and json.loads(err)["error"] == "dimension"


def test_collineation_pipeline(cli):
    code, cc_text, _ = cli(["halphen", "--u", "4", "--seed", "2"])
    assert code == 0
    cc = json.loads(cc_text)
    assert [s["rank"] for s in cc["stages"]] == [1, 1, 1, 1]
    code, chain_text, _ = cli(["chain-from-cc"], cc_text)
    assert code == 0
    code, rep, _ = cli(["chain-validate"], chain_text)
    rep = json.loads(rep)
    assert code == 0 and rep["valid"] and rep["shape"] == [[3, 0], [2, 1], [1, 2], [0, 3]]
    code, back, _ = cli(["cc-from-chain"], chain_text)
    assert code == 0 and [s["rank"] for s in json.loads(back)["stages"]] == [1, 1, 1, 1]


def test_invalid_collineation_reports_violations(cli):
    code, cc_text, _ = cli(["halphen", "--u", "2"])
    cc = json.loads(cc_text)
    cc["stages"] = cc["stages"][:1]
    code, out, err = cli(["chain-from-cc"], cc)
    assert code == 1 and out == ""
    assert "maximal-rank" in json.loads(err)["violations"]


def test_invalid_chain(cli):
    chain = {
        "ctx": {"dim_v": 2, "dim_w": 2, "u": 2},
        "components": [ser.subspace_to_json(Subspace.span([[1, 0, 0, 0], [0, 0, 1, 0]], 4, Split(2, 2)))],
    }
    code, out, _ = cli(["chain-validate"], chain)
    assert code == 1
    assert json.loads(out)["violations"] == [1, 2, 3]
    code, _, err = cli(["cc-from-chain"], chain)
    assert code == 1 and json.loads(err)["violations"]


def test_limits(cli):
    fam = {"family": {"rows": 2, "cols": 2, "entries": [[["1"], []], [[], ["0", "1"]]]}}
    code, out, _ = cli(["collineate", "--flags"], fam)
    d = json.loads(out)
    assert code == 0 and d["flags"]["is_halphen"] and [s["rank"] for s in d["collineation"]["stages"]] == [1, 1]
    code, out, _ = cli(["quadric"], fam)
    assert code == 0
    code, _, err = cli(["skew"], fam)
    assert code == 1 and json.loads(err)["error"] == "flavor-mismatch"
    code, _, err = cli(["collineate"], {"family": {"rows": 1, "cols": 1, "entries": [[[]]]}})
    assert code == 1


def test_isotropy_and_series(cli):
    code, out, _ = cli(["isotropy", "--kind", "symplectic"], GRAPH_ID)
    assert code == 0 and json.loads(out)["maximal"]
    code, out, _ = cli(["snake-oil", "--j", "2", "--order", "6"])
    assert json.loads(out)["lhs"] == [0, 0, 1, 3, 6, 10, 15]
    code, out, _ = cli(["snake-oil", "--k", "1", "--order", "8"])
    assert json.loads(out)["sum_side"]["rhs"] == [1, 3, 6, 10, 15, 21, 28, 36, 45]


def test_dims_text(cli):
    code, out, _ = cli(["dims", "--dim-v", "2", "--dim-w", "2", "--u", "2", "--format", "text"])
    assert code == 0 and "dim_quotient: 3" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "clm", "identity", "--u", "2", "--k", "5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lhs"] == 11
