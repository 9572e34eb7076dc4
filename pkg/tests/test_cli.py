import json

import pytest

from confbetti.cli import main
from confbetti.verify import stable_table_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_betti_examples(capsys):
    assert run(capsys, "betti", "--closed-orientable", "6", "-i", "43", "-k", "50") == \
        (0, "66446126460 (series)\n", "")
    assert run(capsys, "betti", "--closed-nonorientable", "1", "-i", "3", "-k", "3")[1] == "1 (formula)\n"
    code, out, _ = run(capsys, "betti", "--open-orientable", "0", "1", "-i", "1", "-k", "1",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == {"surface": {"kind": "open-orientable", "g": 0, "n": 1},
                               "i": 1, "k": 1, "betti": "0", "provenance": "formula"}


def test_betti_oracle_flag(capsys):
    code, out, _ = run(capsys, "betti", "--closed-orientable", "1", "-i", "3", "-k", "3",
                       "--oracle", "--format", "csv")
    assert code == 0 and out == "surface,i,k,betti,provenance\nSigma_1,3,3,4,oracle\n"


@pytest.mark.parametrize("argv", [
    ["betti", "-i", "1", "-k", "1"],
    ["betti", "--closed-orientable", "1", "--closed-nonorientable", "2", "-i", "1", "-k", "1"],
    ["betti", "--open-orientable", "1", "-i", "1", "-k", "1"],
    ["betti", "--closed-nonorientable", "0", "-i", "1", "-k", "1"],
    ["betti", "--closed-orientable", "1", "-i", "-1", "-k", "1"],
    ["stable-table", "--max-g", "-1"],
    ["series", "V", "-g", "1"],
    ["verify", "nothing"],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_stable_table(capsys):
    code, out, _ = run(capsys, "stable-table", "--max-g", "6", "--max-i", "43", "--format", "csv")
    assert code == 0 and out == stable_table_fixture()
    assert run(capsys, "stable-table", "--max-g", "6", "--max-i", "43", "--format", "csv",
               "--path", "formula")[1] == out
    out = run(capsys, "stable-table", "--max-g", "0", "--max-i", "5")[1]
    assert [line.split()[1] for line in out.splitlines()[1:]] == ["1", "0", "0", "1", "0", "0"]
    out = run(capsys, "stable-table", "--max-g", "1", "--max-i", "4", "--format", "json")[1]
    assert [r["betti"][1] for r in json.loads(out)["rows"]] == ["1", "2", "3", "5", "7"]
    assert run(capsys, "stable-table", "--max-g", "1", "--max-i", "1", "--format", "markdown")[1] \
        == "| i | 0 | 1 |\n|---|---|---|\n| 0 | 1 | 1 |\n| 1 | 0 | 2 |\n"


def test_polys(capsys):
    out = run(capsys, "polys", "-g", "1", "--family", "stable")[1]
    assert out == "p^st_1 = 2i-1\nq^st_1 = 2i-1\n"
    out = run(capsys, "polys", "-g", "3", "--family", "top")[1]
    assert "p^1_3 = (i^5+4i^4-2i^3+32i^2+i-420)/384" in out
    out = run(capsys, "polys", "-g", "2", "--family", "diag", "--format", "json")[1]
    q = json.loads(out)[1]
    assert q["polynomial"] == "(3i^3+4i^2+28i)/16"
    assert q["coefficients"] == ["0", "7/4", "1/4", "3/16"]


def test_series(capsys):
    assert run(capsys, "series", "V", "-g", "0", "-n", "1", "--trunc", "4")[1] == "1 + t^3 + O(t^5)\n"
    out = run(capsys, "series", "K", "-g", "1", "--trunc", "3", "--format", "csv")[1]
    assert out == "degree,coefficient\n0,1\n1,0\n2,2\n3,1\n"
    out = run(capsys, "series", "P_st", "-g", "6", "--trunc", "43", "--format", "json")[1]
    assert json.loads(out)["coefficients"][-1] == "66446126460"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "figures")
    assert code == 0 and "FAIL" not in out
    assert run(capsys, "verify", "oracle", "--max-g", "2", "--max-k", "6")[0] == 0
    code, _, err = run(capsys, "verify", "oracle", "--max-g", "99")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "verify", "recurrences", "--max-g", "4", "--trunc", "20",
                       "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_mismatch_exit_1(capsys, monkeypatch):
    import confbetti.verify as v
    real = v.resolve
    monkeypatch.setattr(v, "resolve", lambda s, i, k: (real(s, i, k)[0] + (i == 2 and k == 3),
                                                      "series"))
    code, out, _ = run(capsys, "verify", "oracle", "--max-g", "1", "--max-k", "3")
    assert code == 1
    assert "mismatches:" in out and "i=2 k=3" in out and "provenance=series" in out


def test_output_is_deterministic(capsys):
    argv = ["stable-table", "--max-g", "3", "--max-i", "12", "--format", "json"]
    assert run(capsys, *argv) == run(capsys, *argv)
