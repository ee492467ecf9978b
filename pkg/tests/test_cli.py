from __future__ import annotations

import csv
import io
import json

import pytest

from tripq.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_json(capsys):
    code, out, _ = _run(capsys, "partition", "--triple", "e,e,e", "--depth", "2", "--format", "json")
    assert code == 0
    cells = json.loads(out)["cells"]
    assert [c["bits"] for c in cells] == ["00", "01", "10", "11"]
    assert cells[0]["vertices"] == [["1", "1"], ["1/2", "1/2"], ["2/3", "1/3"]]


def test_partition_svg_to_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TRIPQ_OUTPUT_DIR", str(tmp_path))
    code, out, _ = _run(capsys, "bary-partition", "--triple", "e,e,e", "--depth", "2", "--format", "svg",
                        "--output", "eee.svg")
    assert code == 0 and out == ""
    assert (tmp_path / "eee.svg").read_text().startswith("<svg")


def test_qmark_and_twin(capsys):
    assert _run(capsys, "qmark", "--x", "2/5", "--level", "8")[1] == "3/8\n"
    assert _run(capsys, "twin", "--triple", "e,e,e")[1] == "13,12,12\n"
    code, out, _ = _run(capsys, "twin", "--triple", "e,e,e", "--format", "json")
    assert json.loads(out) == {"triple": "e,e,e", "twin": "13,12,12"}


def test_classify_json(capsys):
    code, out, _ = _run(capsys, "classify", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 15
    assert sum(c["size"] for c in data if c["status"].startswith("ProvenSingular")) == 96
    assert sum(c["size"] for c in data if c["status"] == "ConditionalOnErgodicity") == 60


def test_sequences(capsys):
    code, out, _ = _run(capsys, "sequence", "--triple", "e,e,e", "--point", "3/4,1/2", "--n", "1",
                        "--kind", "multiplicative", "--format", "json")
    assert code == 0 and json.loads(out)["digits"] == [0]
    code, out, _ = _run(capsys, "sequence", "--triple", "e,e,e", "--point", "9/10,1/20", "--format", "json")
    assert json.loads(out)["bits"][0] == 1
    code, out, _ = _run(capsys, "sequence", "--triple", "e,e,e", "--point", "3/4,1/2", "--kind", "barycentric")
    assert code == 0 and "boundary" in out


def test_phi_and_periodic(capsys):
    code, out, _ = _run(capsys, "phi", "--triple", "e,e,23", "--point", "3/7,2/11", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] in ("Point", "Segment", "Undetermined")
    code, out, _ = _run(capsys, "periodic", "--triple", "e,e,e", "--period", "0")
    assert "x^3 - x^2 - 1" in out
    code, out, _ = _run(capsys, "periodic", "--triple", "e,e,e", "--period", "0", "--kind", "barycentric",
                        "--format", "json")
    assert json.loads(out)["points"] == [["3/4", "1/2"]]


def test_experiments(capsys):
    code, out, _ = _run(capsys, "experiment", "sn", "--triple", "e,e,e", "--samples", "3", "--n", "10",
                        "--denominator-bits", "128", "--format", "csv")
    assert code == 0 and out.startswith("# config: ")
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert rows[0] == ["sample", "n", "s_n", "s_n_over_n", "status"] and len(rows) == 4
    code, out, _ = _run(capsys, "experiment", "areas", "--triple", "e,23,e", "--k-max", "3", "--format", "json")
    assert json.loads(out)["law_holds"] is True
    code, out, _ = _run(capsys, "experiment", "recursion", "--triple", "e,e,e", "--k-max", "2", "--format", "json")
    assert json.loads(out)["levels"][1]["area"] == "1/2"
    code, out, _ = _run(capsys, "experiment", "convergence", "--triple", "e,e,e", "--samples", "2",
                        "--depth", "20", "--forced-tail", "1")
    assert code == 0 and "final_max_side" in out


@pytest.mark.parametrize("argv,code,tag", [
    (["twin", "--triple", "e,21,e"], 2, "E_PARSE"),
    (["qmark", "--x", "0.4"], 2, "E_PARSE"),
    (["qmark", "--x", "3/2"], 3, "E_OUT_OF_RANGE"),
    (["sequence", "--triple", "e,e,e", "--point", "1/2,3/4"], 3, "E_OUTSIDE_DOMAIN"),
    (["experiment", "areas", "--triple", "e,e,e", "--k-max", "-1"], 2, "E_INVALID_ARGUMENT"),
    (["classify", "--format", "svg"], 2, "E_PARSE"),
])
def test_error_exit_codes(capsys, argv, code, tag):
    got, _, err = _run(capsys, *argv)
    assert got == code and f"error[{tag}]" in err


def test_bad_flags_exit_two(capsys):
    assert run(["partition", "--depth", "x"]) == 2
    assert run(["nonsense"]) == 2
