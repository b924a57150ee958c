import json
import subprocess
import sys

import pytest

from unitarc import serialize_model
from unitarc.cli import main
from unitarc.minimal import min_uig, power_cycle_model, power_cycle_realized
from unitarc.oracle import random_pig_model, search_non_uca
from unitarc.recognition import hollow_ratio, nose_ratio
from unitarc.render import render_model, render_realized


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["c114"] = tmp_path / "c114.pca"
    paths["c114"].write_text(serialize_model(power_cycle_model(11, 4)))
    paths["bad"] = tmp_path / "bad.pca"
    paths["bad"].write_text("pca 2\ns1 s2 t2 t1\n")
    paths["d10"] = tmp_path / "d10.json"
    paths["d10"].write_text(json.dumps({"c": "22", "l": "10", "d": "1", "ds": "0"}))
    paths["pig"] = tmp_path / "pig.pca"
    paths["pig"].write_text(serialize_model(random_pig_model(8, 5)))
    pf = lambda m: nose_ratio(m)[0].value >= hollow_ratio(m)[0].value  # noqa: E731
    paths["neg"] = tmp_path / "neg.pca"
    paths["neg"].write_text(serialize_model(search_non_uca(7, 3, prefilter=pf)))
    paths["out"] = tmp_path / "out.json"
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    lines = err.strip().splitlines()
    assert lines and lines[-1].startswith(f"unit-arc: exit={code} ")
    return code, out


def test_rep_and_certify(capsys, files):
    code, _ = run(capsys, "rep", files["c114"], "-o", files["out"])
    assert code == 0
    doc = json.loads(files["out"].read_text())
    assert doc["type"] == "positive" and doc["c"] == "21340"
    code, out = run(capsys, "certify", files["c114"], files["out"])
    assert code == 0 and json.loads(out)["ok"]


def test_negative_rep_and_certify(capsys, files):
    code, _ = run(capsys, "rep", files["neg"], "-o", files["out"])
    assert code == 1
    assert json.loads(files["out"].read_text())["type"] == "negative"
    assert run(capsys, "certify", files["neg"], files["out"])[0] == 0
    assert run(capsys, "min-uca", files["neg"])[0] == 1


def test_urep_infeasible(capsys, files):
    code, out = run(capsys, "urep", files["c114"], "--desc", files["d10"])
    doc = json.loads(out)
    assert code == 1 and doc["feasible"] is False and doc["cycle"]


def test_urep_feasible(capsys, files):
    code, out = run(capsys, "urep", files["c114"], "--c", "22", "--l", "9")
    assert code == 0 and json.loads(out)["model"]["c"] == "22"


def test_validate(capsys, files):
    assert run(capsys, "validate", files["bad"])[0] == 2
    code, out = run(capsys, "validate", files["c114"])
    assert code == 0 and json.loads(out)["n"] == 11


def test_input_errors(capsys, files, tmp_path):
    assert run(capsys, "validate", tmp_path / "missing.pca")[0] == 2
    assert run(capsys, "urep", files["c114"])[0] == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_min_commands(capsys, files):
    code, out = run(capsys, "min-circ", files["c114"], "--l", "9")
    assert code == 0 and json.loads(out)["c_star"] == "22"
    assert run(capsys, "min-circ", files["c114"], "--l", "10")[0] == 1
    code, out = run(capsys, "min-uca", files["c114"])
    doc = json.loads(out)
    assert code == 0 and (doc["c_star"], doc["l_star"]) == ("22", "9")
    code, out = run(capsys, "min-power", files["c114"])
    assert code == 0 and (json.loads(out)["k"], json.loads(out)["q"]) == (4, 11)
    code, out = run(capsys, "min-uig", files["pig"], "--d", "1", "--ds", "1")
    assert code == 0 and json.loads(out)["c_star"] is None


def test_boundrep_and_intboundrep(capsys, files):
    assert run(capsys, "boundrep", files["c114"], "--c", "22", "--l", "9")[0] == 0
    assert run(capsys, "intboundrep", files["c114"], "--c", "121", "--l", "10")[0] == 1


def test_synth_and_ratio(capsys, files):
    code, out = run(capsys, "synth", files["c114"], "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out = run(capsys, "synth", files["c114"], "--bounded")
    assert code == 0 and json.loads(out)["height"] == 2
    code, out = run(capsys, "ratio", files["c114"])
    assert code == 0 and json.loads(out)["r"] == "1/5"


def test_outputs_are_byte_stable(capsys, files):
    outs = [run(capsys, "rep", files["c114"])[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_fuzz(capsys):
    code, out = run(capsys, "fuzz", "--count", "20", "--seed", "7", "--max-n", "6")
    assert code == 0 and json.loads(out)["failures"] == []


def test_render(capsys, files, tmp_path):
    realized = tmp_path / "c51.json"
    realized.write_text(json.dumps(power_cycle_realized(5, 1).to_json()))
    one = run(capsys, "render", realized)[1]
    assert one == run(capsys, "render", realized)[1]
    assert one.count("<path") == 5
    code, out = run(capsys, "render", files["pig"], "--canonical")
    assert code == 0 and out.count("<circle") == 8
    code, out = run(capsys, "render", files["c114"])
    assert code == 0 and "s1" in out and "t11" in out


def test_render_functions():
    svg = render_model(power_cycle_model(5, 1))
    assert svg.count("<text") == 10 + 5
    line = render_realized(min_uig(random_pig_model(4, 1)).model)
    assert line.count("<line") == 4


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "unitarc.cli", "validate", str(files["c114"])],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stderr.strip().startswith("unit-arc: exit=0 validate")
