import json
import subprocess
import sys

import pytest

from coverpoly.cli import main
from coverpoly.harness import SCHEMA

from conftest import FIXTURES

C5 = str(FIXTURES / "c5.txt")
C5_DEC = str(FIXTURES / "c5_decomposition.json")
BAD_DEC = str(FIXTURES / "c5_bad_decomposition.json")
K4 = str(FIXTURES / "k4.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def test_wp_check_c5_reports_constructive_pair(capsys):
    code, rep, _ = run_json(capsys, "wp-check", C5, "--k", "2", "--decomposition", C5_DEC)
    assert code == 0 and rep["schema"] == SCHEMA and rep["ok"]
    (power,) = rep["result"]["powers"]
    assert power["generators"] == 15 and power["wp"] == {"ok": True}
    assert power["methods"]["constructive-case-y3"] > 0
    assert power["identity_violations"] == 0 and power["disagreements"] == 0
    hit = [w for w in power["witnesses"] if w["f"] == "y1*y2*y3^2*y4*y5" and w["g"] == "y1*y2*y3*y4^2*y5"]
    assert hit and hit[0]["z"] == "y3" and hit[0]["w"] == "y4"
    assert hit[0]["method"] == "constructive-case-y3"


def test_wp_check_human_output(capsys):
    code, out = run(capsys, "wp-check", C5, "--k", "1..3")
    assert code == 0
    assert out.splitlines()[0] == "order: y1 > y2 > y3 > y4 > y5"
    assert "k=3: 35 generators" in out


def test_non_cactus_rejected_when_required(capsys):
    code, rep, _ = run_json(capsys, "wp-check", K4, "--require-cactus")
    assert code == 2 and "not a cactus" in rep["error"]


def test_non_cactus_without_order_is_an_error(capsys):
    code, rep, _ = run_json(capsys, "wp-check", K4)
    assert code == 2 and "order" in rep["error"]


def test_non_cactus_with_explicit_order(capsys, tmp_path):
    order = tmp_path / "order.txt"
    order.write_text("a b c d\n")
    code, rep, _ = run_json(capsys, "wp-check", K4, "--order", str(order), "--k", "1")
    # without a decomposition every pair goes to brute force
    assert code == 0
    assert rep["result"]["decomposition"] is None


def test_unparseable_graph(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("a b c\n")
    code, rep, _ = run_json(capsys, "wp-check", str(bad))
    assert code == 2 and rep["error"].startswith("InputError")


def test_missing_file(capsys):
    code, _ = run(capsys, "covers", str(FIXTURES / "nope.txt"))
    assert code == 2


def test_invalid_decomposition_is_an_error(capsys):
    code, rep, _ = run_json(capsys, "wp-check", C5, "--decomposition", BAD_DEC)
    assert code == 2 and "invalid decomposition" in rep["error"]


def test_bad_k_range(capsys):
    code, _ = run(capsys, "wp-check", C5, "--k", "0..2")
    assert code == 2
    code, _ = run(capsys, "wp-check", C5, "--k", "1..9", "--k-cap", "4")
    assert code == 2


def test_fuzz_zero_instances(capsys):
    code, rep, _ = run_json(capsys, "fuzz", "--n", "0")
    assert code == 0 and rep["summary"]["instances"] == 0 and rep["summary"]["findings"] == 0


def test_fuzz_strict_flags_injected_bad_instance(capsys):
    code, rep, _ = run_json(capsys, "fuzz", "--n", "2", "--strict", "--instance", C5, BAD_DEC)
    assert code == 1
    assert rep["summary"]["invalid_decompositions"] == 1
    assert rep["instances"][-1]["instance"].startswith("file:")
    code, _, _ = run_json(capsys, "fuzz", "--n", "2", "--instance", C5, BAD_DEC)
    assert code == 0


def test_fuzz_good_instance_passes_strict(capsys):
    code, rep, _ = run_json(capsys, "fuzz", "--n", "3", "--strict", "--instance", C5, C5_DEC)
    assert code == 0 and rep["summary"]["instances"] == 4


def test_fuzz_bad_limits(capsys):
    assert run(capsys, "fuzz", "--limits", "1,2")[0] == 2
    assert run(capsys, "fuzz", "--limits", "a,b,c")[0] == 2


@pytest.mark.parametrize("argv", [
    ("wp-check", C5, "--k", "1..2"),
    ("fuzz", "--seed", "7", "--n", "4"),
])
def test_json_output_is_byte_identical(capsys, argv):
    _, _, first = run_json(capsys, *argv)
    _, _, second = run_json(capsys, *argv)
    assert first == second


def test_timings_only_when_requested(capsys):
    _, rep, _ = run_json(capsys, "wp-check", C5, "--k", "1")
    assert "timings" not in rep["result"]
    _, rep, _ = run_json(capsys, "wp-check", C5, "--k", "1", "--timings")
    assert set(rep["result"]["timings"]) >= {"cover_ideal", "power_1", "wp_1"}


def test_check_cactus(capsys):
    code, rep, _ = run_json(capsys, "check-cactus", C5)
    assert code == 0 and rep["cactus"] and len(rep["cycles"]) == 1
    code, rep, _ = run_json(capsys, "check-cactus", K4)
    assert code == 1 and not rep["cactus"]


def test_decompose(capsys):
    code, rep, _ = run_json(capsys, "decompose", C5)
    assert code == 0
    assert rep["decomposition"]["five_cycles"] == [{"y1": "y1", "y2": "y2", "y3": "y3", "y4": "y4", "y5": "y5"}]
    code, rep, _ = run_json(capsys, "decompose", K4)
    assert code == 2 and "cactus" in rep["error"]


def test_decompose_path_has_none(capsys, tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text("a b\nb c\n")
    code, rep, _ = run_json(capsys, "decompose", str(path))
    assert code == 1 and rep["decomposition"] is None


def test_covers(capsys):
    code, rep, _ = run_json(capsys, "covers", C5)
    assert code == 0
    assert rep["covers"] == [["y1", "y2", "y3"], ["y1", "y2", "y5"], ["y1", "y3", "y4"],
                             ["y2", "y4", "y5"], ["y3", "y4", "y5"]]


def test_ideal_power(capsys):
    code, rep, _ = run_json(capsys, "ideal-power", C5, "--k", "2")
    assert code == 0 and len(rep["generators"]) == 15
    assert "y1*y2*y3^2*y4*y5" in rep["generators"]
    assert run(capsys, "ideal-power", C5, "--k", "1..2")[0] == 2


def test_witness_example(capsys):
    code, rep, _ = run_json(capsys, "witness", C5, "--f", "y1*y2*y3^2*y4*y5", "--g", "y1*y2*y3*y4^2*y5")
    assert code == 0 and rep["divergence"] == "y3"
    methods = {w["method"]: w for w in rep["witnesses"]}
    assert methods["constructive-case-y3"]["w"] == "y4"
    assert methods["brute-force"]["w"] == "y4"


def test_witness_without_divergence(capsys):
    code, rep, _ = run_json(capsys, "witness", C5, "--g", "y1*y2*y3^2*y4*y5", "--f", "y1*y2*y3*y4^2*y5")
    assert code == 0 and rep["divergence"] is None


def test_witness_rejects_non_members(capsys):
    code, rep, _ = run_json(capsys, "witness", C5, "--f", "y1*y2", "--g", "y1*y2*y3*y4^2*y5")
    assert code == 2


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "coverpoly.cli", "check-cactus", C5],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "cactus"
