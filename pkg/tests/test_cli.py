import json

import pytest

from rainbowgirth.cli import main
from rainbowgirth.container import write_colored_graph
from rainbowgirth.generators import gen_random_family, gen_star_cycle
from rainbowgirth.seeding import derive_seed


@pytest.fixture
def star_cycle_file(tmp_path):
    path = tmp_path / "star_cycle.txt"
    write_colored_graph(gen_star_cycle(12, 3), path)
    return str(path)


@pytest.fixture
def matching_file(tmp_path):
    path = tmp_path / "matching.json"
    write_colored_graph(gen_random_family(128, {"matching2": 128}, 0), path, "json")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_gen_star_cycle_text(capsys):
    code, out = run(capsys, ["gen", "--kind", "star-cycle", "--n", "5", "--r", "1", "--format", "text"])
    assert code == 0
    assert out == "5 5\n0 1 0\n1 2 1\n2 3 2\n3 4 3\n0 4 4\n"


def test_gen_writes_graph_and_parameters(capsys, tmp_path):
    output = tmp_path / "random.txt"
    code, _ = run(capsys, [
        "gen", "--kind", "random", "--n", "30", "--matching2", "5", "--triangle", "2",
        "--seed", "4", "--format", "text", "--output", str(output),
    ])
    assert code == 0
    assert output.read_text().startswith("30 16\n")
    params = json.loads((tmp_path / "random.txt.params.json").read_text())
    assert params["counts"]["triangle"] == 2 and params["seed"] == 4


def test_rainbow_girth(capsys, star_cycle_file):
    code, out = run(capsys, ["rainbow-girth", star_cycle_file])
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert payload["length"] == 4


def test_girth(capsys, star_cycle_file):
    code, out = run(capsys, ["girth", star_cycle_file])
    assert code == 0
    assert json.loads(out)["girth"] == 3


def test_bound(capsys):
    code, out = run(capsys, ["bound", "--n", "4", "--k", "2"])
    assert code == 0
    assert json.loads(out)["bs_bound"] == pytest.approx(10)

    code, out = run(capsys, ["bound", "--calibrate", "1000"])
    assert json.loads(out) == {"A": 1001, "L0": 100100}


def test_find_is_deterministic(capsys, matching_file):
    argv = ["find", matching_file, "--alpha", "1", "--beta", "0", "--trials", "16", "--seed", "5"]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second
    assert first[0] == 0
    payload = json.loads(first[1])
    assert payload["branch"] == "sampling"
    assert len(payload["trials"]) == 16


def test_find_writes_trial_log(capsys, matching_file, tmp_path):
    log = tmp_path / "trials.csv"
    code, _ = run(capsys, ["find", matching_file, "--alpha", "1", "--beta", "0", "--trials", "16", "--trial-log", str(log)])
    assert code == 0
    assert log.read_text().splitlines()[0].startswith("trial,seed,")


def test_infeasible_input_exits_with_2(capsys, star_cycle_file):
    code, out = run(capsys, ["find", star_cycle_file, "--alpha", "1", "--beta", "0"])
    assert code == 2
    payload = json.loads(out)
    assert payload["error"] == "InfeasibleHypothesisError"
    assert payload["condition"] == "F_M"


def test_bad_input_exits_with_1(capsys, star_cycle_file, tmp_path):
    assert main(["girth", str(tmp_path / "missing.txt")]) == 1
    assert main(["find", star_cycle_file, "--mode", "nonstarex", "--c", "0.1"]) == 1
    assert main(["gen", "--kind", "tight", "--n", "40"]) == 1
    assert main(["bound"]) == 1
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 1


def test_repair_subcommand(capsys, tmp_path):
    path = tmp_path / "planted.txt"
    write_colored_graph(gen_random_family(30, {"triangle": 20, "star2": 10}, 0), path)
    code, out = run(capsys, ["repair", str(path), "--alpha", "2/3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["mode"] == "nonstar"
    assert payload["branch"] == "triangle"


def test_lb_build_is_deterministic(capsys, tmp_path):
    output = tmp_path / "G.txt"
    argv = ["lb-build", "--n", "30", "--t", "3", "--L", "0.5", "--ell-max", "4", "--seed", "3",
            "--search-cap", "4", "--output", str(output)]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second
    payload = json.loads(first[1])
    assert payload["min_rainbow_size"] is None
    assert payload["G"] == len(output.read_text().splitlines()) - 1


def test_lb_verify_finds_planted_cycle(capsys, tmp_path, planted_c4_text):
    path = tmp_path / "planted.txt"
    path.write_text(planted_c4_text)
    code, out = run(capsys, ["lb-verify", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["min_rainbow_size"] == 4
    assert payload["classes"] == 4


def test_sweep_config_with_override(capsys, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"n_values": [32], "grid": [["1", "0"]], "trials": 3, "master_seed": 7}))
    code, out = run(capsys, ["sweep", "--config", str(config), "--trials", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["config"]["trials"] == 2
    assert report["config"]["master_seed"] == 7
    assert len(report["rows"]) == 1
    assert report["rows"][0]["seed"] == derive_seed(7, 0)
    assert len(report["rows"][0]["trials"]) == 2


def test_sweep_csv_output(capsys):
    code, out = run(capsys, ["sweep", "--n", "32", "--grid", "1,0", "1/2,1/2", "--trials", "2", "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("cell,seed,mode,")
    assert len(lines) == 3


def test_lb_events(capsys):
    code, out = run(capsys, ["lb-events", "--grid", "20,3,0.05", "--seeds", "3"])
    assert code == 0
    cells = json.loads(out)["cells"]
    assert len(cells) == 1
    assert cells[0]["seeds"] == 3
    assert 0 <= cells[0]["freq_ABC"] <= 1

    assert main(["lb-events", "--seeds", "3"]) == 1


def test_malformed_flags_exit_with_1(capsys, star_cycle_file):
    assert main(["find", star_cycle_file, "--alpha", "abc", "--beta", "0"]) == 1
    assert main(["girth"]) == 1
    assert main(["unknown-command"]) == 1
    assert main(["girth", "--help"]) == 0
