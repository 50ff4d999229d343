import json

import pytest

from formaldisk.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graphs_listing(capsys):
    code, out, _ = run_cli(capsys, "graphs", "1", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 1
    assert rep["graphs"][0]["edges"] == [[1, 2], [1, 3]]


def test_graphs_with_defect(capsys):
    code, out, _ = run_cli(capsys, "graphs", "2", "0", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 2
    assert rep["config"]["epsilon"] == 1


def test_weights_closed_table(capsys):
    code, out, _ = run_cli(capsys, "weights", "closed", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["weights"] == {"W_1": "0", "W_2": "1/24",
                              "W_3": "0", "W_4": "1/1440"}
    assert rep["schema"] == 1
    assert "toolkit" in rep


def test_weights_mc_cache_cycle(tmp_path, capsys):
    cache = str(tmp_path / "weights.jsonl")
    code, out, _ = run_cli(capsys, "weights", "mc", "--gamma0", "1",
                           "--samples", "2000", "--cache", cache)
    assert code == 0
    rep = json.loads(out)
    assert rep["served_from_cache"] is False
    assert rep["estimate"]["integral"] == pytest.approx(1.0, abs=1e-9)
    code, out, _ = run_cli(capsys, "weights", "mc", "--gamma0", "1",
                           "--samples", "2000", "--cache", cache)
    rep2 = json.loads(out)
    assert rep2["served_from_cache"] is True
    assert rep2["estimate"] == rep["estimate"]


def test_weights_mc_corrupt_cache_warns(tmp_path, capsys):
    cache = tmp_path / "weights.jsonl"
    cache.write_text("this is not json\n")
    code, out, err = run_cli(capsys, "weights", "mc", "--gamma0", "1",
                             "--samples", "1000", "--cache", str(cache))
    assert code == 0
    assert "unreadable cache line" in err


def test_weights_mc_requires_one_graph_choice(capsys):
    code, _, err = run_cli(capsys, "weights", "mc", "--samples", "100")
    assert code == 2
    assert "choose exactly one" in err
    code, _, err = run_cli(capsys, "weights", "mc", "--gamma0", "1",
                           "--wheel", "2")
    assert code == 2


def test_weights_mc_graph_file(tmp_path, capsys):
    from formaldisk import opposite_wheel
    path = tmp_path / "g.json"
    path.write_text(json.dumps(opposite_wheel(2).to_json()))
    code, out, _ = run_cli(capsys, "weights", "mc", "--graph", str(path),
                           "--samples", "20000", "--no-cache")
    assert code == 0
    rep = json.loads(out)
    assert rep["estimate"]["samples"] == 20000


def test_todd_command(capsys):
    code, out, _ = run_cli(capsys, "todd", "--order", "6")
    assert code == 0
    rep = json.loads(out)
    assert rep["modified_equals_todd_times_exp_minus_half"] is True
    assert rep["todd"][0] == "1"
    assert rep["modified_todd"][2] == "-1/24"


def test_twist_command(capsys):
    code, out, _ = run_cli(capsys, "twist")
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["passed"] is True


def test_formality_command(capsys):
    code, out, _ = run_cli(capsys, "formality", "--d", "2", "--s", "2",
                           "--cap", "6", "--gamma", "1,2")
    assert code == 0
    rep = json.loads(out)
    assert rep["agree"] is True
    assert rep["config"]["dimension"] == 2
    assert set(rep["graph_side"]) == set(rep["closed_side"])


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "weights-closed")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    assert rep["results"][0]["suite"] == "weights-closed"
    assert "timings" in rep


def test_verify_seed_threading(capsys):
    code, out, _ = run_cli(capsys, "verify", "derivation",
                           "--trials", "5", "--seed", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["seed"] == 3
    assert rep["passed"] is True


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "no-such-suite")
    assert code == 2
    assert "unknown suite" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["weights"])          # missing the mode argument
    assert exc.value.code == 2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "--out", str(target), "graphs", "1", "1")
    assert code == 0
    assert out == ""
    rep = json.loads(target.read_text())
    assert rep["count"] == 1


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"samples": 1500, "seed": 7}))
    code, out, _ = run_cli(capsys, "--config", str(cfg), "weights", "mc",
                           "--gamma0", "1", "--no-cache")
    assert code == 0
    rep = json.loads(out)
    assert rep["estimate"]["samples"] == 1500
    assert rep["estimate"]["seed"] == 7


def test_reports_are_byte_stable_modulo_timings(capsys):
    code1, out1, _ = run_cli(capsys, "weights", "closed", "3")
    code2, out2, _ = run_cli(capsys, "weights", "closed", "3")
    assert (code1, code2) == (0, 0)
    assert out1 == out2
