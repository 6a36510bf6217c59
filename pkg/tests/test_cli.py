import json

import pytest

from wcgames.cli import main, parse_ints


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_ints():
    assert parse_ints("24..40:8") == [24, 32, 40]
    assert parse_ints("3,5") == [3, 5]
    assert parse_ints("3", count_form=True) == [0, 1, 2]
    assert parse_ints("2..4", count_form=True) == [2, 3, 4]


def test_run_is_deterministic(capsys, tmp_path):
    args = ["run", "--strategy", "pm-complete", "--n", "24..32:8", "--seeds", "2"]
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args, "--jobs", "2")
    assert code1 == code2 == 0 and out1 == out2
    rows = out1.strip().splitlines()
    assert rows[0].startswith("schema,strategy") and len(rows) == 5
    assert all(",True,True,0," in r for r in rows[1:])


def test_json_output_and_bound_column(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run_cli(capsys, "run", "--strategy", "ham-unbiased", "--n", "40", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and data["schema"] == "wcgames.results/1"
    row = data["rows"][0]
    assert row["bound"] == 41 and row["within_bound"] and row["certificate_valid"]


@pytest.fixture
def transcript(capsys, tmp_path):
    run_cli(capsys, "run", "--strategy", "pm-complete", "--n", "24", "--transcripts", str(tmp_path))
    return next(tmp_path.glob("*.json"))


def test_verify_clean(capsys, transcript):
    code, out = run_cli(capsys, "verify", str(transcript))
    assert code == 0 and out.strip().endswith("clean")


def test_verify_flipped_pick(capsys, transcript, tmp_path):
    t = json.loads(transcript.read_text())
    t["rounds"][2]["pick"] ^= 1
    bad = tmp_path / "flip.json"
    bad.write_text(json.dumps(t))
    code, out = run_cli(capsys, "verify", str(bad))
    assert code == 1 and "replay divergence" in out


def test_verify_certificate_edge_given_to_waiter(capsys, transcript, tmp_path):
    t = json.loads(transcript.read_text())
    waiter_edge = next(r["offer"][1 - r["pick"]] for r in t["rounds"] if "offer" in r)
    t["certificate"]["edges"][0] = waiter_edge
    bad = tmp_path / "cert.json"
    bad.write_text(json.dumps(t))
    code, out = run_cli(capsys, "verify", str(bad))
    assert code == 1 and "certificate invalid" in out


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, out = run_cli(capsys, "verify", str(bad))
    assert code == 2


def test_replay(capsys, transcript):
    code, out = run_cli(capsys, "replay", "-v", str(transcript))
    assert code == 0 and "certificate valid" in out and out.startswith("1: offer")


@pytest.mark.parametrize("name,tau", [("single", "1"), ("k3-connectivity", "2"), ("k4-pm", "Unwinnable")])
def test_solve_builtin(capsys, name, tau):
    code, out = run_cli(capsys, "solve", "--builtin", name)
    assert code == 0 and out.splitlines()[0] == f"tau {tau}"


def test_solve_file(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"size": 3, "sets": [[0, 1], [0, 2], [1, 2]], "bias": 1}))
    code, out = run_cli(capsys, "solve", str(f))
    assert code == 0 and "tau 2" in out and "states visited" in out


def test_strict_exit_on_forfeit(capsys):
    code, _ = run_cli(capsys, "run", "--strategy", "ham-unbiased", "--n", "10", "--strict")
    assert code == 1
    code, _ = run_cli(capsys, "run", "--strategy", "ham-unbiased", "--n", "10")
    assert code == 0


def test_unknown_strategy_rejected():
    with pytest.raises(SystemExit):
        main(["run", "--strategy", "nope", "--n", "10"])
