import json

import numpy as np
import pytest

import app
from src.ingestion import (
    encode_bipartite,
    encode_ensemble,
    encode_matrix,
    encode_overlap,
    make_rng,
    random_overlap_instance,
)

HELSTROM_ZERO_PLUS = (1 + 1 / np.sqrt(2)) / 2


def run_json(capsys, argv):
    assert app.main(argv) == 0
    return json.loads(capsys.readouterr().out)


def row_is_sandwiched(row) -> bool:
    return row["lambda_sq"] <= row["achieved"] + 1e-9 and row["achieved"] <= row["upper"] + 1e-9


def test_discriminate_zero_one_plus(capsys, write_json, zero_one_plus):
    path = write_json("ensemble.json", encode_ensemble(zero_one_plus))
    row = run_json(capsys, ["discriminate", path])["discrimination"][0]
    assert abs(row["lambda"] - 0.9238795325112867) < 1e-9
    assert abs(row["achieved"] - HELSTROM_ZERO_PLUS) < 1e-9
    assert abs(row["oracle_optimal"] - HELSTROM_ZERO_PLUS) < 1e-9
    assert (row["size"], row["dim"]) == (2, 2)


def test_discriminate_orthogonal_pair(capsys, write_json, orthogonal_pair):
    path = write_json("ensemble.json", encode_ensemble(orthogonal_pair))
    row = run_json(capsys, ["discriminate", path])["discrimination"][0]
    for key in ("lambda", "lambda_sq", "p_succ_qw", "p_succ_pgm", "oracle_optimal"):
        assert abs(row[key] - 1.0) < 1e-12


def test_discriminate_random_is_seeded(capsys):
    first = run_json(capsys, ["discriminate", "--random", "3", "2", "--seed", "42"])
    second = run_json(capsys, ["discriminate", "--random", "3", "2", "--seed", "42"])
    assert first == second
    row = first["discrimination"][0]
    assert row["size"] == 3
    assert row["oracle_optimal"] is None
    assert row["lambda_sq"] <= row["p_succ_qw"] + 1e-9


def test_csv_output(capsys):
    assert app.main(["discriminate", "--random", "2", "2", "--format", "csv"]) == 0
    header, values = capsys.readouterr().out.splitlines()
    assert header.split(",")[:3] == ["label", "lambda", "lambda_sq"]
    assert len(values.split(",")) == len(header.split(","))


def test_output_file(capsys, tmp_path):
    target = tmp_path / "bounds.csv"
    assert app.main(["discriminate", "--random", "2", "2", "--format", "csv", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().startswith("label,lambda")


def test_iterate_from_identity(capsys, write_json, zero_one_plus):
    path = write_json("ensemble.json", encode_ensemble(zero_one_plus))
    payload = run_json(capsys, ["iterate", path])
    trace = payload["trace"][0]
    assert trace["start"] == "identity"
    assert trace["converged"]
    assert abs(payload["steps"][0]["objective"] - HELSTROM_ZERO_PLUS) < 1e-9
    assert [row["step"] for row in payload["steps"]] == list(range(len(payload["steps"])))


def test_iterate_perfect_start(capsys, write_json, orthogonal_pair):
    path = write_json("ensemble.json", encode_ensemble(orthogonal_pair))
    trace = run_json(capsys, ["iterate", path, "--start", "perfect"])["trace"][0]
    assert trace["steps"] == 1
    assert trace["stop_reason"] == "tolerance"


def test_iterate_random_ensemble_with_random_start(capsys):
    payload = run_json(capsys, ["iterate", "--random", "3", "2", "--start", "random", "--max-iters", "20"])
    objectives = [row["objective"] for row in payload["steps"]]
    assert all(b >= a - 1e-10 for a, b in zip(objectives, objectives[1:]))
    assert payload["trace"][0]["steps"] <= 20


def test_iterate_perfect_start_needs_two_states(capsys):
    assert app.main(["iterate", "--random", "3", "2", "--start", "perfect"]) == 2
    assert "2 states" in capsys.readouterr().err


def test_iterate_overlap_instance(capsys, write_json):
    instance = random_overlap_instance(make_rng(3), 2, 2, 2)
    path = write_json("overlap.json", encode_overlap(instance))
    payload = run_json(capsys, ["iterate", path, "--max-iters", "100"])
    objectives = [row["objective"] for row in payload["steps"]]
    assert all(b >= a - 1e-10 for a, b in zip(objectives, objectives[1:]))
    assert app.main(["iterate", path, "--start", "random", "--max-iters", "10"]) == 0
    capsys.readouterr()
    assert app.main(["iterate", path, "--start", "pgm"]) == 2


def test_reverse_depolarizing(capsys):
    row = run_json(capsys, ["reverse", "depolarizing:p=0.5,d=2"])["recovery"][0]
    assert abs(row["fidelity_quadratic"] - 4 / 7) < 1e-9
    assert abs(row["quadratic_alone"] - 25 / 28) < 1e-9
    assert abs(row["achieved"] - 4 / 7) < 1e-9
    assert abs(row["lambda_sq"] - 0.4375) < 1e-9
    assert abs(row["output_trace"] - 1.0) < 1e-9
    assert row["fidelity_quadratic"] >= row["fidelity_barnum_knill"] ** 2 - 1e-9


def test_reverse_unitary_is_perfect(capsys):
    row = run_json(capsys, ["reverse", "unitary:H"])["recovery"][0]
    for key in ("lambda", "achieved", "fidelity_quadratic", "fidelity_barnum_knill", "fidelity_transpose"):
        assert abs(row[key] - 1.0) < 1e-9


def test_reverse_with_state_and_choi_dump(capsys, write_json, tmp_path):
    rho = write_json("rho.json", encode_matrix(np.diag([0.7, 0.3])))
    dump = tmp_path / "choi.json"
    row = run_json(capsys, ["reverse", "amplitude_damping:gamma=0.3", "--rho", rho, "--dump-choi", str(dump)])
    assert row_is_sandwiched(row["recovery"][0])
    saved = json.loads(dump.read_text())
    assert set(saved) == {"quadratic", "barnum_knill", "transpose"}
    assert saved["quadratic"]["rows"] == 4
    assert saved["quadratic"]["dims"] == [2, 2]


def test_reverse_random_channel_is_seeded(capsys):
    argv = ["reverse", "random:din=2,dout=3", "--seed", "7"]
    payload = run_json(capsys, argv)
    assert payload == run_json(capsys, argv)
    row = payload["recovery"][0]
    assert row_is_sandwiched(row)
    assert row["quadratic_alone"] is None


def test_minentropy_of_bell_state(capsys, write_json, bell_state):
    rho, dims = bell_state
    path = write_json("bell.json", encode_bipartite(rho, dims))
    payload = run_json(capsys, ["minentropy", path, "--s", "0.5", "--s", "1.0"])
    assert [row["s"] for row in payload["min_entropy"]] == [0.5, 1.0]
    for row in payload["min_entropy"]:
        assert abs(row["lower"] + 1.0) < 1e-9
        assert abs(row["upper"] + 1.0) < 1e-9
    assert abs(payload["best"][0]["best_lower"] + 1.0) < 1e-9


def test_minentropy_random_state_uses_default_grid(capsys):
    payload = run_json(capsys, ["minentropy", "--random", "2", "2", "--pure"])
    assert len(payload["min_entropy"]) == 5
    best = payload["best"][0]
    assert best["best_lower"] <= best["best_upper"] + 1e-9


@pytest.mark.parametrize("seed", ["1", "3", "8"])
def test_minentropy_random_pure_states(capsys, seed):
    payload = run_json(capsys, ["minentropy", "--random", "2", "3", "--pure", "--seed", seed])
    for row in payload["min_entropy"]:
        assert row["lower"] <= row["upper"] + 1e-9
        assert row["lower"] - 1e-9 <= row["achieved"] <= row["upper"] + 1e-9


def test_selftest_passes(capsys):
    rows = run_json(capsys, ["selftest"])["selftest"]
    assert [row["suite"] for row in rows] == ["discrimination", "iteration", "recovery", "overlap", "min_entropy"]
    assert all(row["status"] == "pass" for row in rows)


def test_selftest_catches_injected_fault(capsys):
    assert app.main(["selftest", "--inject-fault"]) == 1
    captured = capsys.readouterr()
    rows = json.loads(captured.out)["selftest"]
    assert rows[0]["status"] == "fail"
    assert "critical violations" in captured.err
    assert "injected fault" in captured.err
    assert all(row["status"] == "pass" for row in rows[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ["discriminate", "does-not-exist.json"],
        ["discriminate"],
        ["reverse", "bogus:p=1"],
        ["reverse", "depolarizing:p=2"],
        ["discriminate", "--random", "2", "2", "--tol", "0"],
        ["minentropy"],
    ],
)
def test_input_errors_exit_with_two(argv, capsys):
    assert app.main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_through_argparse():
    with pytest.raises(SystemExit) as info:
        app.main(["iterate", "--start", "sideways"])
    assert info.value.code == 2


def test_unreadable_inputs_exit_with_two(capsys, tmp_path):
    garbled = tmp_path / "garbled.json"
    garbled.write_bytes(b"\xff\xfe\x00{")
    for argv in (["discriminate", str(garbled)], ["minentropy", str(tmp_path)]):
        assert app.main(argv) == 2
        assert "error:" in capsys.readouterr().err
