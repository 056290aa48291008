import json
import math
import re

import numpy as np
import pytest

from unigate import GateParams, TAU, v_matrix
from unigate.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_and_reports(capsys):
    code, out, err = run_cli(capsys, "verify", "--seed", "7", "--trials", "3")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["seed"] == 7
    assert report["trials"] == 3
    names = {c["name"] for c in report["checks"]}
    assert {"inverse_identity", "power_law", "v_from_five", "p_construction",
            "q_construction", "t_second_order", "d_assembly"} <= names
    for check in report["checks"]:
        assert check["pass"] is True
        assert len(check["draws"]) == 3


def test_verify_default_run_passes(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["seed"] == 42 and report["trials"] == 100


def test_verify_single_trial_single_draw(capsys):
    code, out, _ = run_cli(capsys, "verify", "--trials", "1")
    assert code == 0
    report = json.loads(out)
    assert all(len(c["draws"]) == 1 for c in report["checks"])


def test_verify_deterministic_apart_from_timestamp(capsys):
    _, out1, _ = run_cli(capsys, "verify", "--seed", "13", "--trials", "2")
    _, out2, _ = run_cli(capsys, "verify", "--seed", "13", "--trials", "2")
    strip = lambda s: re.sub(r'"timestamp": "[^"]*"', '"timestamp": null', s)
    assert strip(out1) == strip(out2)


def test_compose_matrix_output(tmp_path, capsys):
    p = GateParams(1.0, 0.5, 0.25)
    path = tmp_path / "v.unet"
    path.write_text(f"register 3\nv 1 2 3 {p.phi} {p.alpha} {p.theta}\n")
    code, out, _ = run_cli(capsys, "compose", str(path))
    assert code == 0
    data = json.loads(out)
    got = np.array([[complex(re_, im) for re_, im in row] for row in data["matrix"]])
    assert np.linalg.norm(got - v_matrix(p)) < 1e-12


def test_compose_initial_state(tmp_path, capsys):
    theta = 0.9
    path = tmp_path / "d.unet"
    path.write_text(f"register 3\nrz 1 2 3 -pi/2\nv 1 2 3 pi pi/2 {theta}\nrz 1 2 3 pi/2\n")
    # netlist realizes the conditional-rotation target at phi = pi
    code, out, _ = run_cli(capsys, "compose", str(path), "--input", "110")
    assert code == 0
    state = np.array([complex(re_, im) for re_, im in json.loads(out)["state"]])
    assert abs(state[6] - 1j * math.cos(theta)) < 1e-12
    assert abs(state[7] - math.sin(theta)) < 1e-12


def test_compose_missing_file(capsys):
    code, out, err = run_cli(capsys, "compose", "/no/such/file.unet")
    assert code != 0
    assert err


def test_compose_parse_error_names_position(tmp_path, capsys):
    path = tmp_path / "bad.unet"
    path.write_text("register 2\na 1 1 0 0 0\n")
    code, out, err = run_cli(capsys, "compose", str(path))
    assert code != 0
    assert "2:" in err and "DUPLICATE_QUBIT" in err


def test_compose_bad_input_bits(tmp_path, capsys):
    path = tmp_path / "ok.unet"
    path.write_text("register 3\n")
    code, _, err = run_cli(capsys, "compose", str(path), "--input", "01")
    assert code != 0
    assert "3 bits" in err


def test_approx_trivial_target(capsys):
    code, out, _ = run_cli(
        capsys, "approx", "--phi", "1.0", "--alpha", "2.0", "--theta", "3.0",
        "--target-alpha", "2.0", "--target-theta", "3.0", "--eps", "0.1",
    )
    assert code == 0
    result = json.loads(out)
    assert result["n"] == 1 and result["met"] is True


def test_approx_golden(capsys):
    code, out, _ = run_cli(
        capsys, "approx", "--phi", "1.0",
        "--alpha", repr(TAU * 0.6180339887), "--theta", repr(TAU * 0.3819660113),
        "--target-alpha", "0", "--target-theta", "0", "--eps", "0.05",
    )
    assert code == 0
    assert json.loads(out)["n"] == 89


def test_approx_not_met_exits_nonzero(capsys):
    code, out, _ = run_cli(
        capsys, "approx", "--phi", "1.0", "--alpha", "2.0", "--theta", "2.0",
        "--target-alpha", "1.0", "--target-theta", "4.0", "--eps", "0.2",
        "--n-max", "10000",
    )
    assert code == 1
    assert json.loads(out)["met"] is False


def test_approx_bad_eps_usage_error(capsys):
    code, _, err = run_cli(
        capsys, "approx", "--phi", "1", "--alpha", "1", "--theta", "1",
        "--target-alpha", "0", "--target-theta", "0", "--eps", "-0.5",
    )
    assert code == 2
    assert "eps" in err


def test_converge_rz_zero_beta(capsys):
    code, out, _ = run_cli(
        capsys, "converge", "--construction", "rz", "--phi", "1.0",
        "--beta", "0", "--n", "1,4,16",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,distance"
    for line in lines[1:]:
        n, dist = line.split(",")
        assert float(dist) < 1e-12


def test_converge_vperp_improves_tenfold(capsys):
    code, out, _ = run_cli(
        capsys, "converge", "--construction", "vperp", "--phi", "1.0",
        "--beta", "0.5", "--n", "4,4096",
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert float(rows[-1][1]) <= float(rows[0][1]) / 10


def test_converge_d_nonincreasing(capsys):
    code, out, _ = run_cli(
        capsys, "converge", "--construction", "d", "--phi", "1.0",
        "--theta", "0.9", "--n", "4,16,64",
    )
    assert code == 0
    dists = [float(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert all(b <= a for a, b in zip(dists[1:], dists[2:]))


def test_converge_unknown_construction(capsys):
    with pytest.raises(SystemExit) as exc_info:
        run_cli(capsys, "converge", "--construction", "zap", "--phi", "1", "--n", "1")
    assert exc_info.value.code == 2


def test_converge_missing_flag(capsys):
    code, _, err = run_cli(capsys, "converge", "--construction", "rz", "--phi", "1", "--n", "1,2")
    assert code == 2
    assert "--beta" in err


def test_compile_d_reports(capsys):
    code, out, _ = run_cli(
        capsys, "compile-d", "--phi", "1.0",
        "--alpha", repr(TAU / 1.3247179572447460260),
        "--theta", repr(TAU / 1.3247179572447460260**2),
        "--target-theta", "0.9", "--stage-eps", "0.3",
    )
    assert code == 0
    report = json.loads(out)
    assert report["total_a_count"] >= 5
    assert report["total_a_count"] == sum(s["a_count"] for s in report["per_stage"])
    assert [s["name"] for s in report["per_stage"]] == ["rz_minus", "v_core", "rz_plus"]
    assert report["final_distance"] >= 0.0


def test_compile_d_degenerate_gate(capsys):
    code, _, err = run_cli(
        capsys, "compile-d", "--phi", "1.0", "--alpha", "0", "--theta", "0",
        "--target-theta", "0.9", "--stage-eps", "0.3", "--n-max", "5000",
    )
    assert code == 1
    assert "unreachable" in err and "alpha1" in err
