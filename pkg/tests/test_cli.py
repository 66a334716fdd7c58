import json
import math
import subprocess
import sys

import pytest

from deltashock.cli import main
from deltashock.riemann import solve_two_shock
from deltashock.serialize import SWEEP_HEADER, read_csv
from deltashock.states import RiemannData

SYM = ["--ul", "1", "--rhol", "1", "--ur", "-1", "--rhor", "1"]
VAC = ["--ul", "-1", "--rhol", "1", "--ur", "1", "--rhor", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_two_shock_has_two_transitions(capsys):
    code, out, _ = run(capsys, "sample", *SYM, "--eps", "0.01", "--t", "1", "--xmin", "-1", "--xmax", "1",
                       "--n", "401")
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["x", "t", "u", "rho", "region_tag"]
    rho = [float(r["rho"]) for r in rows]
    jumps = sum(1 for a, b in zip(rho[:-1], rho[1:]) if abs(b - a) > 0.5)
    assert jumps == 2
    assert max(rho) == pytest.approx(solve_two_shock(RiemannData.from_values(1, 1, -1, 1), 0.01)[0].rho_star,
                                     rel=1e-15)


def test_sample_vacuum_zeros(capsys):
    code, out, _ = run(capsys, "sample", *VAC, "--eps", "1e-4", "--xmin", "-0.5", "--xmax", "0.5", "--n", "11")
    assert code == 0
    rows = read_csv(out)
    assert all(float(r["rho"]) == 0.0 and r["region_tag"] == "vacuum" for r in rows)


def test_sweep_header_and_order(capsys):
    code, out, _ = run(capsys, "sweep", *SYM, "--eps", "1e-2", "--eps", "1e-4", "--eps", "1e-6")
    assert code == 0
    assert out.splitlines()[0] == ",".join(SWEEP_HEADER)
    assert out.splitlines()[0] == "eps,u_star,log_rho_star,eps_p_rho_star,s1,s2,d_coeff,err_u,err_l,err_w"
    rows = read_csv(out)
    assert [float(r["eps"]) for r in rows] == [1e-2, 1e-4, 1e-6]
    errs = [float(r["err_l"]) for r in rows]
    assert errs[0] > errs[1] > errs[2]


def test_json_round_trip_is_exact(capsys):
    code, out, _ = run(capsys, "solve", *SYM, "--eps", "0.01", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    mid, _ = solve_two_shock(RiemannData.from_values(1, 1, -1, 1), 0.01)
    assert doc["meta"]["rho_star"] == mid.rho_star
    assert doc["meta"]["u_star"] == mid.u_star
    kinds = [r["kind"] for r in doc["rows"]]
    assert kinds.count("shock") == 2


def test_csv_round_trip_is_exact(capsys, tmp_path):
    out = tmp_path / "p.csv"
    assert main(["sample", *SYM, "--eps", "0.01", "--n", "5", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert float(rows[2]["rho"]) == solve_two_shock(RiemannData.from_values(1, 1, -1, 1), 0.01)[0].rho_star


def test_limit_delta_sidecar_and_stdout_block(capsys, tmp_path):
    out = tmp_path / "lim.csv"
    assert main(["limit", *SYM, "--out", str(out)]) == 0
    side = tmp_path / "lim.delta.csv"
    d = read_csv(side)
    assert float(d[0]["w0"]) == 2.0 and float(d[0]["speed"]) == 0.0
    code, text, _ = run(capsys, "limit", *SYM)
    assert code == 0 and "\n\nspeed,w0,carried_u,eps_correction\n" in text


def test_alt_delta(capsys):
    code, out, _ = run(capsys, "alt", "--ul", "1", "--rhol", "2", "--ur", "-1", "--rhor", "1", "--eps", "0.1",
                       "--n", "3")
    assert code == 0
    block = out.split("\n\n")[1]
    assert math.isclose(float(read_csv(block)[0]["w0"]), 2.9, rel_tol=1e-15)


def test_entropy_and_oracle_commands(capsys):
    code, out, _ = run(capsys, "entropy", *SYM, "--eps", "1e-2", "--eps", "1e-6")
    assert code == 0 and len(read_csv(out)) == 2
    code, out, _ = run(capsys, "oracle", *SYM, "--eps", "0.05", "--t", "0.4", "--xmin", "-2", "--xmax", "2",
                       "--n", "200", "--format", "json")
    assert code == 0
    meta = json.loads(out)["meta"]
    assert meta["rel_u"] < 0.2 and meta["mass_defect"] < 1e-12


@pytest.mark.parametrize("argv", [
    ["solve", "--ul", "1", "--rhol", "0", "--ur", "-1", "--rhor", "1", "--eps", "0.1"],
    ["sweep", *SYM, "--eps", "1e-4", "--eps", "1e-2"],
    ["sample", *SYM],
    ["sample", *SYM, "--eps", "-1"],
    ["sweep", *VAC, "--eps", "0.1"],
    ["oracle", *SYM, "--eps", "0.1", "--cfl", "1.5"],
    ["bogus", *SYM],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_domain_error_exit_2(capsys):
    # t_end long enough for waves to hit the boundary
    code, _, err = run(capsys, "oracle", *SYM, "--eps", "0.05", "--t", "5", "--xmin", "-2", "--xmax", "2",
                       "--n", "100")
    assert code == 2 and "boundary" in err


def test_numeric_failure_exit_4(capsys):
    code, _, err = run(capsys, "solve", "--ul", "1", "--rhol", "0.1", "--ur", "0", "--rhor", "5", "--eps", "10")
    assert code == 4 and "EpsilonTooLarge" in err
    code, _, err = run(capsys, "sample", "--ul", "-0.1", "--rhol", "1", "--ur", "0.1", "--rhor", "1",
                       "--eps", "0.5")
    assert code == 4 and "RarefactionOverlap" in err


def test_io_error_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "sample", *SYM, "--eps", "0.1", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3 and "I/O" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "deltashock", "solve", *SYM, "--eps", "0.01"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("kind")
