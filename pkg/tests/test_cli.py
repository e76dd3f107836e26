"""Command-line interface: subcommands, files, and exit codes."""

import json
import math

from plurikp.cells import CellKind, OrientedCell
from plurikp.cli import main
from plurikp.dkp import (
    Branch,
    ambo_ivp_points,
    cube_ivp_points,
    golden_cube_field,
    golden_field,
    read_field_file,
    write_field_file,
)

PI2_4 = math.pi**2 / 4.0


def write_golden_seven(path, branch=Branch.DKP):
    cell = OrientedCell(CellKind.BLACK_AMBO4, (0,) * 5, (0, 1, 2, 3, 4))
    required, _ = ambo_ivp_points(cell)
    golden = golden_field(cell, branch)
    write_field_file(str(path), {p: golden[p] for p in required}, "qan", 4)


def test_verify_small_run_writes_report(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = main([
        "verify", "--lattice", "qan", "--dim", "4", "--trials", "3",
        "--seed", "7", "--out", str(report),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "summary:" in out
    payload = json.loads(report.read_text())
    assert payload["format"] == "plurikp-report/1"
    assert payload["summary"]["failed"] == 0
    assert payload["config"]["seed"] == 7
    assert all(r["passed"] for r in payload["records"])


def test_verify_cubic_exit_zero(tmp_path):
    assert main(["verify", "--lattice", "cubic", "--trials", "2", "--seed", "1"]) == 0


def test_verify_bad_dim_is_config_error(capsys):
    assert main(["verify", "--dim", "2"]) == 2


def test_verify_zero_tolerance_fails_with_exit_one(tmp_path):
    code = main([
        "verify", "--trials", "2", "--seed", "1", "--tol.golden_closure=0",
    ])
    assert code == 1


def test_verify_unknown_tolerance_is_config_error():
    assert main(["verify", "--trials", "2", "--tol.bogus=1"]) == 2


def test_solve_golden_black(tmp_path, capsys):
    source = tmp_path / "seven.json"
    target = tmp_path / "full.json"
    write_golden_seven(source)
    code = main(["solve", "ambo-black", str(source), str(target)])
    assert code == 0
    out = capsys.readouterr().out
    assert "branch: dkp" in out
    field, lattice, dim = read_field_file(str(target))
    assert (lattice, dim) == ("qan", 4)
    assert len(field) == 10


def test_solve_round_trip_identical(tmp_path):
    source = tmp_path / "seven.json"
    target = tmp_path / "full.json"
    second = tmp_path / "again.json"
    write_golden_seven(source)
    main(["solve", "ambo-black", str(source), str(target)])
    field, lattice, dim = read_field_file(str(target))
    write_field_file(str(second), field, lattice, dim)
    assert read_field_file(str(second))[0] == field


def test_solve_inverse_branch(tmp_path, capsys):
    source = tmp_path / "seven.json"
    target = tmp_path / "full.json"
    write_golden_seven(source, Branch.DKP_MINUS)
    code = main([
        "solve", "ambo-black", str(source), str(target), "--branch", "dkp-minus",
    ])
    assert code == 0
    assert "branch: dkp-minus" in capsys.readouterr().out


def test_solve_cube(tmp_path, capsys):
    cell = OrientedCell(CellKind.CUBE4, (0,) * 4, (0, 1, 2, 3))
    required, _ = cube_ivp_points(cell)
    golden = golden_cube_field(cell)
    source = tmp_path / "nine.json"
    write_field_file(str(source), {p: golden[p] for p in required}, "cubic", 4)
    code = main(["solve", "cube4", str(source), str(tmp_path / "full.json")])
    assert code == 0
    assert "branch: dkp" in capsys.readouterr().out


def test_solve_zero_value_is_singular_exit(tmp_path):
    source = tmp_path / "seven.json"
    write_golden_seven(source)
    payload = json.loads(source.read_text())
    key = sorted(payload["values"])[0]
    payload["values"][key] = 0.0
    source.write_text(json.dumps(payload))
    assert main(["solve", "ambo-black", str(source), str(tmp_path / "o.json")]) == 3


def test_solve_missing_file_is_io_exit(tmp_path):
    assert main(["solve", "ambo-black", str(tmp_path / "no.json"), "x.json"]) == 4


def test_solve_wrong_lattice_is_config_exit(tmp_path):
    cell = OrientedCell(CellKind.CUBE4, (0,) * 4, (0, 1, 2, 3))
    required, _ = cube_ivp_points(cell)
    golden = golden_cube_field(cell)
    source = tmp_path / "nine.json"
    write_field_file(str(source), {p: golden[p] for p in required}, "cubic", 4)
    assert main(["solve", "ambo-black", str(source), "x.json"]) == 2


def test_decompose_standard_star(tmp_path, capsys):
    out = tmp_path / "corners.txt"
    code = main(["decompose", "--standard", "qa3", "--dim", "3", "--out", str(out)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "residual chain: empty" in printed
    assert out.read_text().count("@corner") >= 14


def test_decompose_cubic_star(capsys):
    assert main(["decompose", "--standard", "z3", "--dim", "3"]) == 0
    assert "residual chain: empty" in capsys.readouterr().out


def test_decompose_from_file(tmp_path, capsys):
    from plurikp.cells import format_chain, qan_point_flower

    chain_file = tmp_path / "flower.chain"
    star = qan_point_flower((0, 0, 0, 0), (0, 1, 2, 3))
    chain_file.write_text(format_chain(star) + "\n")
    code = main([
        "decompose", str(chain_file), "--vertex", "(0,0,0,0)",
    ])
    assert code == 0
    assert "residual chain: empty" in capsys.readouterr().out


def test_decompose_malformed_file(tmp_path):
    chain_file = tmp_path / "bad.chain"
    chain_file.write_text("1 nonsense\n")
    assert main(["decompose", str(chain_file), "--vertex", "(0,0,0,0)"]) == 2


def test_decompose_needs_vertex_with_file(tmp_path):
    chain_file = tmp_path / "flower.chain"
    chain_file.write_text("")
    assert main(["decompose", str(chain_file)]) == 2


def test_dilog_test_prints_table(capsys):
    assert main(["dilog-test"]) == 0
    out = capsys.readouterr().out
    assert "Li2(a^2)" in out
    assert "max deviation" in out


def test_usage_error_exit_code():
    assert main(["bogus-command"]) == 2
