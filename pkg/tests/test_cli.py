"""CLI commands: exit codes, file outputs, config round-trips, determinism."""

import json
import os

import numpy as np
import pytest

from symdom import config as C
from symdom.cli import main
from symdom.demos import DEMO_NAMES, demo_config
from symdom.errors import ConfigError


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def disc_orbit_config(tmp_path):
    cfg = {
        "schema": "symdom.run/1",
        "factor": {"type": "hilbert", "dim": 1},
        "map": {"pipeline": [{"op": "coordwise", "parts": [{"type": "mobius", "b": [0.5, 0.0]}]}]},
        "starts": [[[0.0, 0.0]]],
        "iterations": 50,
        "seed": 0,
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return cfg, str(path)


def test_verify_polydisc_passes(capsys):
    code = run_cli("verify", "--factor", '{"type":"polydisc","d":3}', "--trials", "30", "--seed", "7")
    out = capsys.readouterr().out
    assert code == 0
    assert "identity suites passed" in out
    assert "FAIL" not in out


def test_verify_rect_passes(capsys):
    code = run_cli("verify", "--factor", '{"type":"rect","rows":2,"cols":3}', "--trials", "15", "--seed", "3")
    assert code == 0


def test_verify_malformed_spec(capsys):
    code = run_cli("verify", "--factor", '{"type":"banana"}', "--trials", "5")
    err = capsys.readouterr().err
    assert code == 2
    assert "error" in err


def test_verify_tol_override(capsys):
    # absurdly tight tolerance forces a reported failure and exit 1
    code = run_cli(
        "verify", "--factor", '{"type":"hilbert","dim":2}', "--trials", "5",
        "--tol", "box_norm=1e-30",
    )
    assert code == 1


def test_config_round_trip():
    data = demo_config("bidisc-case-b")
    cfg = C.run_config_from_dict(data)
    again = C.run_config_from_dict(C.run_config_to_dict(cfg))
    assert C.run_config_to_dict(cfg) == C.run_config_to_dict(again)


def test_config_rejects_unknown_keys():
    data = demo_config("disc-hyperbolic")
    data["surprise"] = 1
    with pytest.raises(ConfigError):
        C.run_config_from_dict(data)


def test_config_rejects_bad_schema():
    data = demo_config("disc-hyperbolic")
    data["schema"] = "other/9"
    with pytest.raises(ConfigError):
        C.run_config_from_dict(data)


def test_orbit_command(tmp_path, disc_orbit_config, capsys):
    _cfg, path = disc_orbit_config
    out = tmp_path / "orbit.csv"
    code = run_cli("orbit", "--config", path, "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,re0,im0,norm,kobayashi_step"
    final = lines[-1].split(",")
    assert float(final[3]) >= 1 - 1e-9


def test_orbit_zero_iterations_header_only(tmp_path, disc_orbit_config):
    cfg, _ = disc_orbit_config
    cfg = dict(cfg, iterations=0)
    path = tmp_path / "cfg0.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "orbit0.csv"
    assert run_cli("orbit", "--config", str(path), "--out", str(out)) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1  # header only


def test_orbit_multiple_starts_one_file_each(tmp_path, disc_orbit_config):
    cfg, _ = disc_orbit_config
    cfg = dict(cfg, starts=[[[0.0, 0.0]], [[0.2, 0.1]]])
    path = tmp_path / "cfg2.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "orb.csv"
    assert run_cli("orbit", "--config", str(path), "--out", str(out)) == 0
    assert (tmp_path / "orb_s00.csv").exists()
    assert (tmp_path / "orb_s01.csv").exists()


def test_orbit_rotation_constant_modulus(tmp_path):
    import math

    th = math.pi * (3 - math.sqrt(5))
    cfg = {
        "schema": "symdom.run/1",
        "factor": {"type": "polydisc", "d": 2},
        "map": {"pipeline": [{"op": "coordwise", "parts": [
            {"type": "mobius", "b": [0.5, 0.0]},
            {"type": "affine", "alpha": [math.cos(th), math.sin(th)], "beta": [0.0, 0.0]},
        ]}]},
        "starts": [[[0.0, 0.0], [0.4, 0.0]]],
        "iterations": 40,
        "seed": 0,
    }
    path = tmp_path / "rot.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "rot.csv"
    assert run_cli("orbit", "--config", str(path), "--out", str(out)) == 0
    rows = [l.split(",") for l in out.read_text().strip().splitlines()[1:]]
    mods = [abs(complex(float(r[3]), float(r[4]))) for r in rows]
    assert all(abs(m - 0.4) < 1e-12 for m in mods)


def test_wolff_command(tmp_path, disc_orbit_config, capsys):
    _cfg, path = disc_orbit_config
    out = tmp_path / "report.json"
    code = run_cli("wolff", "--config", path, "--out", str(out))
    assert code == 0
    printed = capsys.readouterr().out
    assert "fixed-point-free" in printed
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "fixed-point-free"
    assert rep["hypothesis"]["status"] == "holds"


def test_wolff_interior_fixed_point_exit_zero(tmp_path, capsys):
    cfg = {
        "schema": "symdom.run/1",
        "factor": {"type": "hilbert", "dim": 1},
        "map": {"pipeline": [{"op": "scale", "lambda": [0.5, 0.0]}]},
        "iterations": 20,
        "seed": 0,
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "r.json"
    code = run_cli("wolff", "--config", path.as_posix(), "--out", out.as_posix())
    assert code == 0
    assert "fixed point found" in capsys.readouterr().out


def test_horoball_command_disc(tmp_path):
    cfg = {
        "schema": "symdom.run/1",
        "factor": {"type": "hilbert", "dim": 1},
        "horofunction": {"frame": [[[1.0, 0.0]]], "sigma": [1.0]},
        "slice": {
            "origin": [[0.0, 0.0]],
            "e1": [[1.0, 0.0]],
            "e2": [[0.0, 1.0]],
            "extent": [-1.0, 1.0, -1.0, 1.0],
            "resolution": 21,
        },
        "s_list": [1.0],
    }
    path = tmp_path / "h.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "grid.csv"
    assert run_cli("horoball", "--config", str(path), "--out", str(out)) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "u,v,in_ball,F,member_s1"
    # membership column matches the horodisc |z - 1/2| < 1/2 within a cell
    cell = 2.0 / 20
    for row in lines[1:]:
        parts = row.split(",")
        u, v, inball = float(parts[0]), float(parts[1]), parts[2]
        if inball == "0":
            continue
        member = parts[4] == "1"
        d = abs(complex(u, v) - 0.5)
        if d < 0.5 - cell:
            assert member
        if d > 0.5 + cell:
            assert not member


def test_horoball_nesting_in_s(tmp_path):
    cfg = {
        "schema": "symdom.run/1",
        "factor": {"type": "hilbert", "dim": 1},
        "horofunction": {"frame": [[[1.0, 0.0]]], "sigma": [1.0]},
        "slice": {
            "origin": [[0.0, 0.0]],
            "e1": [[1.0, 0.0]],
            "e2": [[0.0, 1.0]],
            "extent": [-0.9, 0.9, -0.9, 0.9],
            "resolution": 15,
        },
        "s_list": [0.5, 1.0, 2.0],
    }
    path = tmp_path / "h.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "grid.csv"
    assert run_cli("horoball", "--config", str(path), "--out", str(out)) == 0
    for row in out.read_text().strip().splitlines()[1:]:
        parts = row.split(",")
        if parts[2] == "0":
            continue
        flags = [p == "1" for p in parts[4:]]
        assert flags == sorted(flags)  # membership non-decreasing in s


def test_horoball_missing_sections(tmp_path):
    cfg = {"schema": "symdom.run/1", "factor": {"type": "hilbert", "dim": 1}}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(cfg))
    assert run_cli("horoball", "--config", str(path)) == 2


def test_demo_known_names():
    assert set(DEMO_NAMES) == {
        "disc-hyperbolic", "disc-parabolic-affine",
        "bidisc-case-a", "bidisc-case-b", "bidisc-case-c", "bidisc-rotation",
        "hilbert3", "spin4", "rect22",
    }
    for name in DEMO_NAMES:
        C.run_config_from_dict(demo_config(name))


def test_demo_command_writes_everything(tmp_path, capsys):
    out = tmp_path / "demo"
    code = run_cli("demo", "disc-hyperbolic", "--out", str(out), "--seed", "1")
    assert code == 0
    assert (out / "config.json").exists()
    assert (out / "report.json").exists()
    assert (out / "orbit_s00.csv").exists()
    assert (out / "horoball_grid.csv").exists()
    # no leftover temp files from atomic writes
    assert not [p for p in os.listdir(out) if p.startswith(".symdom-tmp-")]


def test_cli_determinism(tmp_path, disc_orbit_config):
    _cfg, path = disc_orbit_config
    o1, o2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run_cli("wolff", "--config", path, "--out", str(o1)) == 0
    assert run_cli("wolff", "--config", path, "--out", str(o2)) == 0
    assert o1.read_bytes() == o2.read_bytes()


def test_csv_full_precision(tmp_path, disc_orbit_config):
    _cfg, path = disc_orbit_config
    out = tmp_path / "orbit.csv"
    run_cli("orbit", "--config", path, "--out", str(out))
    row1 = out.read_text().splitlines()[1].split(",")
    # 17 significant digits: parsing back reproduces the double exactly
    val = float(row1[4])
    assert f"{val:.17g}" == row1[4]
