import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema

REPO = Path(__file__).resolve().parent.parent
SCHEMA = json.loads((REPO / "schemas" / "output.v1.json").read_text())


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("POLARGLUE_CONFIG", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "polarglue.cli", *args],
        capture_output=True, text=True, env=env,
    )


def validate(record):
    jsonschema.validate(record, SCHEMA)


def test_check_exists():
    res = run_cli("check", "--q", "2", "--a1", "1", "--a2", "1", "--b", "0")
    assert res.returncode == 0
    rec = json.loads(res.stdout)
    validate(rec)
    assert rec["verdict"]["kind"] == "irreducible_pp_exists"
    assert rec["verdict"]["witness_ell"] == 3
    assert "or its quadratic twist" in rec["verdict"]["jacobian_text"]
    assert rec["provenance"]["generated_at"] is not None


def test_check_no_pp():
    res = run_cli("check", "--q", "2", "--a1", "1", "--a2", "1", "--b", "1")
    assert res.returncode == 1
    rec = json.loads(res.stdout)
    validate(rec)
    assert rec["verdict"]["reason"] == "hb_unit"


def test_check_inconclusive():
    res = run_cli("check", "--q", "7", "--a1", "-2", "--a2", "2", "--b", "5")
    assert res.returncode == 2
    rec = json.loads(res.stdout)
    validate(rec)
    assert rec["verdict"]["failures"][0]["ell"] == 3


def test_check_validation_error():
    res = run_cli("check", "--q", "2", "--a1", "9", "--a2", "0", "--b", "0")
    assert res.returncode == 65
    assert "OutOfWeilBounds" in res.stderr


def test_check_rejects_reducible_elliptic():
    res = run_cli("check", "--q", "4", "--a1", "1", "--a2", "1", "--b", "4")
    assert res.returncode == 65
    assert "ReducibleEllipticInput" in res.stderr


def test_check_pretty():
    res = run_cli("check", "--q", "2", "--a1", "1", "--a2", "1", "--b", "0", "--pretty")
    assert res.returncode == 0
    assert "witness ell = 3" in res.stdout


def test_usage_error_exit_code():
    assert run_cli("nosuchcommand").returncode == 64
    assert run_cli("check", "--q", "2").returncode == 64


def test_scan_csv_shape_and_determinism():
    first = run_cli("scan", "--q", "2", "--format", "csv", "--jobs", "1")
    second = run_cli("scan", "--q", "2", "--format", "csv", "--jobs", "2")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    lines = first.stdout.splitlines()
    assert lines[0] == "a1,a2,b,h_b,verdict,witness_ell,branch,flags"
    import polarglue as pg
    field = pg.field_param(2)
    expected = len(pg.enumerate_surfaces(field, geometrically_simple=True)) * len(
        pg.enumerate_elliptics(field, irreducible=True))
    assert len(lines) == 1 + expected


def test_scan_json_validates_and_matches_csv():
    js = run_cli("scan", "--q", "2", "--format", "json")
    csv_out = run_cli("scan", "--q", "2", "--format", "csv")
    records = json.loads(js.stdout)
    for rec in records:
        validate(rec)
        assert rec["provenance"]["generated_at"] is None
    rows = csv_out.stdout.splitlines()[1:]
    assert len(rows) == len(records)
    for line, rec in zip(rows, records):
        a1, a2, b, h_b, verdict, ell, branch, _ = line.split(",")
        assert [int(a1), int(a2), int(b)] == [
            rec["query"]["a1"], rec["query"]["a2"], rec["query"]["b"]]
        assert int(h_b) == rec["h_b"]
        assert verdict == rec["verdict"]["kind"]


def test_scan_to_file(tmp_path):
    out = tmp_path / "scan.json"
    res = run_cli("scan", "--q", "2", "--out", str(out))
    assert res.returncode == 0
    records = json.loads(out.read_text())
    assert records and all(r["schema_version"] == "1" for r in records)


def test_scan_io_error():
    res = run_cli("scan", "--q", "2", "--out", "/nonexistent-dir/scan.json")
    assert res.returncode == 66


def test_local_report():
    res = run_cli("local", "--q", "11", "--a1", "-2", "--a2", "5", "--ell", "3")
    assert res.returncode == 0
    rec = json.loads(res.stdout)
    validate(rec)
    report = rec["local_report"]
    assert report["exceptional"] is True
    assert report["ideals"][0]["maximal_at"] is False
    res2 = run_cli("local", "--q", "2", "--a1", "1", "--a2", "1", "--ell", "3")
    rec2 = json.loads(res2.stdout)
    validate(rec2)
    assert len(rec2["local_report"]["ideals"]) == 3


def test_local_rejects_characteristic():
    res = run_cli("local", "--q", "2", "--a1", "1", "--a2", "1", "--ell", "2")
    assert res.returncode == 65


def test_obstruct_hl():
    res = run_cli("obstruct", "--q", "4", "--a1", "1", "--a2", "1", "--s", "2", "--n", "1")
    assert res.returncode == 0
    rec = json.loads(res.stdout)
    validate(rec)
    assert rec["obstruction"]["status"] == "obstructed"
    assert "irreducible principal polarization" in rec["obstruction"]["statement"]
    res2 = run_cli("obstruct", "--q", "4", "--a1", "1", "--a2", "-3", "--s", "2", "--n", "1")
    assert res2.returncode == 2


def test_obstruct_hl2():
    res = run_cli("obstruct", "--q", "2", "--a1", "1", "--a2", "1", "--ss-surface")
    assert res.returncode == 0
    rec = json.loads(res.stdout)
    validate(rec)
    assert rec["obstruction"]["mode"] == "hl2"
    strict = run_cli("obstruct", "--q", "2", "--a1", "1", "--a2", "1",
                     "--ss-surface", "--hl2-strict")
    assert strict.returncode == 2


def test_obstruct_mode_mismatch():
    # hl2 on a square field
    res = run_cli("obstruct", "--q", "4", "--a1", "1", "--a2", "1", "--ss-surface")
    assert res.returncode == 65
    # hl on a non-square field
    res2 = run_cli("obstruct", "--q", "2", "--a1", "1", "--a2", "1", "--s", "1", "--n", "1")
    assert res2.returncode == 65


def test_config_file(tmp_path):
    cfg = tmp_path / "polarglue.conf"
    cfg.write_text("format=csv\njobs=1\n")
    res = run_cli("scan", "--q", "2", env_extra={"POLARGLUE_CONFIG": str(cfg)})
    assert res.stdout.startswith("a1,a2,b,")
    # command line overrides the config
    res2 = run_cli("scan", "--q", "2", "--format", "json",
                   env_extra={"POLARGLUE_CONFIG": str(cfg)})
    json.loads(res2.stdout)
