import csv
import io
import json

import pytest

from ktconway.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFY, main, parse_range
from ktconway.invariants import jones, kauffman_bracket

from conftest import K11N34_JONES, MISPRINTED_TREFOIL_PD, TREFOIL_PD


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("-5..5") == range(-5, 6)
    assert parse_range("2") == range(2, 3)


def test_invariants_family(capsys):
    code, out, _ = run(capsys, "invariants", "conway:2,-1", "--format", "json")
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["jones"] == K11N34_JONES.render()
    assert rec["v3"] == "1/2"


def test_invariants_text(capsys):
    code, out, _ = run(capsys, "invariants", "torus2:1")
    assert code == EXIT_OK
    assert "jones" in out
    assert "INCONCLUSIVE" in out


def test_invariants_pd_line(capsys):
    code, out, _ = run(capsys, "invariants", TREFOIL_PD, "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["a2"] == 1


def test_invariants_rejects_misprinted_trefoil(capsys):
    code, _, err = run(capsys, "invariants", MISPRINTED_TREFOIL_PD)
    assert code == EXIT_INPUT
    assert "3 components" in err


def test_invariants_parse_error_has_position(capsys):
    code, _, err = run(capsys, "invariants", "PD[X(1,2,3)]")
    assert code == EXIT_INPUT
    assert "line 1, column" in err
    code, _, err = run(capsys, "invariants", "conway:2")
    assert code == EXIT_INPUT


def test_invariants_resource_cap(capsys, monkeypatch):
    monkeypatch.setenv("KNOT_CROSSING_CAP", "8")
    kauffman_bracket.cache_clear()
    jones.cache_clear()
    code, _, err = run(capsys, "invariants", "conway:4,2")
    assert code == EXIT_RESOURCE
    assert "8" in err


def test_scan_conway_grid(capsys):
    code, out, err = run(capsys, "scan", "--family", "conway", "--r", "-5..5", "--n", "-3..3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 77
    for row in rows:
        r, n = int(row["r"]), int(row["n"])
        trivial = r in (0, 1, -1, -2) or n == 0
        if trivial:
            assert row["big_o"] == "inf"
        else:
            assert row["big_o"] == "0"
            assert row["chirally"] == "OBSTRUCTED"
    assert err.startswith("summary: 77 knots")


def test_scan_trivial_rows(capsys):
    code, out, _ = run(capsys, "scan", "--family", "kt", "--r", "0..1", "--n", "-3..3", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)
    assert len(rows) == 14
    assert all(r["big_o"] == "inf" and r["jones"] == "1" for r in rows)


def test_scan_single_point(capsys, tmp_path):
    dest = tmp_path / "one.csv"
    code, out, _ = run(capsys, "scan", "--family", "conway", "--r", "2..2", "--n", "1..1", "--output", str(dest))
    assert code == EXIT_OK
    assert out == ""
    rows = list(csv.DictReader(dest.open()))
    assert len(rows) == 1
    assert rows[0]["v3"] == "-1/2"


def test_scan_grid_cap(capsys):
    code, _, err = run(capsys, "scan", "--family", "kt", "--r", "-5..5", "--n", "-3..3", "--max-grid", "10")
    assert code == EXIT_RESOURCE
    assert "--force" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "lemma-v3", "--r", "-5..5", "--n", "-3..3")
    assert code == EXIT_OK
    assert "PASS lemma-v3: 77/77" in out
    code, out, _ = run(capsys, "verify", "mutation", "--r", "-4..4", "--n", "-2..2")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "verify", "hoste", "--r", "2..4", "--n", "1..2", "-v")
    assert code == EXIT_OK
    assert "PASS hoste conway:2,1" in out


def test_verify_reports_failures(capsys, monkeypatch):
    import ktconway.verify as verify

    monkeypatch.setattr(verify, "v3_closed_form", lambda r, n: 99)
    code, out, _ = run(capsys, "verify", "lemma-v3", "--r", "2..2", "--n", "1..1")
    assert code == EXIT_VERIFY
    assert "FAIL lemma-v3 r=2 n=1" in out
    assert "kt:2,1" in out


def test_verify_parallel(capsys):
    code, out, _ = run(capsys, "verify", "skein-step", "--r", "2..3", "--n", "1..2", "--jobs", "2")
    assert code == EXIT_OK
    assert "PASS skein-step: 8/8" in out


def test_emit_pd_round_trip_through_batch(capsys, tmp_path):
    code, pd_line, _ = run(capsys, "invariants", "conway:2,-1", "--emit-pd")
    assert code == EXIT_OK
    path = tmp_path / "knots.txt"
    path.write_text("# K11n34\n" + pd_line + "\ntrefoil: " + TREFOIL_PD + "\n")
    code, out, _ = run(capsys, "batch", str(path), "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)
    assert [r["v3"] for r in rows] == ["1/2", "1/4"]
    assert rows[0]["name"] == "conway:2,-1"


def test_batch_skips_malformed_lines(capsys, tmp_path):
    path = tmp_path / "mixed.txt"
    path.write_text(f"{TREFOIL_PD}\nPD[X(1,2,3,4\n")
    code, out, err = run(capsys, "batch", str(path))
    assert code == EXIT_OK
    assert len(list(csv.DictReader(io.StringIO(out)))) == 1
    assert "warning" in err and "line 2" in err
    code, _, err = run(capsys, "batch", str(path), "--strict")
    assert code == EXIT_INPUT
    assert "line 2" in err


def test_batch_unreadable_file(capsys, tmp_path):
    code, _, err = run(capsys, "batch", str(tmp_path / "missing.txt"))
    assert code == EXIT_INPUT
    assert "cannot read" in err


def test_bad_arguments_exit_2(capsys):
    assert main(["scan", "--family", "pretzel", "--r", "0..1", "--n", "0..1"]) == EXIT_INPUT
    assert main(["scan", "--family", "kt", "--r", "5..1", "--n", "0..1"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
