from __future__ import annotations

import json
from pathlib import Path

import pytest

from mirrorint.cli import EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_OK, main
from mirrorint.series import series_from_text


def read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def run(argv, capsys=None):
    code = main(argv)
    return code


class TestPadicCommand:
    def test_basic(self, tmp_path):
        out = tmp_path / "o"
        code = run(
            ["padic", "--p", "3", "--n", "10", "--rational", "9/2",
             "--factorial", "25", "--out", str(out)]
        )
        assert code == EXIT_OK
        obj = read_json(out / "padic.json")
        assert obj["digit_sum"] == 2
        assert obj["ord"] == "0"
        assert obj["ord_rational"] == "2"
        assert obj["ord_factorial"] == 10

    def test_rejects_composite_p(self, tmp_path, capsys):
        code = run(["padic", "--p", "4", "--n", "1", "--out", str(tmp_path / "o")])
        assert code == EXIT_ERROR
        err = json.loads(capsys.readouterr().err)
        assert "prime" in err["message"]

    def test_needs_some_input(self, tmp_path):
        assert run(["padic", "--p", "3", "--out", str(tmp_path / "o")]) == EXIT_ERROR


class TestCongruenceSweep:
    def test_csv_output(self, tmp_path):
        out = tmp_path / "sweep"
        code = run(
            ["congruence", "sweep", "--prop", "P4", "--m", "1..4",
             "--n", "1..10", "--primes", "2,3,5", "--out", str(out)]
        )
        assert code == EXIT_OK
        lines = (out / "sweep.csv").read_text().strip().splitlines()
        assert lines[0] == "prop,params,p,margin,holds,branch"
        assert len(lines) == 121
        meta = read_json(out / "sweep.meta.json")
        assert meta["all_hold"] is True and meta["reports"] == 120

    def test_json_output(self, tmp_path):
        out = tmp_path / "sweep"
        code = run(
            ["congruence", "sweep", "--prop", "P1", "--parts", "2",
             "--k", "0..4", "--primes", "2", "--format", "json", "--out", str(out)]
        )
        assert code == EXIT_OK
        obj = read_json(out / "sweep.json")
        assert obj["all_hold"] is True
        assert obj["skipped"] > 0

    def test_unknown_prop(self, tmp_path):
        code = run(
            ["congruence", "sweep", "--prop", "P99", "--m", "1",
             "--n", "1", "--primes", "2", "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_ERROR

    def test_missing_range(self, tmp_path):
        code = run(
            ["congruence", "sweep", "--prop", "P4", "--m", "1..2",
             "--primes", "2", "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_ERROR


class TestConjectureProbe:
    def test_probe_table(self, tmp_path):
        out = tmp_path / "probe"
        code = run(
            ["conjecture", "probe", "--p", "5", "--r", "1", "--a", "1",
             "--m", "2..6", "--out", str(out)]
        )
        assert code == EXIT_OK
        lines = (out / "probe.csv").read_text().strip().splitlines()
        assert len(lines) == 6
        first = lines[1].split(",")
        assert first[:4] == ["5", "1", "1", "2"]
        assert first[5] == "5" and first[6] == "5"

    def test_probe_skips_divisible_a(self, tmp_path):
        out = tmp_path / "probe"
        code = run(
            ["conjecture", "probe", "--p", "3", "--r", "1", "--a", "1..3",
             "--m", "2", "--format", "json", "--out", str(out)]
        )
        assert code == EXIT_OK
        rows = read_json(out / "probe.json")
        assert {row["a"] for row in rows} == {1, 2}


class TestDworkCertify:
    def test_t41(self, tmp_path):
        out = tmp_path / "dw"
        code = run(
            ["dwork", "certify", "--theorem", "T41", "--m", "2",
             "--degree", "12", "--primes", "2,3,5", "--out", str(out)]
        )
        assert code == EXIT_OK
        obj = read_json(out / "dwork.json")
        assert obj["report"]["direct"]["integral"] is True
        assert obj["exploratory"] is False
        assert (out / "exponent.txt").exists()

    def test_t44b_gcd_violation_is_input_error(self, tmp_path):
        code = run(
            ["dwork", "certify", "--theorem", "T44b", "--ks", "2,4",
             "--degree", "6", "--primes", "2", "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_ERROR

    def test_t43_exploratory_never_fails_run(self, tmp_path):
        out = tmp_path / "t43"
        code = run(
            ["dwork", "certify", "--theorem", "T43", "--m", "2", "--n", "1",
             "--degree", "8", "--primes", "2", "--out", str(out)]
        )
        assert code == EXIT_OK
        assert read_json(out / "dwork.json")["exploratory"] is True


class TestGeometryCommands:
    def test_mirror_map(self, tmp_path):
        out = tmp_path / "mm"
        code = run(["mirror-map", "--preset", "local-p2", "--degree", "12", "--out", str(out)])
        assert code == EXIT_OK
        series = series_from_text((out / "series.txt").read_text(), 1, 12)
        assert series.coefficient((1,)) == 6
        assert series.coefficient((2,)) == -27
        cert = read_json(out / "certificate.json")
        assert cert["certificate"]["integral"] is True
        assert cert["degree"] == 12

    def test_mirror_map_geometry_file(self, tmp_path):
        geom = tmp_path / "geom.json"
        geom.write_text(json.dumps({"name": "demo", "vectors": [[-3, 1, 1, 1]]}))
        out = tmp_path / "mm"
        code = run(["mirror-map", "--geometry", str(geom), "--degree", "4", "--out", str(out)])
        assert code == EXIT_OK

    def test_malformed_geometry_file(self, tmp_path):
        geom = tmp_path / "geom.json"
        geom.write_text("{not json")
        code = run(["mirror-map", "--geometry", str(geom), "--degree", "4",
                    "--out", str(tmp_path / "o")])
        assert code == EXIT_ERROR

    def test_open_closed(self, tmp_path):
        out = tmp_path / "oc"
        code = run(
            ["open-closed", "--preset", "local-p2", "--brane", "outer",
             "--index", "0", "--degree", "6", "--out", str(out)]
        )
        assert code == EXIT_OK
        series = series_from_text((out / "series.txt").read_text(), 2, 6)
        assert series.coefficient((0, 1)) == -2
        assert series.coefficient((0, 2)) == 17

    def test_superpotential_and_curve(self, tmp_path):
        out1 = tmp_path / "sp"
        code = run(
            ["superpotential", "--preset", "local-p2", "--brane", "outer",
             "--degree", "6", "--out", str(out1)]
        )
        assert code == EXIT_OK
        assert read_json(out1 / "summary.json")["kind"] == "outer"
        out2 = tmp_path / "curve"
        code = run(
            ["curve", "--preset", "local-p2", "--brane", "inner",
             "--degree", "6", "--sign-convention", "k0", "--out", str(out2)]
        )
        assert code == EXIT_OK
        assert read_json(out2 / "certificate.json")["certificate"]["integral"] is True

    def test_phase_brane_flag(self, tmp_path):
        out = tmp_path / "ph"
        code = run(
            ["curve", "--preset", "local-p2", "--brane", "phase:1",
             "--degree", "4", "--out", str(out)]
        )
        assert code == EXIT_OK

    def test_invert_closed(self, tmp_path):
        out = tmp_path / "inv"
        code = run(["invert", "--preset", "local-p2", "--degree", "8", "--out", str(out)])
        assert code == EXIT_OK
        rep = read_json(out / "report.json")
        assert rep["oracle_agreement"] is True
        assert all(c["integral"] for c in rep["certificates"])
        assert (out / "inverse_0.txt").exists()

    def test_invert_open_closed(self, tmp_path):
        out = tmp_path / "inv"
        code = run(
            ["invert", "--preset", "local-p2", "--brane", "outer",
             "--degree", "6", "--out", str(out)]
        )
        assert code == EXIT_OK
        assert (out / "inverse_1.txt").exists()

    def test_conditions(self, tmp_path):
        out = tmp_path / "cond"
        code = run(["conditions", "--preset", "conifold", "--degree", "10", "--out", str(out)])
        assert code == EXIT_OK
        obj = read_json(out / "conditions.json")
        assert obj["A"]["holds"] is True and obj["B"]["holds"] is True

    def test_conditions_detect_violation(self, tmp_path):
        geom = tmp_path / "geom.json"
        geom.write_text(json.dumps({"name": "bad-b", "vectors": [[-4, 2, 2, 0]]}))
        out = tmp_path / "cond"
        code = run(["conditions", "--geometry", str(geom), "--degree", "3", "--out", str(out)])
        assert code == EXIT_CHECK_FAILED
        obj = read_json(out / "conditions.json")
        assert obj["B"]["holds"] is False
        assert obj["B"]["counterexample"] == [1]

    def test_requires_geometry(self, tmp_path):
        assert run(["mirror-map", "--degree", "4", "--out", str(tmp_path / "o")]) == EXIT_ERROR

    def test_requires_brane_flag(self, tmp_path):
        code = run(["curve", "--preset", "local-p2", "--degree", "4",
                    "--out", str(tmp_path / "o")])
        assert code == EXIT_ERROR


class TestDeterminism:
    COMMANDS = [
        ["padic", "--p", "5", "--n", "50", "--factorial", "20"],
        ["congruence", "sweep", "--prop", "P8", "--m", "1..3", "--k", "2,4",
         "--l", "2,4", "--primes", "2"],
        ["conjecture", "probe", "--p", "3,5", "--r", "1", "--a", "1", "--m", "2..4"],
        ["dwork", "certify", "--theorem", "T44a", "--ks", "1,2", "--degree", "10",
         "--primes", "2,3"],
        ["mirror-map", "--preset", "local-p2", "--degree", "8"],
        ["open-closed", "--preset", "local-p2", "--brane", "outer", "--degree", "6"],
        ["superpotential", "--preset", "local-p2", "--brane", "outer", "--degree", "6"],
        ["curve", "--preset", "local-p2", "--brane", "outer", "--degree", "6"],
        ["invert", "--preset", "local-p2", "--degree", "6"],
        ["conditions", "--preset", "local-p2", "--degree", "8"],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
    def test_byte_identical_reruns(self, argv, tmp_path):
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        code1 = run(argv + ["--out", str(out1)])
        code2 = run(argv + ["--out", str(out2)])
        assert code1 == code2
        files1 = sorted(p.name for p in out1.iterdir())
        files2 = sorted(p.name for p in out2.iterdir())
        assert files1 == files2 and files1
        for name in files1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_stdout_mode(self, capsys):
        code = run(["padic", "--p", "2", "--n", "6"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "# padic.json" in out and '"digit_sum": 2' in out
