"""Tests for the penny-audit command line."""

import json
from fractions import Fraction

import pytest

from penny_audit.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, main
from penny_audit.generators import gen_hex_lattice, gen_perturbed, gen_random
from penny_audit.io import read_point_set, write_json
from penny_audit.version import __version__


@pytest.fixture
def run(tmp_path):
    """Run the CLI with ``-o`` pointing into tmp_path; returns (status, parsed output)."""

    def invoke(*argv, output="out.json"):
        target = tmp_path / output
        status = main([*argv, "-o", str(target)])
        if not target.exists():
            return status, None
        text = target.read_text(encoding="utf-8")
        return status, json.loads(text) if target.suffix == ".json" else text

    return invoke


@pytest.fixture
def hex2_file(run, tmp_path):
    status, _ = run("gen", "hex", "--k", "2", output="hex2.json")
    assert status == EXIT_OK
    return str(tmp_path / "hex2.json")


class TestGen:
    def test_hex(self, run):
        status, doc = run("gen", "hex", "--k", "1")
        assert status == EXIT_OK
        assert doc["mode"] == "exact"
        assert len(doc["points"]) == 7
        assert doc["spec"]["kind"] == "hex_lattice"
        assert doc["spec"]["params"] == {"k": 1}

    def test_perturbed_defaults(self, run):
        status, doc = run("gen", "perturbed", "--k", "1")
        assert status == EXIT_OK
        assert doc["spec"]["params"] == {"k": 1, "magnitude": "1/1000", "seed": 0}

    def test_fixture_is_declared(self, run):
        status, doc = run("gen", "fixture", "--name", "apricot")
        assert status == EXIT_OK
        assert doc["mode"] == "declared"
        assert len(doc["edges"]) == 25

    def test_densify_summary(self, run, tmp_path):
        summary = tmp_path / "summary.json"
        status, doc = run(
            "gen", "densify", "--n", "8", "--iterations", "50", "--summary", str(summary)
        )
        assert status == EXIT_OK
        assert len(doc["points"]) == 8
        assert json.loads(summary.read_text(encoding="utf-8"))["n"] == 8

    @pytest.mark.parametrize(
        "argv, message",
        [
            (("gen", "hex"), "k: This field is required"),
            (("gen", "random", "--n", "1"), "greater than or equal to 2"),
            (("gen", "perturbed", "--k", "1", "--magnitude", "1/50"), "strictly less than 1/100"),
            (("gen", "fixture", "--name", "nope"), "unknown fixture"),
        ],
    )
    def test_bad_parameters(self, run, capsys, argv, message):
        status, doc = run(*argv)
        assert status == EXIT_USAGE
        assert doc is None
        assert message in capsys.readouterr().err


class TestExactRoundTrip:
    @pytest.mark.parametrize(
        "argv, instance",
        [
            (("hex", "--k", "2"), lambda: gen_hex_lattice(2)),
            (
                ("perturbed", "--k", "2", "--seed", "5"),
                lambda: gen_perturbed(2, Fraction(1, 1000), 5),
            ),
            (
                ("perturbed", "--k", "1", "--magnitude", "1/500", "--seed", "2"),
                lambda: gen_perturbed(1, Fraction(1, 500), 2),
            ),
            (("random", "--n", "30", "--seed", "4"), lambda: gen_random(30, 4)),
        ],
    )
    def test_file_matches_memory(self, run, tmp_path, argv, instance):
        status, _ = run("gen", *argv, output="instance.json")
        assert status == EXIT_OK
        expected = instance()
        point_set = read_point_set(tmp_path / "instance.json")
        assert point_set.mode == "exact"
        assert point_set.points == expected.points
        assert point_set.spec == expected.spec
        built, reference = point_set.graph(), expected.graph()
        assert built.edges == reference.edges
        assert built.d_min_sq == reference.d_min_sq

    def test_build_command_matches_memory(self, run, tmp_path):
        run("gen", "perturbed", "--k", "2", "--seed", "5", output="instance.json")
        status, doc = run("build", str(tmp_path / "instance.json"), output="graph.json")
        assert status == EXIT_OK
        reference = gen_perturbed(2, Fraction(1, 1000), 5).graph()
        assert sorted(map(tuple, doc["edges"])) == sorted(reference.edges)


class TestBuildAndAudit:
    def test_build(self, run, tmp_path, triangle_document):
        path = tmp_path / "tri.json"
        write_json(path, triangle_document)
        status, summary = run("build", str(path))
        assert status == EXIT_OK
        assert summary["e"] == 3
        assert summary["edges"] == [[0, 1], [0, 2], [1, 2]]
        assert summary["collinear_triples"] == []

    def test_build_grid_method(self, run, hex2_file):
        status, summary = run("build", hex2_file, "--method", "grid")
        assert status == EXIT_OK
        assert summary["e"] == 42
        assert summary["collinear_triples"]

    def test_audit_of_lattice_reports_violations(self, run, hex2_file):
        status, doc = run("audit", hex2_file)
        assert status == EXIT_VIOLATIONS
        assert doc["audit"]["hypotheses"] == "unmet: general position fails"

    def test_audit_of_triangle_passes(self, run, tmp_path, triangle_document):
        path = tmp_path / "tri.json"
        write_json(path, triangle_document)
        status, doc = run("audit", str(path))
        assert status == EXIT_OK
        assert doc["audit"]["passed"] is True

    def test_missing_input(self, run, tmp_path, capsys):
        status, _ = run("audit", str(tmp_path / "absent.json"))
        assert status == EXIT_USAGE
        assert "path: cannot read" in capsys.readouterr().err


class TestDischarge:
    def test_lattice_is_not_applicable(self, run, hex2_file):
        status, doc = run("discharge", hex2_file)
        assert status == EXIT_OK
        assert doc["bound"]["verdict"] == "not applicable: general position fails"
        assert "ledger" not in doc

    def test_perturbed_lattice_passes(self, run, tmp_path):
        run("gen", "perturbed", "--k", "2", "--seed", "3", output="p.json")
        status, doc = run("discharge", str(tmp_path / "p.json"), "--variant", "weak")
        assert status == EXIT_OK
        assert doc["bound"]["verdict"] == "pass"
        assert doc["ledger"]["variant"] == "weak"

    def test_q_out_of_range(self, run, hex2_file, capsys):
        status, _ = run("discharge", hex2_file, "--q", "2")
        assert status == EXIT_USAGE
        assert "q:" in capsys.readouterr().err


class TestCertify:
    def test_kifli(self, run):
        status, doc = run("certify", "kifli", "--grid", "8")
        assert status == EXIT_OK
        assert doc["verdict"] == "pass"

    @pytest.mark.parametrize(
        "argv", [("--grid", "4"), ("--eps", "1/10"), ("--delta", "1/10")]
    )
    def test_kifli_rejects_parameters(self, run, argv):
        status, _ = run("certify", "kifli", *argv)
        assert status == EXIT_USAGE

    def test_clover_eps_too_large(self, run):
        status, _ = run("certify", "clover", "--eps", "1")
        assert status == EXIT_USAGE

    def test_clover_failing_margin(self, run):
        status, doc = run("certify", "clover", "--delta", "1")
        assert status == EXIT_VIOLATIONS
        assert doc["verdict"] == "fail"
        assert doc["failed_step"] == "ii"


class TestPlot:
    def test_csv(self, run):
        status, text = run("plot", "clover-angle", "--samples", "5", output="angle.csv")
        assert status == EXIT_OK
        lines = text.splitlines()
        assert lines[0] == "x,angle"
        assert len(lines) == 6


class TestParser:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == EXIT_USAGE
        assert "usage:" in capsys.readouterr().err

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out
