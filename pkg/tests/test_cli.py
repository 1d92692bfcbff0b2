import json

import numpy as np
import pytest

from coorbit2d import (
    GridSignal,
    GroupSpec,
    diagonal,
    freq_bump,
    parse_report,
    rotation,
    shearlet,
    similitude,
    write_group_spec,
    write_signal,
)
from coorbit2d.cli import main
from conftest import random_invertible


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, parse_report(out) if out.strip().startswith("{") else out


@pytest.fixture
def diag_path(tmp_path):
    p = tmp_path / "diag.json"
    write_group_spec(p, GroupSpec(diagonal()))
    return str(p)


@pytest.fixture
def bump_signal(tmp_path):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = freq_bump(64, 16.0, center=(0.9, 0.9), sigma=0.12)
    p = tmp_path / "bump.sig"
    write_signal(p, f.signal)
    return str(p)


class TestClassify:
    def test_identity_diagonal(self, capsys, diag_path):
        code, report = run_cli(capsys, "classify", diag_path)
        assert code == 0
        values = report["values"]
        assert values["canonical_form"] == {"kind": "diagonal", "phi": 0.0, "s": 0.0}
        assert values["component_count"] == 4
        assert values["complement"]["angles_deg"] == [0.0, 90.0]
        assert values["representative_conjugator"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_report_written_to_file(self, tmp_path, capsys, diag_path):
        out = tmp_path / "r.json"
        code, _ = run_cli(capsys, "classify", diag_path, "--out", str(out))
        assert code == 0
        assert json.loads(out.read_text())["command"] == "classify"

    def test_golden_stability_modulo_timing(self, capsys, diag_path):
        _, r1 = run_cli(capsys, "classify", diag_path)
        _, r2 = run_cli(capsys, "classify", diag_path)
        r1.pop("timing_seconds")
        r2.pop("timing_seconds")
        assert r1 == r2


class TestEquiv:
    def test_similitude_conjugates_exit_zero(self, tmp_path, capsys, rng):
        p1, p2 = tmp_path / "s1.json", tmp_path / "s2.json"
        write_group_spec(p1, GroupSpec(similitude(), random_invertible(rng)))
        write_group_spec(p2, GroupSpec(similitude(), random_invertible(rng)))
        code, report = run_cli(capsys, "equiv", str(p1), str(p2))
        assert code == 0
        assert report["values"]["equivalent"] is True

    def test_negative_verdict_exit_three(self, tmp_path, capsys, diag_path):
        p2 = tmp_path / "rot.json"
        write_group_spec(p2, GroupSpec(diagonal(), rotation(0.2)))
        code, report = run_cli(capsys, "equiv", diag_path, str(p2))
        assert code == 3
        assert report["values"]["equivalent"] is False
        assert len(report["certificates"]["complements"]) == 2


class TestSymmetry:
    def test_swap_triple_all_yes(self, capsys, diag_path):
        code, report = run_cli(capsys, "symmetry", diag_path, "--matrix", "0,1,1,0")
        assert code == 0
        assert report["values"] == {
            "normalizer": True, "coorbit_symmetry": True, "orbit_symmetry": True,
        }

    def test_rotation_triple_all_no(self, capsys, diag_path):
        c, s = np.cos(0.2), np.sin(0.2)
        code, report = run_cli(
            capsys, "symmetry", diag_path, "--matrix", f"{c},{s},{-s},{c}"
        )
        assert code == 0
        assert not any(report["values"].values())

    def test_bad_matrix_flag(self, capsys, diag_path):
        code, _ = run_cli(capsys, "symmetry", diag_path, "--matrix", "1,2,3")
        assert code == 1


class TestExitCodes:
    def test_usage_error(self, capsys):
        code = main(["classify"])  # missing argument
        assert code == 1

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 1

    def test_parse_error(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{")
        assert main(["classify", str(p)]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["classify", str(tmp_path / "none.json")]) == 2

    def test_numeric_failure_exit_four(self, capsys, tmp_path, diag_path,
                                       bump_signal):
        code, _ = run_cli(
            capsys, "invert", diag_path, bump_signal,
            "--n-scale", "6", "--max-error", "1e-9",
        )
        assert code == 4


class TestPipeline:
    def test_gen_analyze_norm_invert(self, tmp_path, capsys):
        gpath = tmp_path / "sim.json"
        write_group_spec(gpath, GroupSpec(similitude()))
        spath = tmp_path / "f.sig"
        code, gen = run_cli(
            capsys, "gen-signal", "freq_bump", str(spath),
            "--N", "64", "--center", "1.0,0.4", "--sigma", "0.12",
        )
        assert code == 0 and gen["values"]["l2_norm"] > 0

        code, rep = run_cli(
            capsys, "analyze", str(gpath), str(spath),
            "--n-scale", "12", "--n-angle", "12", "--energies",
        )
        assert code == 0
        assert rep["values"]["planes"] == 144
        assert len(rep["values"]["plane_energies"]) == 144

        code, rep = run_cli(
            capsys, "norm", str(gpath), str(spath),
            "--p", "2", "--n-scale", "12", "--n-angle", "12",
        )
        assert code == 0 and rep["values"]["coorbit_norm"] > 0

        rec_path = tmp_path / "rec.sig"
        code, rep = run_cli(
            capsys, "invert", str(gpath), str(spath),
            "--n-scale", "16", "--n-angle", "16",
            "--out-signal", str(rec_path), "--max-error", "0.05",
        )
        assert code == 0
        assert rep["values"]["relative_l2_error"] <= 0.05
        assert rec_path.exists()

    def test_calderon_command(self, capsys, tmp_path):
        gpath = tmp_path / "sim.json"
        write_group_spec(gpath, GroupSpec(similitude()))
        code, rep = run_cli(
            capsys, "calderon", str(gpath), "--n-scale", "32", "--n-angle", "16",
            "--max-deviation", "0.01",
        )
        assert code == 0
        assert rep["values"]["mean"] > 0
        assert len(rep["values"]["values"]) == 16

    def test_calderon_deviation_gate(self, capsys, tmp_path):
        gpath = tmp_path / "sim.json"
        write_group_spec(gpath, GroupSpec(similitude()))
        code, _ = run_cli(
            capsys, "calderon", str(gpath),
            "--lam-min", "-0.3", "--lam-max", "0.3",
            "--n-scale", "8", "--n-angle", "8", "--max-deviation", "0.5",
        )
        assert code == 4

    def test_covariance_command(self, capsys, tmp_path):
        gpath = tmp_path / "shr.json"
        write_group_spec(gpath, GroupSpec(shearlet(0.7)))
        code, rep = run_cli(
            capsys, "covariance", str(gpath), "--N", "64", "--L", "16",
            "--max-residual", "1e-8",
        )
        assert code == 0
        res = rep["values"]["residuals"]
        assert res["identity"] == 0.0
        assert res["grid_translation"] <= 1e-10
        assert res["sampled_dilation"] <= 1e-8
        assert "scaling_dilation" in res

    def test_compare_command(self, capsys, tmp_path):
        g1, g2 = tmp_path / "a.json", tmp_path / "b.json"
        write_group_spec(g1, GroupSpec(shearlet(1.0)))
        write_group_spec(g2, GroupSpec(shearlet(1.0), rotation(np.pi / 4)))
        code, rep = run_cli(
            capsys, "compare", str(g1), str(g2),
            "--N", "32", "--n-signals", "2", "--p", "1",
        )
        assert code == 0
        assert len(rep["values"]["rows"]) == 2
