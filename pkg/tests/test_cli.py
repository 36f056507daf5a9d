import json

import numpy as np
import pytest

from bosonic_bounds import bounds as bnd
from bosonic_bounds import channels as chn
from bosonic_bounds import cli
from bosonic_bounds import verify as vfy

QU1_TH_099_0_1 = 1.909026343423734981271


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundCommand:
    def test_pure_loss_point(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--channel", "thermal",
                               "--eta", "0.99", "--nb", "0", "--ns", "1",
                               "--bound", "QU1")
        assert code == 0
        rec = json.loads(out)
        assert set(rec) == {"kind", "value_bits", "raw_bits", "arg_opt", "params"}
        assert rec["kind"] == "QU1"
        assert rec["value_bits"] == pytest.approx(QU1_TH_099_0_1, abs=1e-12)

    def test_clamped_point(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--channel", "thermal",
                               "--eta", "0.5", "--nb", "2", "--ns", "5",
                               "--bound", "QU1")
        assert code == 0
        rec = json.loads(out)
        assert rec["value_bits"] == 0.0
        assert rec["raw_bits"] < 0.0

    def test_entanglement_breaking_amplifier_exits_2(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--channel", "amplifier",
                                 "--g", "3", "--nb", "1", "--ns", "1",
                                 "--bound", "QU1")
        assert code == 2
        assert out == ""
        assert "entanglement-breaking" in err

    def test_infeasible_qu4_names_condition(self, capsys):
        code, _, err = run_cli(capsys, "bound", "--channel", "thermal",
                               "--eta", "0.5", "--nb", "2", "--ns", "1",
                               "--bound", "QU4")
        assert code == 2
        assert "eta <= (1-eta)*NB" in err

    def test_missing_parameter_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "bound", "--channel", "thermal",
                               "--ns", "1", "--bound", "QU1")
        assert code == 1
        assert "eta" in err

    def test_bad_flag_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["bound", "--channel", "thermal", "--eta", "0.9",
                      "--bound", "NOPE"])
        assert exc.value.code == 1

    def test_eps_prime_passthrough(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--channel", "thermal",
                               "--eta", "0.75", "--nb", "0.2", "--ns", "5",
                               "--bound", "QU2", "--eps-prime", "0.6")
        assert code == 0
        rec = json.loads(out)
        assert rec["arg_opt"] == 0.6

    def test_pl_bound(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--channel", "thermal",
                               "--eta", "0.7", "--nb", "0.1", "--ns", "0.1",
                               "--bound", "PL")
        assert code == 0
        rec = json.loads(out)
        want = bnd.p_lower_displaced(0.7, 0.1, 0.1)
        assert rec["value_bits"] == pytest.approx(want.value, abs=1e-12)


SPEC_TWO_POINT = """\
channel = thermal
eta = 0.9
nb = 0.2
sweep = ns
start = 1
stop = 2
points = 2
scale = linear
bounds = QL
"""


class TestSweepCommand:
    def test_two_point_sweep_is_three_lines(self, tmp_path, capsys):
        spec = tmp_path / "s.cfg"
        spec.write_text(SPEC_TWO_POINT)
        out = tmp_path / "o.csv"
        code, _, _ = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 3
        assert lines[0] == "sweep_var,QL"
        assert float(lines[1].split(",")[1]) == pytest.approx(
            bnd.q_lower_thermal(0.9, 0.2, 1.0).value, rel=1e-10)

    def test_byte_stable(self, tmp_path, capsys):
        spec = tmp_path / "s.cfg"
        spec.write_text(SPEC_TWO_POINT.replace("points = 2", "points = 5"))
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out1))
        run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out2))
        assert out1.read_bytes() == out2.read_bytes()

    def test_infeasible_cells_empty(self, tmp_path, capsys):
        spec = tmp_path / "s.cfg"
        spec.write_text(
            "channel = thermal\nnb = 2\nns = 5\nsweep = eta\n"
            "start = 0.55\nstop = 0.95\npoints = 5\nscale = linear\n"
            "bounds = QL,QU4\n")
        out = tmp_path / "o.csv"
        code, _, _ = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out))
        assert code == 0
        rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
        # QU4 infeasible for eta <= (1-eta)*2, i.e. eta <= 2/3
        assert rows[0][2] == ""
        assert rows[-1][2] != ""
        assert all(r[1] != "" for r in rows)  # QL defined everywhere

    def test_figure_configs_parse(self):
        for fig in cli.FIGURES:
            spec = cli.load_figure_spec(fig)
            assert spec.points >= 2

    def test_figure_sweep_runs(self, tmp_path, capsys):
        out = tmp_path / "fig5a.csv"
        code, _, _ = run_cli(capsys, "sweep", "--fig", "5a", "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "sweep_var,QL,PL"
        assert len(lines) == 38

    def test_fig3c_high_energy_closeness(self, tmp_path, capsys):
        # QL, QU1 and QU2 pinch together at the high-energy end of the 3c
        # sweep; QU3 keeps a penalty offset at this noise and is excluded
        out = tmp_path / "fig3c.csv"
        code, _, _ = run_cli(capsys, "sweep", "--fig", "3c", "--out", str(out))
        assert code == 0
        last = out.read_text().splitlines()[-1].split(",")
        ql, qu1, qu2 = float(last[1]), float(last[2]), float(last[3])
        assert max(qu1, qu2) - ql < 0.2

    def test_fig4_regime_orderings(self, tmp_path, capsys):
        out = tmp_path / "fig4.csv"
        run_cli(capsys, "sweep", "--fig", "4a", "--out", str(out))
        rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
        high = [r for r in rows if float(r[0]) >= 100.0]
        assert all(float(r[3]) < float(r[2]) for r in high)  # QU2 < QU1
        run_cli(capsys, "sweep", "--fig", "4b", "--out", str(out))
        rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
        low = [r for r in rows if float(r[0]) <= 1.0]
        assert all(float(r[2]) < float(r[3]) for r in low)  # QU1 < QU2

    def test_bad_spec_exits_1(self, tmp_path, capsys):
        spec = tmp_path / "s.cfg"
        spec.write_text("channel = thermal\nsweep = ns\nstart = 2\nstop = 1\n"
                        "points = 5\nbounds = QL\neta = 0.9\n")
        code, _, err = run_cli(capsys, "sweep", "--spec", str(spec),
                               "--out", str(tmp_path / "o.csv"))
        assert code == 1
        assert "start" in err


class TestVerifyCommand:
    def test_core_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "core")
        assert code == 0
        assert "[PASS]" in out
        assert "[FAIL]" not in out

    def test_report_names_residuals(self):
        res = vfy.check_deg_vs_sim_cov(n=50)
        line = res.format()
        assert "deg_vs_sim_cov" in line
        assert "max residual" in line
        assert "< 1e-10" in line

    def test_mutation_in_qu1_breaks_gap_law(self, monkeypatch):
        orig = bnd._qu1_thermal_raw
        monkeypatch.setattr(bnd, "_qu1_thermal_raw",
                            lambda eta, nb, ns: orig(eta, nb, ns) + 0.5)
        assert not vfy.check_gap_law(n=500).passed

    def test_mutation_in_kappa_breaks_eps_consistency(self, monkeypatch):
        orig = chn.kappa
        monkeypatch.setattr(chn, "kappa", lambda x, nb: orig(x, nb) * 1.01)
        assert not vfy.check_eps_consistency(n=50).passed


class TestSpecParsing:
    def test_roundtrip(self):
        spec = cli.parse_spec(SPEC_TWO_POINT)
        assert spec.channel == "thermal"
        assert spec.fixed == {"eta": 0.9, "nb": 0.2}
        assert spec.bounds == ("QL",)
        assert list(spec.grid()) == [1.0, 2.0]

    def test_log_grid(self):
        spec = cli.parse_spec(SPEC_TWO_POINT.replace("scale = linear", "scale = log")
                              .replace("points = 2", "points = 3"))
        assert np.allclose(spec.grid(), [1.0, np.sqrt(2.0), 2.0])

    @pytest.mark.parametrize("old,new", [
        ("points = 2", "points = 1"),
        ("start = 1", "start = 3"),
        ("bounds = QL", "bounds = QQ"),
        ("sweep = ns", "sweep = foo"),
    ])
    def test_validation(self, old, new):
        with pytest.raises(ValueError):
            cli.parse_spec(SPEC_TWO_POINT.replace(old, new))

    def test_log_scale_needs_positive_start(self):
        text = SPEC_TWO_POINT.replace("scale = linear", "scale = log") \
                             .replace("start = 1", "start = 0")
        with pytest.raises(ValueError):
            cli.parse_spec(text)

    def test_threads_env_respected(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv(cli.THREADS_ENV, "1")
        spec = tmp_path / "s.cfg"
        spec.write_text(SPEC_TWO_POINT)
        out = tmp_path / "o.csv"
        code, _, _ = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out))
        assert code == 0
        assert len(out.read_text().splitlines()) == 3
