import csv
import json
import math
import subprocess
import sys
import time

import pytest
from pytest import approx

from rabitunnel.cli import FIGURES, fmt, main
from rabitunnel.variational import variational_params
from rabitunnel import ModelParams


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def write_config(tmp_path, doc):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    return str(path)


class TestFormatting:
    def test_roundtrip(self):
        for x in (0.1, 1 / 3, -2.1667446797, 1e-300, 5.0):
            assert float(fmt(x)) == x

    def test_special(self):
        assert fmt(None) == ""
        assert fmt(True) == "1"
        assert fmt(3) == "3"


class TestSpectrum:
    def test_columns(self, tmp_path):
        assert run(tmp_path, "spectrum", "--omega", "3", "--lambda", "1.3") == 0
        rows = read_csv(tmp_path / "spectrum.csv")
        assert rows[0] == ["omega_q", "coupling", "index", "energy_exact", "energy_approx_full",
                           "energy_approx_simplified", "parity", "N", "note"]
        assert len(rows) == 21
        assert float(rows[1][3]) == approx(-2.17, abs=0.01)
        assert float(rows[1][4]) == approx(-2.10, abs=0.01)
        assert rows[1][6] == "-1" and rows[2][6] == "1"

    def test_single_well(self, tmp_path):
        assert run(tmp_path, "spectrum", "--lambda", "0") == 0
        rows = read_csv(tmp_path / "spectrum.csv")[1:]
        assert all(r[4] == "" and r[5] == "" and r[8] == "single-minimum regime" for r in rows)
        assert float(rows[0][3]) == approx(-1.5, abs=1e-9)

    def test_truncated_basis_is_numeric_failure(self, tmp_path, capsys):
        assert run(tmp_path, "spectrum", "--n-max", "6") == 3
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "numeric"

    def test_fixed_basis(self, tmp_path):
        assert run(tmp_path, "spectrum", "--n-max", "200") == 0

    def test_json_output(self, tmp_path):
        assert run(tmp_path, "spectrum", "--format", "json", "--lambda", "0") == 0
        records = json.loads((tmp_path / "spectrum.json").read_text())
        assert records[0]["energy_approx_full"] is None
        assert list(records[0]) == ["omega_q", "coupling", "index", "energy_exact", "energy_approx_full",
                                    "energy_approx_simplified", "parity", "N", "note"]


class TestErrors:
    def test_malformed_config(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert run(tmp_path, "spectrum", "--config", str(bad)) == 2
        assert json.loads(capsys.readouterr().err)["error"] == "config"

    def test_unknown_key(self, tmp_path):
        assert run(tmp_path, "spectrum", "--config", write_config(tmp_path, {"modle": {}})) == 2

    def test_bad_n_max(self, tmp_path):
        assert run(tmp_path, "spectrum", "--n-max", "lots") == 2

    def test_regime(self, tmp_path, capsys):
        assert run(tmp_path, "dynamics", "--lambda", "0.5") == 4
        assert json.loads(capsys.readouterr().err)["error"] == "regime"

    def test_feasibility_without_context(self, tmp_path):
        assert run(tmp_path, "feasibility") == 2

    def test_no_crossover_is_regime(self, tmp_path):
        cfg = write_config(tmp_path, {"physical": {"omega0_phys": 1e9, "omega_q": 3.0, "coupling": 0.875}})
        assert run(tmp_path, "feasibility", "--config", cfg) == 4


class TestDynamics:
    def test_zero_samples(self, tmp_path):
        cfg = write_config(tmp_path, {"times": {"samples": 0}, "grid": {"points": 11}})
        assert run(tmp_path, "dynamics", "--config", cfg) == 0
        for name in ("density_approx", "density_exact", "observables"):
            assert len(read_csv(tmp_path / f"{name}.csv")) == 1

    def test_single_time(self, tmp_path):
        cfg = write_config(tmp_path, {"times": {"samples": 1, "stop": 0.0}, "grid": {"points": 11}})
        assert run(tmp_path, "dynamics", "--config", cfg) == 0
        header, row = read_csv(tmp_path / "observables.csv")
        assert header == ["t", "sz_exact", "sx_exact", "sy_exact", "sz_approx", "sx_approx"]
        s = math.sin(variational_params(ModelParams(3.0, 1.3)).theta0)
        assert float(row[1]) == approx(s, abs=1e-8)
        assert float(row[4]) == approx(s, abs=1e-14)

    def test_density_layout(self, tmp_path):
        cfg = write_config(tmp_path, {"times": {"samples": 3}, "grid": {"q_min": -2, "q_max": 2, "points": 5}})
        assert run(tmp_path, "dynamics", "--config", cfg) == 0
        rows = read_csv(tmp_path / "density_exact.csv")
        assert rows[0] == ["t", "-2.0", "-1.0", "0.0", "1.0", "2.0"]
        assert [r[0] for r in rows[1:]] == ["0.0", "0.5", "1.0"]

    def test_sweep_suffix(self, tmp_path):
        cfg = write_config(tmp_path, {"times": {"samples": 2}, "grid": {"points": 11}})
        assert run(tmp_path, "dynamics", "--config", cfg, "--lambda", "1.3", "--lambda", "2.0") == 0
        assert (tmp_path / "observables_lambda1.3.csv").exists()
        assert (tmp_path / "observables_lambda2.0.csv").exists()


class TestPotential:
    def test_blocks(self, tmp_path):
        assert run(tmp_path, "reproduce-figure", "5b") == 0
        rows = read_csv(tmp_path / "potential.csv")
        header = rows[0]
        assert header[:6] == ["coupling", "kind", "label", "value", "q", "E_b"]
        assert header[6:] == [f"{p}_{j}" for j in range(6) for p in ("V", "mask")]
        kinds = [r[1] for r in rows[1:]]
        assert kinds.count("curve") == 601 and kinds.count("energy") == 6
        summary = {r[2]: r[3] for r in rows[1:] if r[1] == "summary"}
        assert float(summary["energy_bound"]) == approx(3.1406, abs=1e-4)
        assert summary["overlap_count"] == "3"
        assert summary["exact_doublets_below_barrier"] == "3"
        assert "large_N_bound" in summary

    def test_mask_column(self, tmp_path):
        cfg = write_config(tmp_path, {"model": {"coupling": 2.0}, "states": 2, "floor": 1e-3})
        assert run(tmp_path, "potential", "--config", cfg) == 0
        from rabitunnel import converged_spectrum
        from rabitunnel.dynamics import density_profile

        spec = converged_spectrum(ModelParams(3.0, 2.0), k=2)
        rho = density_profile(spec.state(1)).values
        rows = [r for r in read_csv(tmp_path / "potential.csv")[1:] if r[1] == "curve"]
        for i, r in enumerate(rows[2:-2], start=2):
            assert (r[9] == "1") == (rho[i] >= 1e-3 * rho.max())

    def test_single_well_summary(self, tmp_path):
        cfg = write_config(tmp_path, {"model": {"coupling": 0.3}, "states": 1, "grid": {"points": 21}})
        assert run(tmp_path, "potential", "--config", cfg) == 0
        notes = [r for r in read_csv(tmp_path / "potential.csv") if r[1] == "summary"]
        assert notes[0][2:4] == ["note", "single-minimum regime"]


class TestFeasibility:
    def test_presets(self, tmp_path):
        assert run(tmp_path, "feasibility", "--preset", "dilatational-3GHz", "--preset", "flexural-100MHz") == 0
        data = json.loads((tmp_path / "feasibility.json").read_text())
        assert [d["name"] for d in data] == ["dilatational-3GHz", "flexural-100MHz"]
        assert data[0]["report"]["t_Q"] == approx(5.9e-9, rel=0.05)
        assert data[0]["report"]["T_c"] == approx(12e-3, rel=0.10)
        assert data[1]["report"]["t_Q"] == approx(0.22e-6, rel=0.05)
        assert data[1]["report"]["T_c"] == approx(24e-6, rel=0.10)
        assert data[0]["report"]["tau_th"] is None

    def test_regime_flag(self, tmp_path):
        cfg = write_config(tmp_path, {"physical": {"preset": "dilatational-3GHz", "T_env": 0.005}})
        assert run(tmp_path, "feasibility", "--config", cfg) == 0
        report = json.loads((tmp_path / "feasibility.json").read_text())[0]["report"]
        assert report["regime"] == "quantum-tunneling-dominated"


@pytest.mark.parametrize("figure", sorted(FIGURES))
def test_figures_deterministic_and_fast(tmp_path, figure):
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        start = time.perf_counter()
        assert main(["reproduce-figure", figure, "--out", str(out)]) == 0
        runs.append(time.perf_counter() - start)
    assert max(runs) < 60
    files_a = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files_a == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in files_a:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_figure_1_content(tmp_path):
    assert main(["reproduce-figure", "1", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "spectrum.csv")[1:]
    assert len(rows) == 40
    assert sorted({r[1] for r in rows}) == ["1.3", "2.0"]
    assert all(r[4] != "" for r in rows)


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "rabitunnel.cli", "feasibility", "--preset", "flexural-100MHz",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("feasibility.json")
