import io
import json

from hybridmimo import cli
from hybridmimo import runner as runner_mod
from hybridmimo.runner import CSV_COLUMNS


def run_cli(argv):
    out = io.StringIO()
    code = cli.main(argv, stream=out)
    return code, out.getvalue()


def scenario_file(tmp_path, **extra):
    obj = {
        "system": {"m": 16, "k": 4, "b1": 3, "b2": 4, "structure": "sub"},
        "codebook": "rvq",
        "precoder": "zf",
        "snr_db": [0, 10],
        "trials": 6,
        "master_seed": 11,
        "scenario_id": "cli-test",
    }
    obj.update(extra)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


class TestSimulate:
    def test_writes_csv(self, tmp_path):
        cfg = scenario_file(tmp_path)
        out = tmp_path / "rows.csv"
        code, text = run_cli(["simulate", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3

    def test_trials_and_seed_override(self, tmp_path):
        cfg = scenario_file(tmp_path)
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        run_cli(["simulate", "--config", str(cfg), "--out", str(out1), "--trials", "3"])
        run_cli(
            ["simulate", "--config", str(cfg), "--out", str(out2), "--trials", "3", "--seed", "99"]
        )
        a = out1.read_text(encoding="utf-8")
        b = out2.read_text(encoding="utf-8")
        assert a != b
        assert ",3," in a.split("\n")[1]

    def test_worker_byte_identity(self, tmp_path):
        cfg = scenario_file(tmp_path, trials=20)
        outs = []
        for workers in ("1", "2"):
            path = tmp_path / f"w{workers}.csv"
            code, _ = run_cli(
                ["simulate", "--config", str(cfg), "--out", str(path), "--workers", workers]
            )
            assert code == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_config_error_exit_code(self, tmp_path):
        cfg = scenario_file(tmp_path)
        obj = json.loads(cfg.read_text(encoding="utf-8"))
        obj["bogus"] = True
        cfg.write_text(json.dumps(obj), encoding="utf-8")
        code, _ = run_cli(["simulate", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_missing_file_exit_code(self, tmp_path):
        code, _ = run_cli(
            ["simulate", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "x.csv")]
        )
        assert code == 2

    def test_degenerate_exit_code(self, tmp_path, monkeypatch):
        cfg = scenario_file(tmp_path)

        def always_degenerate(sc, sweep_value, trial_index, codebooks=None):
            return None, float("nan"), True

        monkeypatch.setattr(runner_mod, "_trial_stats", always_degenerate)
        code, _ = run_cli(["simulate", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert code == 3


class TestTheory:
    def test_inline_json(self):
        code, text = run_cli(
            [
                "theory",
                "--json",
                json.dumps({"op": "asymptotic_rate", "structure": "sub", "p": 316.23, "k": 4, "b1": 3}),
            ]
        )
        assert code == 0
        assert "asymptotic_rate 5.90" in text

    def test_json_file(self, tmp_path):
        path = tmp_path / "op.json"
        path.write_text(
            json.dumps({"op": "crossover", "p": 316.23, "m": 64, "k": 4, "b1": 3, "b2": 6}),
            encoding="utf-8",
        )
        code, text = run_cli(["theory", "--json", str(path)])
        assert code == 0
        assert "min_antennas 64.32" in text
        assert "preferred full" in text

    def test_bad_op(self):
        code, _ = run_cli(["theory", "--json", json.dumps({"op": "nope"})])
        assert code == 2

    def test_invalid_json(self):
        code, _ = run_cli(["theory", "--json", "{broken"])
        assert code == 2


class TestAdvise:
    def test_report(self):
        code, text = run_cli(
            ["advise", "--m", "64", "--k", "4", "--p-db", "25", "--b1", "3", "--b2", "6"]
        )
        assert code == 0
        assert "preferred full" in text
        assert "eta 0.998" in text

    def test_ideal_b1(self):
        code, text = run_cli(
            ["advise", "--m", "1024", "--k", "4", "--p-db", "25", "--b1", "ideal", "--b2", "6"]
        )
        assert code == 0
        assert "preferred sub" in text


class TestFigure:
    def test_outputs(self, tmp_path):
        code, text = run_cli(
            ["figure", "--name", "fig4", "--out", str(tmp_path), "--trials", "3", "--seed", "5"]
        )
        assert code == 0
        assert (tmp_path / "fig4.csv").exists()
        assert (tmp_path / "fig4.gnuplot").exists()

    def test_unknown_name(self, tmp_path):
        code, _ = run_cli(["figure", "--name", "fig0", "--out", str(tmp_path)])
        assert code == 2
