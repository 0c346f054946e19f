import json
import subprocess
import sys
from pathlib import Path

import pytest

from claimcourt.cli import main

DATA = Path(__file__).parent / "data"
CLAIM = "The eviction notice was procedurally defective."


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CLAIMCOURT_CONFIG", raising=False)
    return tmp_path


def write_config(path: Path, **overrides) -> Path:
    doc = {"backends": {"default": {"kind": "demo", "seed": 2}}, **overrides}
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestUsageErrors:
    def test_no_subcommand_exits_2(self, capsys):
        assert main([]) == 2

    def test_unknown_subcommand_exits_2(self, capsys):
        assert main(["transmogrify"]) == 2

    def test_missing_required_flag_exits_2(self, capsys):
        assert main(["run-case"]) == 2

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        assert main(["serve", "--help"]) == 0
        assert "claimcourt" in capsys.readouterr().out


class TestRunCase:
    def test_plain_run_prints_decision(self, capsys):
        assert main(["run-case", "--claim", CLAIM]) == 0
        out = capsys.readouterr().out
        assert "decision:" in out
        assert "claim strength" in out

    def test_json_output_is_a_case_record(self, capsys):
        assert main(["run-case", "--claim", CLAIM, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["case_id"].startswith("case-")
        assert doc["decision"]["answer"] in ("yes", "no")

    def test_store_then_dump_graph(self, tmp_path, capsys):
        store = tmp_path / "store"
        assert main(["run-case", "--claim", CLAIM, "--json", "--store", str(store)]) == 0
        case_id = json.loads(capsys.readouterr().out)["case_id"]

        assert main(["dump-graph", "--case-id", case_id, "--store", str(store)]) == 0
        dumped = json.loads(capsys.readouterr().out)
        assert dumped["graph"]["claim"]["text"] == CLAIM
        assert dumped["strengths"]["converged"] is True

        out_file = tmp_path / "graph.json"
        assert (
            main(
                [
                    "dump-graph",
                    "--case-id",
                    case_id,
                    "--store",
                    str(store),
                    "--out",
                    str(out_file),
                ]
            )
            == 0
        )
        assert json.loads(out_file.read_text())["graph"]["arguments"]

    def test_dump_graph_unknown_case_exits_1(self, tmp_path, capsys):
        assert main(["dump-graph", "--case-id", "case-x", "--store", str(tmp_path)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_corpus_dir_flag(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "notice.txt").write_text(
            "The eviction notice omitted the statutory cure period and was "
            "served by taping it to the door without a mailing.",
            encoding="utf-8",
        )
        assert (
            main(["run-case", "--claim", CLAIM, "--json", "--corpus-dir", str(corpus)])
            == 0
        )
        doc = json.loads(capsys.readouterr().out)
        assert doc["trace"][0]["corpus_documents"] == 1


class TestConfigDiscovery:
    def test_cwd_default_file_is_picked_up(self, tmp_path, capsys):
        write_config(tmp_path / "claimcourt.json", clash_resolution_enabled=False)
        assert main(["run-case", "--claim", CLAIM, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "clash_resolution" not in [t["stage"] for t in doc["trace"]]

    def test_env_var_config(self, tmp_path, monkeypatch, capsys):
        target = write_config(tmp_path / "elsewhere.json", relation_mode="heuristic")
        monkeypatch.setenv("CLAIMCOURT_CONFIG", str(target))
        assert main(["run-case", "--claim", CLAIM, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        relations = next(t for t in doc["trace"] if t["stage"] == "relations")
        assert relations["mode"] == "heuristic"

    def test_explicit_flag_beats_env(self, tmp_path, monkeypatch, capsys):
        env_cfg = write_config(tmp_path / "env.json", relation_mode="heuristic")
        cli_cfg = write_config(tmp_path / "cli.json", relation_mode="model")
        monkeypatch.setenv("CLAIMCOURT_CONFIG", str(env_cfg))
        assert main(["run-case", "--claim", CLAIM, "--json", "--config", str(cli_cfg)]) == 0
        doc = json.loads(capsys.readouterr().out)
        relations = next(t for t in doc["trace"] if t["stage"] == "relations")
        assert relations["mode"] == "model"

    def test_missing_config_file_exits_1(self, capsys):
        assert main(["run-case", "--claim", CLAIM, "--config", "ghost.json"]) == 1
        assert "config file not found" in capsys.readouterr().err

    def test_override_flags(self, capsys):
        assert (
            main(["run-case", "--claim", CLAIM, "--json", "--no-clash-resolution"]) == 0
        )
        doc = json.loads(capsys.readouterr().out)
        assert "clash_resolution" not in [t["stage"] for t in doc["trace"]]


class TestBenchCommands:
    def test_bench_prints_metrics(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        code = main(
            [
                "bench",
                "--task",
                "hearsay",
                "--data",
                str(DATA / "hearsay_sample.tsv"),
                "--limit",
                "3",
                "--out",
                str(out_dir),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "grid point" in out and "macro-F1" in out
        predictions = (out_dir / "hearsay.default.predictions.jsonl").read_text()
        assert len(predictions.splitlines()) == 3

    def test_bench_bad_labels_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("something happened\tmaybe\n", encoding="utf-8")
        assert main(["bench", "--task", "hearsay", "--data", str(bad)]) == 1
        assert "maybe" in capsys.readouterr().err

    def test_ablate_cr_uae_prints_four_rows(self, capsys):
        code = main(
            [
                "ablate",
                "--task",
                "hearsay",
                "--data",
                str(DATA / "hearsay_sample.tsv"),
                "--grid",
                "cr-uae",
                "--limit",
                "2",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.count("cr=") == 4

    def test_ablate_beta_prints_five_rows(self, capsys):
        code = main(
            [
                "ablate",
                "--task",
                "hearsay",
                "--data",
                str(DATA / "hearsay_sample.tsv"),
                "--grid",
                "beta",
                "--limit",
                "2",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out.count("beta=") == 5


class TestFixtureWorkflow:
    def test_record_then_replay(self, tmp_path, capsys):
        fixtures = tmp_path / "fixtures"
        assert (
            main(["record-fixtures", "--claim", CLAIM, "--fixtures", str(fixtures)]) == 0
        )
        recorded = list(fixtures.glob("*.json"))
        assert recorded, "recording a case should write fixtures"
        capsys.readouterr()

        replay_cfg = tmp_path / "replay.json"
        replay_cfg.write_text(
            json.dumps(
                {"backends": {"default": {"kind": "replay", "fixtures_dir": str(fixtures)}}}
            ),
            encoding="utf-8",
        )
        assert (
            main(["run-case", "--claim", CLAIM, "--json", "--config", str(replay_cfg)]) == 0
        )
        doc = json.loads(capsys.readouterr().out)
        assert doc["decision"]["answer"] in ("yes", "no")

    def test_replay_miss_exits_1(self, tmp_path, capsys):
        fixtures = tmp_path / "empty-fixtures"
        fixtures.mkdir()
        replay_cfg = tmp_path / "replay.json"
        replay_cfg.write_text(
            json.dumps(
                {"backends": {"default": {"kind": "replay", "fixtures_dir": str(fixtures)}}}
            ),
            encoding="utf-8",
        )
        assert main(["run-case", "--claim", CLAIM, "--config", str(replay_cfg)]) == 1
        assert "error:" in capsys.readouterr().err


def test_console_script_is_wired():
    result = subprocess.run(
        [sys.executable, "-m", "claimcourt.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "run-case" in result.stdout
