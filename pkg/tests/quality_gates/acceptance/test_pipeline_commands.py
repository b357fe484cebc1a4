"""Acceptance test for the gen-tools, collect, train and eval pipeline."""

import csv
from pathlib import Path

import pytest
from click.testing import CliRunner

from keypoint_lab.cli.main import cli

PIPELINE_CONFIG = """\
seed = 1

[tools]
per_category = 2
points = 256

[scene]
tasks = ["hammering"]

[learner]
proposal_count = 4
iterations = 3
batch_size = 4
train_points = 32

[loop]
episodes_per_round = 100
rounds = 2
p_heuristic = [1.0, 0.0]

[eval]
methods = ["heuristic", "template", "learned"]
"""


@pytest.mark.slow
class TestPipelineCommands:
    """Run every stage on a small experiment."""

    def test_end_to_end(self, tmp_path: Path):
        """Test the artifacts each stage leaves behind."""
        config = tmp_path / "exp.toml"
        config.write_text(PIPELINE_CONFIG, encoding="utf-8")
        out = tmp_path / "run"
        runner = CliRunner()
        common = ["--config", str(config), "--out", str(out)]

        result = runner.invoke(cli, ["gen-tools", *common])
        assert result.exit_code == 0, result.output

        result = runner.invoke(cli, ["collect", *common])
        assert result.exit_code == 0, result.output
        dataset = out / "datasets" / "hammering-all"
        rounds = list(csv.DictReader((dataset / "rounds.csv").open(encoding="utf-8")))
        assert [r["round"] for r in rounds] == ["0", "1"]
        assert (dataset / "manifest.txt").is_file()
        assert (out / "models" / "hammering-all-proposal.ketm").is_file()

        result = runner.invoke(cli, ["collect", *common])
        assert result.exit_code == 2
        assert "bad-config" in result.output

        result = runner.invoke(cli, ["train", *common])
        assert result.exit_code == 0, result.output
        assert "Trained hammering-all on 200 episodes" in result.output

        result = runner.invoke(cli, ["eval", *common])
        assert result.exit_code == 0, result.output
        report = list(csv.DictReader((out / "eval" / "report.csv").open(encoding="utf-8")))
        assert {r["method"] for r in report} == {"heuristic", "template", "learned"}
        assert sum(int(r["episodes"]) for r in report if r["method"] == "heuristic") == 4
        assert (out / "eval" / "episodes.jsonl").is_file()
        assert "Success rates" in (out / "eval" / "report.txt").read_text(encoding="utf-8")

        result = runner.invoke(cli, ["create", "--max-iters", "2", "--frames", *common])
        assert result.exit_code == 0, result.output
        assert (out / "create" / "created-hammering-1.json").is_file()
        assert (out / "create" / "frames" / "created-hammering-1-000.svg").is_file()
