"""Command-line interface: exit codes, outputs, determinism."""

from __future__ import annotations

import json
from pathlib import Path

from outcome_fixture import fixture_logs
from lmfa.cli import EXIT_CONFIG, EXIT_DIVERGENCE, EXIT_OK, EXIT_SETUP, main
from lmfa.engine import Button, decode_chord, encode_chord


def write_config(path: Path, **overrides) -> Path:
    doc = {"lmfa_config": 1, "match_length_frames": 1200, "seed": 42}
    doc.update(overrides)
    p = path / "config.json"
    p.write_text(json.dumps(doc))
    return p


def write_agents(path: Path, specs) -> Path:
    p = path / "agents.json"
    p.write_text(json.dumps({"lmfa_agents": 1, "agents": specs}))
    return p


BOTS_4 = [
    {"id": "rush", "kind": "scripted", "policy": "rushdown"},
    {"id": "zone", "kind": "scripted", "policy": "zoner"},
    {"id": "rand", "kind": "scripted", "policy": "random", "seed": 7},
    {"id": "idle", "kind": "scripted", "policy": "idle"},
]


def tree_bytes(root: Path) -> dict:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


class TestRunMatch:
    def test_outcome_line_and_log(self, tmp_path, capsys):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4[:1] + BOTS_4[3:])
        out = tmp_path / "out"
        code = main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(out)])
        assert code == EXIT_OK
        assert "WINNER=rush HEALTH=1.000 REASON=knockout" in capsys.readouterr().out
        assert (out / "match_0_0_rush_vs_idle.json").is_file()

    def test_missing_config_exit_2(self, tmp_path, capsys):
        agents = write_agents(tmp_path, BOTS_4[:2])
        code = main(
            ["run-match", "--config", str(tmp_path / "nope.json"), "--agents", str(agents), "--out", str(tmp_path / "o")]
        )
        assert code == EXIT_CONFIG
        assert "nope.json" in capsys.readouterr().err

    def test_unknown_config_key_exit_2(self, tmp_path):
        cfg = write_config(tmp_path, typo_key=3)
        agents = write_agents(tmp_path, BOTS_4[:2])
        code = main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(tmp_path / "o")])
        assert code == EXIT_CONFIG

    def test_bad_agents_exit_3(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, [{"id": "only-one", "kind": "scripted", "policy": "idle"}])
        code = main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(tmp_path / "o")])
        assert code == EXIT_SETUP

    def test_same_seed_identical_logs(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4[:1] + BOTS_4[3:])
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        for out in (out1, out2):
            assert main(
                ["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(out), "--seed", "42"]
            ) == EXIT_OK
        assert tree_bytes(out1) == tree_bytes(out2)

    def test_refuses_nonempty_out_without_force(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4[:1] + BOTS_4[3:])
        out = tmp_path / "out"
        out.mkdir()
        (out / "junk.txt").write_text("x")
        code = main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(out)])
        assert code == EXIT_CONFIG
        code = main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(out), "--force"])
        assert code == EXIT_OK


class TestTournament:
    def test_four_bots_outputs(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4)
        out = tmp_path / "t"
        code = main(["tournament", "--config", str(cfg), "--agents", str(agents), "--out", str(out)])
        assert code == EXIT_OK
        logs = sorted(out.glob("match_*.json"))
        assert len(logs) == 6
        for name in ("tournament.json", "matrix.csv", "win_rates.csv", "heatmap.csv", "heatmap_norm.csv"):
            assert (out / name).is_file()

    def test_matches_per_pair_alternates_sides(self, tmp_path):
        cfg = write_config(tmp_path, match_length_frames=600)
        agents = write_agents(tmp_path, BOTS_4[:2])
        out = tmp_path / "t"
        code = main(
            ["tournament", "--config", str(cfg), "--agents", str(agents), "--out", str(out), "--matches-per-pair", "3"]
        )
        assert code == EXIT_OK
        logs = sorted(out.glob("match_*.json"))
        assert len(logs) == 3
        sides = [json.loads(p.read_text())["p1"] for p in logs]
        assert sides == ["rush", "zone", "rush"]

    def test_rerun_byte_identical(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4)
        out1, out2 = tmp_path / "t1", tmp_path / "t2"
        for out in (out1, out2):
            assert main(
                ["tournament", "--config", str(cfg), "--agents", str(agents), "--out", str(out), "--seed", "42"]
            ) == EXIT_OK
        assert tree_bytes(out1) == tree_bytes(out2)


class TestReplay:
    def run_one(self, tmp_path) -> Path:
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4[:1] + BOTS_4[3:])
        out = tmp_path / "m"
        assert main(["run-match", "--config", str(cfg), "--agents", str(agents), "--out", str(out)]) == EXIT_OK
        return next(out.glob("match_*.json"))

    def test_untampered_exit_0(self, tmp_path, capsys):
        log = self.run_one(tmp_path)
        assert main(["replay", str(log)]) == EXIT_OK
        assert "REPLAY=match" in capsys.readouterr().out

    def test_tampered_exit_4_with_frame(self, tmp_path, capsys):
        path = self.run_one(tmp_path)
        data = json.loads(path.read_text())
        held = set(decode_chord(data["input_trace"][25][0]))
        held.symmetric_difference_update({Button.B})
        data["input_trace"][25][0] = encode_chord(frozenset(held))
        path.write_text(json.dumps(data))
        assert main(["replay", str(path)]) == EXIT_DIVERGENCE
        assert "FRAME=26" in capsys.readouterr().out

    def test_missing_log_exit_2(self, tmp_path):
        assert main(["replay", str(tmp_path / "missing.json")]) == EXIT_CONFIG


class TestReport:
    def test_fixture_logs_produce_expected_rates(self, tmp_path, capsys):
        logs_dir = tmp_path / "logs"
        logs_dir.mkdir()
        for log in fixture_logs():
            name = f"match_{log['pair_index']}_0_{log['p1']}_vs_{log['p2']}.json"
            (logs_dir / name).write_text(json.dumps(log))
        assert main(["report", str(logs_dir)]) == EXIT_OK
        column = [
            line.split(",")[1]
            for line in (logs_dir / "win_rates.csv").read_text().strip().splitlines()[1:]
        ]
        assert column == ["1.0", "0.8", "0.6", "0.4", "0.2", "0.0"]

    def test_empty_dir_exit_2(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main(["report", str(empty)]) == EXIT_CONFIG

    def test_regeneration_idempotent_and_matches_tournament(self, tmp_path):
        cfg = write_config(tmp_path)
        agents = write_agents(tmp_path, BOTS_4)
        out = tmp_path / "t"
        assert main(["tournament", "--config", str(cfg), "--agents", str(agents), "--out", str(out)]) == EXIT_OK
        originals = tree_bytes(out)
        assert main(["report", str(out)]) == EXIT_OK
        assert tree_bytes(out) == originals
        assert main(["report", str(out)]) == EXIT_OK
        assert tree_bytes(out) == originals
