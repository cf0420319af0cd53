"""CLI surface: subcommands, exit codes, piping."""

import json
import subprocess
import sys

import pytest

from gocycles.cli import main


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "gocycles.cli", *args],
        capture_output=True, text=True, input=stdin, timeout=300,
    )
    return proc


def test_gen_emits_board_document(tmp_path):
    out = tmp_path / "board.json"
    assert main(["gen", "j2k:3,5", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["name"] == "j2k:3,5"
    assert len(doc["edges"]) == 10


def test_solve_family_prints_winner(capsys):
    assert main(["solve", "--board", "j2k:3,5"]) == 0
    out = capsys.readouterr().out
    assert "winner: P2" in out


def test_solve_named_preset_position(capsys):
    assert main(["solve", "--board", "named:case_a_fails_fig"]) == 0
    assert "winner: P1" in capsys.readouterr().out


def test_gen_pipe_solve_stdin():
    gen = run_cli(["gen", "path:3"])
    assert gen.returncode == 0
    solved = run_cli(["solve", "--stdin"], stdin=gen.stdout)
    assert solved.returncode == 0
    assert "winner: P1" in solved.stdout


def test_solve_board_file(tmp_path, capsys):
    out = tmp_path / "b.json"
    main(["gen", "polygon:4", "-o", str(out)])
    assert main(["solve", "--board", str(out)]) == 0
    assert "winner: P2" in capsys.readouterr().out


def test_verify_exit_codes(capsys):
    assert main(["verify", "--board", "grid:2,3", "--policy", "rotate-reverse",
                 "--player", "1"]) == 0
    assert main(["verify", "--board", "ppaths:4,4,1",
                 "--policy", "mirror-reverse-naive", "--player", "2"]) == 1
    out = capsys.readouterr().out
    assert "verified: False" in out and '"moves"' in out


def test_verify_unknown_policy_is_usage_error(capsys):
    assert main(["verify", "--board", "grid:2,3", "--policy", "nope",
                 "--player", "1"]) == 2


def test_oracle_census(capsys):
    assert main(["oracle", "--board", "path:1"]) == 0
    out = capsys.readouterr().out
    assert "terminal states: 2" in out


def test_scan_small_population(capsys):
    assert main(["scan", "--max-edges", "7"]) == 0
    out = capsys.readouterr().out
    assert "agree" in out


def test_bad_family_is_usage_error(capsys):
    assert main(["gen", "wibble:3"]) == 2


def test_play_scripted_game():
    # human (P1) plays both path edges against no engine
    proc = run_cli(["play", "--board", "path:1"], stdin="0 uv\n")
    assert proc.returncode == 0
    assert "P1 wins" in proc.stdout


def test_play_vs_seeded_random_engine():
    out1 = run_cli(["play", "--board", "polygon:5", "--engine-role", "2",
                    "--engine", "random", "--seed", "11"], stdin="0 uv\n2 uv\n4 uv\n")
    out2 = run_cli(["play", "--board", "polygon:5", "--engine-role", "2",
                    "--engine", "random", "--seed", "11"], stdin="0 uv\n2 uv\n4 uv\n")
    assert out1.stdout == out2.stdout  # same seed, same game


def test_play_vs_engine():
    proc = run_cli(["play", "--board", "path:2", "--engine-role", "2"],
                   stdin="0 uv\n")
    assert proc.returncode == 0
    assert "engine (P2)" in proc.stdout
    assert "P2 wins by last_move" in proc.stdout
