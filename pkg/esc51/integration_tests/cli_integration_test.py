"""Tests for the command-line interface."""
from __future__ import annotations

import glob
import json
import os
import pathlib

import pytest

from esc51 import __main__ as cli
from esc51.network import checkpoint

FAST = ["--total-timesteps", "200", "--learning-starts", "50", "--batch-size", "16", "--n-atoms", "11"]


def invoke(*argv: str) -> None:
    arguments = cli.build_parser().parse_args(list(argv))
    cli.check_preconditions(arguments)
    cli.run(arguments)


def test_train_and_evaluate(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = str(tmp_path)
    invoke("train", "--env", "equal-mean", "--algo", "ql-c51", "--seed", "3", "--out", out, "--save-checkpoint", *FAST)
    assert "over 200 episodes" in capsys.readouterr().out
    (path,) = glob.glob(os.path.join(out, "runs", "equal-mean", "ql-c51", "seed-3-*.npz"))

    invoke("evaluate", "--checkpoint", path, "--env", "equal-mean", "--episodes", "5")
    assert "over 5 episodes" in capsys.readouterr().out


def test_checkpoint_keeps_training_support(tmp_path: pathlib.Path) -> None:
    out = str(tmp_path)
    bounds = ["--v-min", "-2", "--v-max", "3"]
    invoke("train", "--env", "equal-mean", "--algo", "es-c51", "--out", out, "--save-checkpoint", *FAST, *bounds)
    (path,) = glob.glob(os.path.join(out, "runs", "equal-mean", "es-c51", "seed-1-*.npz"))
    _, support = checkpoint.load_checkpoint(path)
    assert (support.n_atoms, support.v_min, support.v_max) == (11, -2.0, 3.0)
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["evaluate", "--checkpoint", path, "--env", "equal-mean", "--v-min", "-2"])


def test_train_refuses_to_overwrite(tmp_path: pathlib.Path) -> None:
    args = ["train", "--env", "equal-mean", "--algo", "es-c51", "--out", str(tmp_path), *FAST]
    invoke(*args)
    with pytest.raises(FileExistsError):
        invoke(*args)
    invoke(*args, "--force")


def test_config_file(tmp_path: pathlib.Path) -> None:
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"gamma": 0.5, "n_atoms": 21}), encoding="utf-8")
    argv = ["train", "--env", "cartpole", "--algo", "es-c51", "--out", str(tmp_path), "-c", str(config_path)]
    arguments = cli.build_parser().parse_args([*argv, "--n-atoms", "31"])
    config = cli.build_config(arguments)
    assert config.gamma == 0.5
    assert config.n_atoms == 31


def test_missing_files(tmp_path: pathlib.Path) -> None:
    with pytest.raises(FileNotFoundError):
        invoke("report", "--in", str(tmp_path / "missing"))
    with pytest.raises(FileNotFoundError):
        invoke("evaluate", "--checkpoint", str(tmp_path / "net.npz"), "--env", "cartpole")


def test_compare_then_report(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = str(tmp_path)
    invoke("compare", "--env", "equal-mean", "--seeds", "1,2", "--out", out, *FAST)
    compared = capsys.readouterr().out
    assert compared.startswith("equal-mean: ql-c51")
    invoke("report", "--in", out)
    assert capsys.readouterr().out == compared
    assert len(glob.glob(os.path.join(out, "report-equal-mean-*.json"))) == 1
    assert len(glob.glob(os.path.join(out, "plot-equal-mean-*.tsv"))) == 1


def test_parse_seeds() -> None:
    assert cli.parse_seeds("1,2, 3,") == [1, 2, 3]
