"""The shipped fixture configs parse and the fast ones run green end to end."""

import json
import pathlib

import pytest

from gaudin.cli import main
from gaudin.harness import InstanceConfig

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_fixture_parses(path):
    cfg = InstanceConfig.from_file(path)
    assert cfg.spec.rank >= 1


def test_golden_fixture_cli(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--config", str(FIXTURES / "golden_n2.json"), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["all_passed"]
    assert report["dimension"] == 2


def test_wronski_fixture_cli(tmp_path):
    out = tmp_path / "report.json"
    code = main(["wronski", "--config", str(FIXTURES / "wronski_rank1.json"), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["exponents"]["0"] == [1]


def test_bae_fixture_cli(tmp_path):
    out = tmp_path / "report.json"
    code = main(["bae", "--config", str(FIXTURES / "golden_n2.json"), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["solutions"]) == 2
