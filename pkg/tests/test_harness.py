import copy
import json

import pytest

from gaudin.cli import main
from gaudin.harness import (
    ConfigError,
    InstanceConfig,
    dump_report,
    render_table,
    run_report,
    spectrum_pipeline,
    verify_pipeline,
    wronski_pipeline,
)

GOLDEN = {
    "N": 2,
    "K": ["0", "1"],
    "partitions": [[1], [1]],
    "b": ["0", "1"],
    "weight": [1, 1],
    "options": {"seed": 2024},
}


def test_config_parses():
    cfg = InstanceConfig.from_dict(GOLDEN)
    assert cfg.spec.rank == 2
    assert cfg.seed == 2024
    assert cfg.tolerances.residual == 1e-9


def test_config_rejects_repeated_points():
    bad = copy.deepcopy(GOLDEN)
    bad["b"] = ["0", "0"]
    with pytest.raises(ConfigError):
        InstanceConfig.from_dict(bad)


def test_config_rejects_non_partition_weight():
    bad = copy.deepcopy(GOLDEN)
    bad["weight"] = [1, 2]
    with pytest.raises(ConfigError):
        InstanceConfig.from_dict(bad)


def test_config_rejects_bad_scalar():
    bad = copy.deepcopy(GOLDEN)
    bad["K"] = ["0", "zebra"]
    with pytest.raises(ConfigError):
        InstanceConfig.from_dict(bad)


def test_report_determinism():
    cfg1 = InstanceConfig.from_dict(GOLDEN)
    cfg2 = InstanceConfig.from_dict(GOLDEN)
    r1 = run_report("verify", cfg1, verify_pipeline(cfg1))
    r2 = run_report("verify", cfg2, verify_pipeline(cfg2))
    r1.pop("timings")
    r2.pop("timings")
    assert dump_report(r1) == dump_report(r2)


def test_report_serializes_and_renders():
    cfg = InstanceConfig.from_dict(GOLDEN)
    report = run_report("spectrum", cfg, spectrum_pipeline(cfg))
    text = dump_report(report)
    parsed = json.loads(text)
    assert parsed["all_passed"] is True
    table = render_table(parsed)
    assert "all checks passed" in table


def test_wronski_pipeline_rank_one():
    data = {
        "N": 1,
        "K": ["3"],
        "partitions": [[1]],
        "b": ["2"],
        "weight": [1],
        "space": {"polys": [["-2", "1"]]},
    }
    cfg = InstanceConfig.from_dict(data)
    out = wronski_pipeline(cfg)
    assert all(c.passed for c in out["checks"])
    assert out["exponents"]["0"] == [1]
    assert "D" in out["operator_text"]


def test_wronski_pipeline_requires_space():
    cfg = InstanceConfig.from_dict(GOLDEN)
    with pytest.raises(ConfigError):
        wronski_pipeline(cfg)


def test_cli_roundtrip(tmp_path):
    cfg_path = tmp_path / "golden.json"
    cfg_path.write_text(json.dumps(GOLDEN))
    out_path = tmp_path / "report.json"
    code = main(["verify", "--config", str(cfg_path), "--out", str(out_path)])
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["all_passed"] is True
    assert main(["report", str(out_path)]) == 0


def test_cli_config_error_exit_code(tmp_path):
    cfg_path = tmp_path / "bad.json"
    bad = copy.deepcopy(GOLDEN)
    bad["b"] = ["0", "0"]
    cfg_path.write_text(json.dumps(bad))
    assert main(["spectrum", "--config", str(cfg_path)]) == 2


def test_gaussian_rational_instance():
    data = {
        "N": 2,
        "K": ["0", "i"],
        "partitions": [[1], [1]],
        "b": ["0", "1"],
        "weight": [1, 1],
    }
    cfg = InstanceConfig.from_dict(data)
    out = verify_pipeline(cfg)
    assert all(c.passed for c in out["checks"])
    assert len(out["characters"]) == 2


def test_option_toggles():
    data = copy.deepcopy(GOLDEN)
    data["options"] = {"run_wronski": False, "run_bae": False, "samples": 3}
    cfg = InstanceConfig.from_dict(data)
    out = verify_pipeline(cfg)
    names = [c.name for c in out["checks"]]
    assert "kernel-membership" not in names
    assert all(c.passed for c in out["checks"])


def test_cli_table_output(tmp_path, capsys):
    cfg_path = tmp_path / "golden.json"
    cfg_path.write_text(json.dumps(GOLDEN))
    code = main(["spectrum", "--config", str(cfg_path), "--table"])
    captured = capsys.readouterr()
    assert code == 0
    assert "all checks passed" in captured.out
