from __future__ import annotations

from pathlib import Path

import pytest

from polisim.config import ConfigError, load_config
from polisim.runner import (
    main,
    read_csv,
    run_batch,
    run_sweep,
    summarize_dir,
    write_meta,
)

FAST = ["num_days=63", "num_agents=80", "num_families=30",
        "num_dwellings=40", "num_firms=10"]


def fast_params(out, seed=5, **extra):
    overrides = FAST + [f"seed={seed}", f"output_dir={out}"]
    overrides += [f"{k}={v}" for k, v in extra.items()]
    return load_config(overrides=overrides)


def read_bytes(path: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(path.glob("*.csv"))}


def test_batch_outputs_and_schema(tmp_path):
    sim, model = fast_params(tmp_path / "a")
    out = run_batch(sim, model, designs=[1], num_runs=2)
    assert (out / "series_1_0.csv").is_file()
    assert (out / "series_1_1.csv").is_file()
    assert (out / "regions_1_0.csv").is_file()
    assert (out / "summary.csv").is_file()
    assert (out / "meta.txt").is_file()

    rows = read_csv(out / "series_1_0.csv")
    assert len(rows) == 3
    assert rows[0]["month_index"] == 1
    assert set(rows[0]) == {
        "run_id", "month_index", "gdp_month", "gdp_cumulative", "unemployment",
        "avg_workers_per_firm", "avg_price", "avg_firm_balance",
        "sum_firm_profit", "gini_utility", "median_family_wealth", "avg_utility",
    }
    region_rows = read_csv(out / "regions_1_0.csv")
    assert set(region_rows[0]) == {
        "run_id", "month_index", "region_id", "qli", "population",
        "tax_collected_month",
    }
    header = (out / "series_1_0.csv").read_text().splitlines()[:5]
    assert any("fingerprint_sha256" in line for line in header)
    assert any("rng" in line for line in header)


def test_batch_rerun_byte_identical(tmp_path):
    sim_a, model = fast_params(tmp_path / "a")
    sim_b, _ = fast_params(tmp_path / "b")
    run_batch(sim_a, model, designs=[1, 4], num_runs=2)
    run_batch(sim_b, model, designs=[1, 4], num_runs=2)
    assert read_bytes(tmp_path / "a") == read_bytes(tmp_path / "b")


def test_parallel_equals_serial(tmp_path):
    sim_a, model = fast_params(tmp_path / "serial")
    sim_b, _ = fast_params(tmp_path / "parallel")
    run_batch(sim_a, model, designs=[1], num_runs=4, workers=1)
    run_batch(sim_b, model, designs=[1], num_runs=4, workers=2)
    assert read_bytes(tmp_path / "serial") == read_bytes(tmp_path / "parallel")


def test_summarize_dir_reproduces_summary(tmp_path):
    sim, model = fast_params(tmp_path / "a")
    out = run_batch(sim, model, designs=[1], num_runs=3)
    original = read_csv(out / "summary.csv")
    summarize_dir(out)
    rebuilt = read_csv(out / "summary.csv")
    assert len(rebuilt) == len(original)
    for a, b in zip(original, rebuilt):
        assert (a["design"], a["indicator"], a["stat"]) == (b["design"], b["indicator"], b["stat"])
        assert b["value"] == pytest.approx(a["value"], rel=1e-8, abs=1e-8)
    lookup = {(r["design"], r["indicator"], r["stat"]): r["value"] for r in rebuilt}
    assert lookup[(1, "gdp_cumulative", "median")] > 0


def test_summarize_empty_dir_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        summarize_dir(tmp_path)


def test_sweep_unknown_parameter(tmp_path):
    sim, model = fast_params(tmp_path / "s")
    with pytest.raises(ConfigError, match="gamma2"):
        run_sweep(sim, model, "gamma2", designs=[1])


def test_sweep_value_out_of_interval(tmp_path):
    sim, model = fast_params(tmp_path / "s")
    with pytest.raises(ConfigError, match="alpha"):
        run_sweep(sim, model, "alpha", designs=[1], values=[2.0])


def test_sweep_cells_and_isolation(tmp_path):
    sim, model = fast_params(tmp_path / "sweepA", seed=7)
    out = run_sweep(sim, model, "markup", designs=[1], values=[0.01, 0.12])
    cell = out / "markup_0.12_d1"
    assert (cell / "series_1_0.csv").is_file()
    first = (cell / "series_1_0.csv").read_bytes()

    sim_b, _ = fast_params(tmp_path / "sweepB", seed=7)
    out_b = run_sweep(sim_b, model, "markup", designs=[1], values=[0.12])
    second = (out_b / "markup_0.12_d1" / "series_1_0.csv").read_bytes()
    assert first == second


def test_sweep_varies_only_the_parameter(tmp_path):
    sim, model = fast_params(tmp_path / "s", seed=3)
    out = run_sweep(sim, model, "tax_consumption", designs=[1], values=[0.1, 0.2])
    meta_a = (out / "tax_consumption_0.1_d1" / "meta.txt").read_text()
    meta_b = (out / "tax_consumption_0.2_d1" / "meta.txt").read_text()
    diff = [
        (a, b) for a, b in zip(meta_a.splitlines(), meta_b.splitlines()) if a != b
    ]
    assert len(diff) == 2    # digest line + the tax line
    assert any("tax_consumption" in a for a, _ in diff)


def test_unwritable_output_dir_rejected(tmp_path):
    # a path through a regular file can never be created
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    sim, model = fast_params(blocker / "out")
    with pytest.raises((RuntimeError, OSError)):
        run_batch(sim, model, designs=[1], num_runs=1)


def test_float_serialization_nine_significant_digits(tmp_path):
    sim, model = fast_params(tmp_path / "a")
    out = run_batch(sim, model, designs=[1], num_runs=1)
    body = [line for line in (out / "series_1_0.csv").read_text().splitlines()
            if line and not line.startswith("#")][1:]
    for line in body:
        for cell in line.split(","):
            if "." in cell:
                digits = cell.replace("-", "").replace(".", "").lstrip("0")
                assert len(digits.split("e")[0]) <= 9


def test_cli_run_and_summarize(tmp_path, capsys):
    out = tmp_path / "cli"
    code = main([
        "run", "--seed", "4", "--out", str(out),
        "--set", "num_days=63", "--set", "num_agents=80",
        "--set", "num_families=30", "--set", "num_dwellings=40",
        "--set", "num_firms=10", "--quiet", "--dump-world", "--transactions",
    ])
    assert code == 0
    assert (out / "series_1_0.csv").is_file()
    assert (out / "meta.txt").is_file()
    assert (out / "world" / "agents.csv").is_file()
    assert (out / "transactions_1_0.csv").is_file()
    tx = read_csv(out / "transactions_1_0.csv")
    assert tx and {"buyer_id", "gross_value", "tax"} <= set(tx[0])


def test_cli_batch_and_sweep(tmp_path):
    out = tmp_path / "b"
    args = ["--seed", "4", "--out", str(out)] + \
        [x for pair in (("--set", o) for o in FAST) for x in pair] + ["--quiet"]
    assert main(["batch", "--runs", "2", "--designs", "1"] + args) == 0
    assert (out / "summary.csv").is_file()
    out2 = tmp_path / "s"
    args2 = ["--seed", "4", "--out", str(out2)] + \
        [x for pair in (("--set", o) for o in FAST) for x in pair] + ["--quiet"]
    assert main(["sweep", "--param", "markup", "--designs", "1",
                 "--values", "0.01"] + args2) == 0
    assert (out2 / "sweep_markup" / "markup_0.01_d1" / "series_1_0.csv").is_file()


def test_cli_error_paths(tmp_path, capsys):
    assert main(["run", "--set", "tax_consumption=1.5", "--out", str(tmp_path / "x")]) == 2
    err = capsys.readouterr().err
    assert "tax_consumption" in err
    assert main(["sweep", "--param", "nope", "--out", str(tmp_path / "y")]) == 2
    assert main(["batch", "--designs", "3", "--out", str(tmp_path / "z")]) == 2


def test_meta_contains_partition_and_rng(tmp_path):
    sim, model = fast_params(tmp_path / "m")
    (tmp_path / "m").mkdir(parents=True, exist_ok=True)
    write_meta(tmp_path / "m", sim, model, [1, 7])
    text = (tmp_path / "m" / "meta.txt").read_text()
    assert "pcg64" in text
    assert "partition design=7" in text
    assert "0: -10 0 0 10" in text
