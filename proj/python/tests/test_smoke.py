import csv
import io
import math

import numpy as np
import pytest

import stackmc


def tiny_config():
    cfg = stackmc.preset("fig1")
    cfg["n_grid"] = [10, 20]
    cfg["trials"] = 20
    return cfg


def test_presets_listed_and_loadable():
    names = stackmc.preset_names()
    assert "fig1" in names and "fig6" in names
    for name in names:
        assert stackmc.preset(name)["name"]
        assert stackmc.preset_description(name)


def test_reference_mean_of_quadratic():
    assert stackmc.reference_mean(stackmc.preset("fig1")) == pytest.approx(0.52 / 3.0)


def test_run_returns_one_row_per_estimator_and_n():
    cfg = tiny_config()
    rows = stackmc.run(cfg, threads=1)
    names = stackmc.estimator_names(cfg)
    assert len(rows) == len(names) * 2
    assert {r["estimator"] for r in rows} == set(names)
    assert all(r["trials"] == 20 and r["mse"] >= 0 for r in rows)


def test_run_is_independent_of_threads():
    cfg = tiny_config()
    assert stackmc.run(cfg, threads=1) == stackmc.run(cfg, threads=3)


def test_csv_round_trips_exactly():
    rows = stackmc.run(tiny_config(), threads=1)
    text = stackmc.to_csv(rows)
    assert text.splitlines()[0] == "n,estimator,mse,stderr,trials"
    parsed = list(csv.DictReader(io.StringIO(text)))
    for r, p in zip(rows, parsed):
        assert float(p["mse"]) == r["mse"]
        assert float(p["stderr"]) == r["stderr"]


def test_bad_config_raises_config_error():
    cfg = tiny_config()
    cfg["trials"] = 0
    cfg["colour"] = "blue"
    with pytest.raises(stackmc.ConfigError, match="colour"):
        stackmc.run(cfg)
    with pytest.raises(ValueError):
        stackmc.normalize_config("{not json")


def test_estimate_on_numpy_data():
    rng = np.random.default_rng(3)
    x = rng.uniform(0.0, 1.0, size=(40, 1))
    f = (x[:, 0] - 0.2) ** 2
    p = stackmc.distribution("uniform_box", lo=0.0, hi=1.0, dim=1)
    r = stackmc.estimate(x, f, p, fitter="poly3", folds=5, seed=1, alpha="original")
    # The cubic fit is exact, so the stacked estimate is the exact integral.
    assert r["alpha"] == pytest.approx(1.0)
    assert r["estimate"] == pytest.approx(0.52 / 3.0, rel=1e-9)
    assert r["mc"] == pytest.approx(f.mean())


def test_fixed_alpha_zero_is_the_sample_mean():
    rng = np.random.default_rng(4)
    x = rng.uniform(-3.0, 3.0, size=(30, 2))
    f = np.exp(x[:, 0]) + x[:, 1]
    p = stackmc.distribution("uniform_box", lo=-3.0, hi=3.0, dim=2)
    r = stackmc.estimate(x, f, p, fitter="linear", folds=5, fixed_alpha=0.0)
    assert r["estimate"] == pytest.approx(f.mean(), rel=1e-13)


def test_paired_stderr_matches_numpy():
    a = [1.0, 3.0, 2.0, 5.0]
    b = [0.0, 3.0, 1.0, 6.0]
    d = np.subtract(a, b)
    assert stackmc.paired_stderr(a, b) == pytest.approx(d.std(ddof=1) / math.sqrt(len(d)))
