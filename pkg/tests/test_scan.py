from __future__ import annotations

import json
import os

import pytest

from crsym.scan import (
    ScanConfig, emit_exceptions, random_symbol, reverify_exception, run_genericity_scan, run_trial, trial_rng,
)
from crsym.symbol import CRSymbolData, signature, validate


def cfg(**kw):
    base = dict(m=3, r=1, signature=(3, 0), trials=12, seed=5)
    base.update(kw)
    return ScanConfig(**base)


def test_trial_streams_are_independent_and_reproducible():
    a = trial_rng(1, 0).integers(0, 10 ** 9, size=4).tolist()
    assert a == trial_rng(1, 0).integers(0, 10 ** 9, size=4).tolist()
    assert a != trial_rng(1, 1).integers(0, 10 ** 9, size=4).tolist()
    assert a != trial_rng(2, 0).integers(0, 10 ** 9, size=4).tolist()


@pytest.mark.parametrize("mode,sig,r", [("dense", (3, 0), 1), ("dense", (1, 2), 2), ("diagonal", (2, 1), 1)])
def test_random_symbols_are_valid(mode, sig, r):
    c = cfg(signature=sig, mode=mode, r=r)
    for i in range(20):
        s = random_symbol(c, i)
        assert validate(s) == []
        assert signature(s.H) == sig
        assert random_symbol(c, i) == s


def test_report_is_deterministic():
    assert run_genericity_scan(cfg()).dumps() == run_genericity_scan(cfg()).dumps()


def test_workers_do_not_change_the_report():
    c = cfg(trials=8, mode="diagonal")
    assert run_genericity_scan(c, workers=2).dumps() == run_genericity_scan(c, workers=1).dumps()


def test_zero_trials():
    rep = run_genericity_scan(cfg(trials=0))
    assert rep.total == 0 and rep.exceptions == [] and rep.A_minimal == 0


def test_config_problems():
    assert cfg().problems() == []
    assert cfg(signature=(2, 0)).problems()
    assert cfg(trials=-1).problems()
    assert cfg(mode="other").problems()
    assert cfg(r=7).problems()
    assert cfg(numerator_bound=0).problems()
    with pytest.raises(ValueError):
        run_genericity_scan(cfg(signature=(1, 1)))


def test_counts_match_trials():
    c = cfg(trials=10, mode="diagonal")
    rep = run_genericity_scan(c)
    trials = [run_trial(c, i) for i in range(10)]
    assert rep.A_minimal == sum(t["dimA"] == 1 for t in trials)
    assert rep.recoverable == sum(t["recoverable"] for t in trials)
    assert rep.obstruction_applicable == sum(t["obstruction_applicable"] for t in trials)
    assert rep.obstructed <= rep.obstruction_applicable


def test_small_m_produces_exceptions_and_they_reverify(tmp_path):
    c = ScanConfig(m=2, r=1, signature=(1, 1), trials=30, seed=3, numerator_bound=1)
    rep = run_genericity_scan(c)
    assert rep.exceptions
    paths = emit_exceptions(rep, str(tmp_path / "out"))
    assert len(paths) == len(rep.exceptions)
    for path, e in zip(paths, rep.exceptions):
        assert os.path.basename(path) == f"trial_{e['trial']:06d}.json"
        with open(path, encoding="utf-8") as fh:
            s = CRSymbolData.from_json(json.load(fh))
        assert s.to_json() == e["symbol"]
        again = reverify_exception(e)
        assert again["dimA"] == e["dimA"]
        assert ("regular" in e["flags"]) == again["regular"]
        assert ("not_recoverable" in e["flags"]) == (not again["recoverable"])


def test_report_json_is_sorted():
    text = run_genericity_scan(cfg(trials=2)).dumps()
    data = json.loads(text)
    assert json.dumps(data, sort_keys=True, indent=2) == text
    assert data["config"]["signature"] == [3, 0]


# -- genericity examples at the default seed -----------------------------------

def test_dense_rank_one_m2_is_recoverable():
    rep = run_genericity_scan(ScanConfig(m=2, r=1, signature=(2, 0), trials=100))
    assert rep.recoverable >= 99


def test_m3_nonregular():
    rep = run_genericity_scan(ScanConfig(m=3, r=1, signature=(3, 0), trials=100))
    assert rep.nonregular >= 99


def test_diagonal_definite_A_minimal():
    """Equal moduli among bounded Gaussian integers are frequent enough to breach the threshold."""
    rep = run_genericity_scan(ScanConfig(m=3, r=1, signature=(3, 0), trials=100, mode="diagonal"))
    for e in rep.exceptions:
        if "A_not_minimal" in e["flags"]:
            mods = [CRSymbolData.from_json(e["symbol"]).C[0][k, k].modulus_squared() for k in range(3)]
            assert len(set(mods)) < 3
    assert rep.A_minimal >= 99
