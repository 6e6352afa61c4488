import json
from fractions import Fraction

import pytest

from qcoinv.coact import tau
from qcoinv.qalgebra import QuantumMatrix
from qcoinv.fft import (
    CeilingExceeded,
    ExperimentParams,
    classical_baseline,
    classical_trace,
    verify,
    verify_conjugation,
    verify_interior,
    verify_slr,
    weighted_partitions,
)


def _even(rep):
    return {r["source_degree"]: r for r in rep.degrees if r["section"] == "even"}


def _section(rep, name):
    return {r["d"]: r for r in rep.degrees if r["section"] == name}


@pytest.fixture(scope="module")
def interior_221():
    return verify_interior(ExperimentParams("interior", (2, 2, 1), 3))


def test_params_validation():
    with pytest.raises(ValueError):
        ExperimentParams("interior", (2, 2, 3), 2)
    with pytest.raises(ValueError):
        ExperimentParams("slr", (3, 3), 2)
    with pytest.raises(ValueError):
        ExperimentParams("conjugation", (2,), -1)
    with pytest.raises(ValueError):
        ExperimentParams("conjugation", (2,), 2, lambdas=(0,))
    with pytest.raises(ValueError):
        verify_slr(ExperimentParams("conjugation", (2,), 1))


def test_interior_examples(interior_221):
    rep = interior_221
    assert rep.verdict
    ev = _even(rep)
    assert (ev[1]["dim_kernel"], ev[1]["dim_image"], ev[1]["dim_coinv"]) == (0, 4, 4)
    assert (ev[2]["dim_kernel"], ev[2]["dim_ideal"]) == (1, 1)
    assert [ev[d]["dim_coinv"] for d in range(4)] == [1, 4, 9, 16]
    odd = _section(rep, "odd")
    assert sorted(odd) == [1, 3, 5]
    assert all(r["dim_coinv"] == 0 for r in odd.values())


def test_interior_full_square_has_no_kernel():
    rep = verify_interior(ExperimentParams("interior", (2, 2, 2), 2))
    assert rep.verdict
    assert all(r["dim_kernel"] == 0 and r["dim_ideal"] == 0 for r in _even(rep).values())


def test_interior_full_domain_agrees(interior_221):
    rep = verify_interior(ExperimentParams("interior", (2, 2, 1), 2, full_domain=True))
    assert rep.verdict
    for d, r in _even(rep).items():
        assert r["dim_coinv"] == _even(interior_221)[d]["dim_coinv"]


def test_slr_examples():
    rep = verify_slr(ExperimentParams("slr", (3, 2), 4))
    assert rep.verdict
    co = _section(rep, "coinvariants")
    assert [co[d]["dim_coinv"] for d in range(5)] == [1, 0, 3, 0, 6]
    rel = _section(rep, "relations")
    assert rel[1]["dim_kernel"] == 0


def test_slr_plucker():
    rep = verify_slr(ExperimentParams("slr", (4, 2), 4))
    assert rep.verdict
    rel = _section(rep, "relations")
    assert rel[2]["dim_kernel"] == rel[2]["dim_words"] - rel[2]["dim_image"]
    assert rel[3]["dim_kernel"] == rel[3]["dim_ideal"]
    assert any(c["name"] == "plucker_in_q1_kernel" and c["pass"] for c in rep.checks)


def test_conjugation_examples():
    rep = verify_conjugation(ExperimentParams("conjugation", (2,), 4))
    assert rep.verdict
    co = _section(rep, "coinvariants")
    assert co[1]["dim_coinv"] == 1
    assert co[4]["dim_coinv"] == 3 == co[4]["dim_partitions"]
    names = {c["name"] for c in rep.checks}
    assert {"beta_fixes_tau_1", "beta_fixes_tau_2", "tau_1_tau_2_commute"} <= names


def test_weighted_partitions():
    assert [weighted_partitions(d, 2) for d in range(7)] == [1, 1, 2, 2, 3, 3, 4]
    assert weighted_partitions(4, 3) == 4
    assert weighted_partitions(0, 1) == 1


def test_classical_trace_matches_tau():
    for n in (2, 3):
        A = QuantumMatrix(n, n, qvalue=Fraction(1))
        for i in range(1, n + 1):
            assert tau(n, i, A) == classical_trace(n, i)


def test_baseline_dimensions_match():
    p = ExperimentParams("interior", (2, 2, 1), 2)
    base = classical_baseline(p)
    assert base.verdict
    assert base.dimension_table() == verify(p).dimension_table()
    conj = classical_baseline(ExperimentParams("conjugation", (2,), 3))
    assert conj.verdict
    assert any(c["name"] == "tau_2_is_classical_trace" for c in conj.checks)


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        verify(ExperimentParams("interior", (3, 3, 2), 3, ceiling=50))
    with pytest.raises(CeilingExceeded):
        verify(ExperimentParams("conjugation", (3,), 4, ceiling=10))


def test_report_deterministic_and_schema(monkeypatch):
    monkeypatch.delenv("QCOINV_TIMINGS", raising=False)
    p = ExperimentParams("conjugation", (2,), 3, lambdas=(Fraction(3, 2),))
    a, b = verify(p).dumps(), verify(p).dumps()
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"experiment", "params", "degrees", "checks", "verdict", "wall_ms"}
    assert doc["verdict"] == "pass" and doc["wall_ms"] is None
    assert doc["params"]["lambda"] == ["3/2"]
    for r in doc["degrees"]:
        assert {"d", "pass"} <= set(r)
        pts = {pt["point"] for e in r["exactness"] for pt in e["points"]}
        assert pts == {"generic", "q=1", "q=3/2"}


def test_timings_opt_in(monkeypatch):
    monkeypatch.setenv("QCOINV_TIMINGS", "1")
    rep = verify(ExperimentParams("conjugation", (2,), 1))
    assert isinstance(rep.wall_ms, int)


def test_markdown():
    rep = verify(ExperimentParams("interior", (2, 2, 1), 1))
    md = rep.markdown()
    assert md.startswith("# interior")
    assert "| section | d |" in md
    assert "verdict: **pass**" in md


def test_corrupted_run_fails():
    rep = verify(ExperimentParams("conjugation", (2,), 2, corrupt=frozenset(["flip-cross"])))
    assert not rep.verdict
