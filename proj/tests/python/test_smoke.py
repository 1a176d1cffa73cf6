import json

import pytest

import nullboot


def test_shifted_solution():
    report = nullboot.solve({"problem": "shifted", "max_order": 2})
    assert report["ok"]
    energies = report["solution"]["energies"]
    assert [e["coeffs_in_n"] for e in energies] == [["1/2", "1"], ["0"], ["1/2"]]
    assert report["solution"]["lower"][2] == []


def test_sextic_first_order_energy_matches_oracle():
    assert nullboot.energies("sextic", 1)[1] == ["15/8", "5", "15/4", "5/2"]
    assert nullboot.rs_energy("sextic", 1) == ["15/8", "5", "15/4", "5/2"]


def test_cubic_compare_and_verify():
    cmp = nullboot.compare(json.dumps({"problem": "cubic", "max_order": 2}))
    assert cmp["comparison"]["all_match"]
    assert nullboot.verify({"problem": "cubic", "max_order": 1})["ok"]


def test_rs_ladder_first_order_terms():
    ladders = nullboot.rs_ladder("sextic", 1)
    assert len(ladders["lower"]) == 12
    assert len(ladders["raiser"]) == 12


def test_metric_conjugation():
    assert nullboot.verify_v_conjugation("shifted", 4)
    assert nullboot.verify_v_conjugation("cubic", 3)


def test_latex_output():
    tex = nullboot.latex({"problem": "shifted", "max_order": 1})
    assert "\\frac{i}{\\sqrt{2}}" in tex


def test_errors_carry_codes():
    with pytest.raises(nullboot.EngineError) as info:
        nullboot.solve({"problem": "sextic", "max_order": -1})
    assert info.value.code == "ValidationError"
    with pytest.raises(nullboot.EngineError) as info:
        nullboot.rs_energy("octic", 1)
    assert "problem" in str(info.value)


def test_engine_failure_is_reported():
    report = nullboot.solve({"problem": "sextic", "max_order": 0, "K_schedule": [2]})
    assert not report["ok"]
    assert report["error"]["code"] == "BranchAmbiguity"
