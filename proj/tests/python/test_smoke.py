"""Smoke tests for the pybind11 surface."""

import math

import pytest

import addbench


def test_add_and_offsetsum():
    assert addbench.add("555555", "123456") == "679011"
    assert addbench.add("999", "1") == "1000"
    assert addbench.add("0", "0") == "0"
    assert addbench.offsetsum("555555", "123456", -2) == "12901155"
    assert addbench.offsetsum("555555", "123456", 1) == "5679006"
    with pytest.raises(ValueError):
        addbench.offsetsum("1", "2", 0)


def test_column_profile():
    assert addbench.column_sums("199", "199") == [18, 19, 3]
    assert addbench.close_carry_positions("10", "19") == [0]
    assert addbench.count_close_carries("10", "10") == 0
    assert addbench.count_close_carries("10", "19") == 1


def test_prompt_and_suite():
    assert addbench.render_prompt("2", "3") == "What is 2 + 3? Write just the answer."
    suite = addbench.gen_suite(7, d_min=3, d_max=5, per_length=4)
    assert len(suite) == 12
    assert all(len(p["a"]) == p["d"] for p in suite)
    assert suite == addbench.gen_suite(7, d_min=3, d_max=5, per_length=4)


def test_grading_rules():
    assert addbench.strip_format("1,234") == "1234"
    assert addbench.levenshtein("5678", "1234") == 4
    truth_pair = ("1230", "4")  # sums to 1234
    assert addbench.grade("Maybe the answer is 1234, but really it is 9999.", *truth_pair)["correct"]
    graded = addbench.grade("9991234000", *truth_pair)
    assert not graded["correct"]
    assert graded["extracted"] == "9991234000"
    assert not addbench.grade("1 234", *truth_pair)["correct"]


def test_classification():
    assert addbench.classify("39", "10", "19")["kind"] == "close_carry"
    assert addbench.classify("20", "11", "19")["kind"] == "close_carry"
    assert addbench.classify("21", "10", "10")["kind"] == "other"
    mis = addbench.classify("5679006", "555555", "123456")
    assert mis["kind"] == "misalignment"
    assert mis["offset"] == 1
    fe = addbench.classify("39", "10", "19")["first_error"]
    assert fe == {"position": 0, "delta": 1, "next_column_sum": 9}


def test_simulator():
    assert addbench.simulate("10", "19", {"p_close": 1.0}, seed=1) == "39"
    assert addbench.simulate("123", "456", {}, seed=5) == "579"
    out1 = addbench.simulate("95", "17", {"p_close": 0.4}, seed=9)
    out2 = addbench.simulate("95", "17", {"p_close": 0.4}, seed=9)
    assert out1 == out2
    acc = addbench.expected_accuracy("10", "19", {"p_close": 0.5})
    assert acc == pytest.approx(0.5)


def test_stats_helpers():
    assert addbench.token_groups(7) == [3, 3, 1]
    assert addbench.moving_average([1.0] * 20, 10) == [1.0] * 20
    signal = [1.0 if d % 3 == 0 else 0.0 for d in range(30)]
    spec = addbench.dft_spectrum(signal)
    peak = max(range(1, len(spec["magnitudes"])), key=lambda k: spec["magnitudes"][k])
    assert spec["frequencies"][peak] == pytest.approx(1 / 3)
    assert math.fsum(m * m for m in spec["magnitudes"]) == pytest.approx(1.0)
