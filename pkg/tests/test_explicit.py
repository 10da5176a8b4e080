import pytest
from hypothesis import given
from hypothesis import strategies as st

from logizono.binvec import BinaryVector, Gate, bv_op
from logizono.errors import CapacityError, DimensionError
from logizono.explicit import (ExplicitSet, reach_explicit, set_minkowski,
                               set_not)
from logizono.model import parse_model


def eset(*texts):
    return ExplicitSet.from_strings(texts)


def test_xor_with_zero_identity():
    assert set_minkowski(eset("0"), eset("0", "1"), Gate.XOR).points == \
        eset("0", "1").points


def test_and_with_one_identity():
    assert set_minkowski(eset("0", "1"), eset("1"), Gate.AND).points == \
        eset("0", "1").points


def test_pairwise_image():
    got = set_minkowski(eset("01", "10"), eset("11"), Gate.XOR)
    assert got.points == eset("10", "01").points


def test_not_pointwise():
    assert set_not(eset("0", "1")).points == eset("1", "0").points
    assert set_not(eset("00")).points == eset("11").points


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        set_minkowski(eset("0"), eset("00"), Gate.XOR)


@st.composite
def small_sets(draw):
    n = draw(st.integers(1, 3))
    pts = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1,
                       max_size=1 << n))
    return ExplicitSet(n, frozenset(BinaryVector(n, b) for b in pts))


@given(small_sets(), small_sets())
def test_image_matches_reenumeration(a, b):
    if a.dim != b.dim:
        return
    for gate in Gate:
        got = set_minkowski(a, b, gate)
        want = {bv_op(x, y, gate) for x in a.points for y in b.points}
        assert got.points == frozenset(want)
        assert len(got) <= len(a) * len(b)


@given(small_sets())
def test_not_involution(s):
    assert set_not(set_not(s)).points == s.points


def test_reach_identity_model():
    model = parse_model({
        "vars": [{"name": "x", "role": "state", "dim": 2,
                  "init": ["00", "11"]}],
        "updates": {"x": "x"},
    })
    sets = reach_explicit(model, 4)
    for s in sets:
        assert s.points == eset("00", "11").points


def test_reach_period_two_flip():
    model = parse_model({
        "vars": [{"name": "x", "role": "state", "dim": 2, "init": ["00"]}],
        "updates": {"x": "!x"},
    })
    sets = reach_explicit(model, 2)
    assert sets[1].points == eset("11").points
    assert sets[2].points == eset("00").points


def test_reach_singletons_simulate_trajectory():
    model = parse_model({
        "vars": [{"name": "x", "role": "state", "dim": 1, "init": ["1"]},
                 {"name": "u", "role": "input", "dim": 1, "set": ["1"]}],
        "updates": {"x": "x ^ u"},
    })
    sets = reach_explicit(model, 3)
    assert [len(s) for s in sets] == [1, 1, 1, 1]
    assert sets[1].points == eset("0").points


def test_reach_point_cap():
    model = parse_model({
        "vars": [{"name": "x", "role": "state", "dim": 3,
                  "init": ["000"]},
                 {"name": "u", "role": "input", "dim": 3,
                  "set": ["000", "001", "010", "100", "111"]}],
        "updates": {"x": "x ^ u"},
    })
    with pytest.raises(CapacityError) as err:
        reach_explicit(model, 3, cap=2)
    assert err.value.step == 1
