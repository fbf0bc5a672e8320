import json

import pytest
from hypothesis import given, settings, strategies as st

from affdemazure.cartan import build_cartan
from affdemazure.charring import (AlgebraMismatch, Character, MixedLevels, from_terms, lift,
                                  monomial, pack, unit, unpack, zero)

A2 = build_cartan("A2^1")


def characters(cd, max_terms=5, bound=4):
    weight = st.tuples(*[st.integers(-bound, bound)] * cd.size)
    term = st.tuples(weight, st.integers(-3, 3))
    return st.lists(term, max_size=max_terms).map(lambda ts: from_terms(cd, ts))


@given(st.lists(st.integers(-2**20, 2**20), min_size=1, max_size=6))
def test_pack_round_trip(w):
    assert unpack(pack(w), len(w)) == tuple(w)


@settings(max_examples=60)
@given(characters(A2), characters(A2), characters(A2))
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * unit(A2) == x
    assert x - x == zero(A2)
    assert (x * zero(A2)) == zero(A2)


@settings(max_examples=30)
@given(characters(A2, max_terms=3, bound=2), st.integers(0, 3))
def test_power_matches_repeated_product(x, e):
    expected = unit(A2)
    for _ in range(e):
        expected = expected * x
    assert x ** e == expected


def test_monomial_arithmetic():
    a = monomial(A2, (1, 0, 0))
    b = monomial(A2, (0, -1, 2))
    assert (a * b).as_dict() == {(1, -1, 2): 1}
    assert a.shift((0, -1, 2)) == a * b
    assert (a + a).coefficient((1, 0, 0)) == 2
    assert (a - a).mass() == 0 and not (a - a)
    with pytest.raises(ValueError):
        a ** -1


def test_large_coefficients_are_exact():
    x = (monomial(A2, (1, 0, 0)) + monomial(A2, (0, 1, 0))) ** 60
    assert x.coefficient((30, 30, 0)) == 118264581564861424
    assert x.mass() == 2 ** 60


def test_levels():
    x = monomial(A2, (1, 0, 0)) + monomial(A2, (-1, 2, 0))
    assert x.level == 1
    with pytest.raises(MixedLevels):
        (x + monomial(A2, (2, 0, 0))).level
    assert zero(A2).level == 0


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        monomial(A2, (1, 0, 0)) + monomial(build_cartan("C2^1"), (1, 0, 0))
    with pytest.raises(ValueError):
        from_terms(A2, [((1, 0), 1)])


def test_twist_and_reflect():
    x = monomial(A2, (1, 2, 0)) + monomial(A2, (0, 0, 3)).scale(2)
    rot = (1, 2, 0)
    assert x.twist(rot).as_dict() == {(0, 1, 2): 1, (3, 0, 0): 2}
    assert x.twist(rot).twist(rot).twist(rot) == x
    with pytest.raises(ValueError):
        monomial(build_cartan("C2^1"), (1, 0, 0)).twist((1, 0, 2))
    assert x.reflect(1).reflect(1) == x
    assert monomial(A2, (0, 1, 0)).reflect(1).as_dict() == {(1, -1, 1): 1}


@settings(max_examples=40)
@given(characters(build_cartan("A2"), bound=3), st.integers(0, 3))
def test_lift_then_project(fin, level):
    up = lift(A2, fin, level)
    if fin:
        assert up.level == level
        got_level, back = up.project_to_finite()
        assert got_level == level and back == fin


def test_project_rejects_finite_and_mixed():
    with pytest.raises(ValueError):
        monomial(build_cartan("A2"), (1, 0)).project_to_finite()
    with pytest.raises(MixedLevels):
        (monomial(A2, (1, 0, 0)) + unit(A2)).project_to_finite()


def test_json_and_tsv_agree():
    x = monomial(A2, (1, 0, 0)) + monomial(A2, (-1, 1, 1)).scale(3)
    obj = json.loads(x.to_json())
    assert obj == {"algebra": "A2^1", "level": 1,
                   "terms": [{"weight": [0, 0], "mult": 1}, {"weight": [1, 1], "mult": 3}]}
    rows = x.to_tsv().splitlines()
    assert rows[0] == "weight\tmult"
    parsed = [(list(map(int, r.split("\t")[0].split(","))), int(r.split("\t")[1])) for r in rows[1:]]
    assert parsed == [(t["weight"], t["mult"]) for t in obj["terms"]]
    fin = monomial(build_cartan("B3"), (0, 1, 0))
    assert json.loads(fin.to_json())["level"] == 0


def test_equality_and_hash():
    a = from_terms(A2, {(1, 0, 0): 2, (0, 1, 0): 0})
    b = Character(A2, {pack((1, 0, 0)): 2})
    assert a == b and hash(a) == hash(b)
    assert len(a) == 1
    assert "A2^1" in repr(a)
