import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from affdemazure.cartan import (AlgebraLabel, LabelError, build_cartan, finite_gcm, parse_label)

AFFINE = ["A1^1", "A2^1", "A3^1", "B3^1", "C2^1", "C3^1", "D4^1", "G2^1", "F4^1", "E6^1",
          "A2^2", "A3^2", "A4^2", "A5^2", "D3^2", "D4^2", "E6^2", "D4^3"]


def test_a1_affine_data():
    cd = build_cartan("A1^1")
    assert cd.gcm == ((2, -2), (-2, 2))
    assert cd.marks == (1, 1)
    assert cd.comarks == (1, 1)


def test_nu_ratios():
    assert build_cartan("B3").nu_ratios == (1, 1, 2)
    assert build_cartan("C3").nu_ratios == (2, 2, 1)
    assert build_cartan("G2^1").nu_ratios == (3, 1)
    assert build_cartan("A3").nu((0, 1, 0)) == (0, 1, 0)
    assert build_cartan("B3").nu((0, 0, 1)) == (0, 0, 2)
    assert build_cartan("C3").nu((1, 0, 0)) == (2, 0, 0)


def test_a2_twisted_marks():
    cd = build_cartan("A2^2")
    assert cd.marks == (2, 1)
    # delta - a_0 alpha_0 is alpha_1
    assert cd.marks[1:] == (1,)


@pytest.mark.parametrize("label", AFFINE)
def test_null_vectors(label):
    cd = build_cartan(label)
    n = cd.size
    assert all(sum(cd.gcm[i][j] * cd.marks[j] for j in range(n)) == 0 for i in range(n))
    assert all(sum(cd.comarks[i] * cd.gcm[i][j] for i in range(n)) == 0 for j in range(n))
    if cd.label.twist == 1:
        assert cd.marks[0] == cd.comarks[0] == 1


@pytest.mark.parametrize("label", AFFINE + ["A4", "B4", "C4", "D5", "E7", "E8", "F4", "G2"])
def test_gcm_shape(label):
    A = build_cartan(label).gcm
    for i, row in enumerate(A):
        assert row[i] == 2
        for j, x in enumerate(row):
            if i != j:
                assert x <= 0
                assert (x == 0) == (A[j][i] == 0)


def test_kac_table_values():
    assert build_cartan("F4^1").marks == (1, 2, 3, 4, 2)
    assert build_cartan("E6^2").marks == (1, 2, 3, 2, 1)
    assert build_cartan("E6^2").comarks == (1, 2, 3, 4, 2)
    assert build_cartan("D4^3").marks == (1, 2, 1)
    assert build_cartan("D4^3").comarks == (1, 2, 3)
    assert build_cartan("A4^2").marks == (2, 2, 1)


def test_pairing_and_embedding():
    cd = build_cartan("A1^1")
    assert cd.pairing(cd.fundamental(0), 0) == 1
    assert cd.pairing(cd.fundamental(0), 1) == 0
    assert cd.embed_finite((1,)) == (-1, 1)
    assert cd.pairing(cd.embed_finite((1,)), 0) == -1
    assert build_cartan("C2^1").embed_finite((0, 1)) == (-1, 0, 1)
    assert build_cartan("D4^1").embed_finite((0, 0, 0, 0)) == (0,) * 5
    with pytest.raises(IndexError):
        cd.pairing((1, 0), 2)


def test_reflect_examples():
    cd = build_cartan("A1^1")
    assert cd.reflect((0, 1), 1) == (2, -1)
    assert cd.reflect((1, 0), 0) == (-1, 2)
    assert cd.reflect((1, 0), 1) == (1, 0)


@pytest.mark.parametrize("label", ["A2^1", "C2^1", "G2^1", "A4^2", "D4^3"])
@given(data=st.data())
def test_reflect_involution_and_level(label, data):
    cd = build_cartan(label)
    lam = tuple(data.draw(st.lists(st.integers(-10, 10), min_size=cd.size, max_size=cd.size)))
    i = data.draw(st.integers(0, cd.size - 1))
    assert cd.reflect(cd.reflect(lam, i), i) == lam
    assert cd.level(cd.reflect(lam, i)) == cd.level(lam)
    assert (cd.reflect(lam, i) == lam) == (lam[i] == 0)


@given(st.lists(st.integers(-10, 10), min_size=3, max_size=3))
def test_embed_is_level_zero(lam):
    for label in ("C3^1", "B3^1", "A5^2", "D4^2"):
        cd = build_cartan(label)
        assert cd.level(cd.embed_finite(lam)) == 0


def test_special_vertices():
    assert build_cartan("A2^2").is_special_vertex(0)
    assert build_cartan("A3^2").is_special_vertex(1)
    assert not build_cartan("E6^2").is_special_vertex(2)
    assert [k for k in range(3) if build_cartan("D3^2").is_special_vertex(k)] == [0, 2]
    assert [k for k in range(5) if build_cartan("E6^2").is_special_vertex(k)] == [0]


@pytest.mark.parametrize("label", ["A3^1", "B3^1", "C3^1", "D4^1", "E6^1", "E7^1", "F4^1", "G2^1"])
def test_special_means_mark_one(label):
    cd = build_cartan(label)
    for k in range(cd.size):
        assert cd.is_special_vertex(k) == (cd.marks[k] == 1)


def test_special_vertices_match_automorphisms():
    # a node is special iff some diagram automorphism moves it to 0
    for label in ("A3^2", "D3^2", "D4^2", "A5^2", "E6^2", "D4^3", "A4^2"):
        cd = build_cartan(label)
        movable = {perm.index(0) for perm in cd.automorphisms}
        assert {k for k in range(cd.size) if cd.is_special_vertex(k)} == movable


@pytest.mark.parametrize("text", ["A0", "B1", "D2", "E9", "F5", "G3", "A1^2", "B3^2", "D5^3", "X2", "C2^4"])
def test_illegal_labels(text):
    with pytest.raises(LabelError):
        parse_label(text)


def test_label_round_trip():
    for text in ("A3", "C2^1", "A4^2", "D4^3"):
        assert str(parse_label(text)) == text
    assert parse_label("A4^(2)") == AlgebraLabel("A", 4, 2)


def test_finite_data():
    c2 = build_cartan("C2")
    assert finite_gcm("C", 2) == [[2, -2], [-1, 2]]
    assert c2.marks == (2, 1)
    assert len(c2.positive_roots) == 4
    assert len(build_cartan("E8").positive_roots) == 120
    assert build_cartan("B3").symmetrizer == (Fraction(1), Fraction(1), Fraction(1, 2))
    assert build_cartan("C2^1").finite is build_cartan("C2")


def test_minuscule():
    c2 = build_cartan("C2")
    assert c2.is_minuscule_coweight(2) and not c2.is_minuscule_coweight(1)
    assert c2.is_minuscule_weight(1) and not c2.is_minuscule_weight(2)
