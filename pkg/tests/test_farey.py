from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripq.errors import NoCylinder, NonConvergent, OutsideDomain, ParseError
from tripq.farey import (
    F0, F1, AdditiveSeq, MultiplicativeSeq, additive_from_multiplicative, additive_sequence, all_triples,
    farey_matrices, farey_partition, farey_triangle, gauss_step, multiplicative_from_additive,
    multiplicative_sequence, periodic_limit_farey, triple,
)
from tripq.lab import sample_point
from tripq.linalg import BASE, Point, cone_coordinates, lift, mat_vec, point, project, shoelace_area

triples = st.sampled_from(all_triples())


def test_triple_parsing():
    assert str(triple("(e,12,e)")) == "e,12,e"
    assert triple(["12", "13", "e"]) == triple("12", "13", "e")
    assert triple("e,12,e").label() == "(e,12,e)"
    with pytest.raises(ParseError):
        triple("e,12")
    with pytest.raises((KeyError, ValueError)):
        triple("e,21,e")


def test_all_triples_are_distinct_and_sorted():
    ts = all_triples()
    assert len(set(ts)) == 216
    assert sorted(ts) == ts


def test_depth_one_cells_of_the_base_map():
    (_, c0), (_, c1) = farey_partition("e,e,e", 1)
    assert set(c0.vertices) == {point(1, 0), point(1, 1), point("1/2", "1/2")}
    assert set(c1.vertices) == {point(0, 0), point(1, 0), point("1/2", "1/2")}
    assert BASE @ F0 == c0.matrix and BASE @ F1 == c1.matrix


def test_child_matrices_are_unimodular_for_every_triple():
    for t in all_triples():
        for m in farey_matrices(t):
            assert abs(m.det()) == 1 and m.inverse().is_integral


@given(triples, st.integers(0, 6))
@settings(max_examples=40, deadline=None)
def test_partition_tiles_the_triangle(t, depth):
    cells = farey_partition(t, depth)
    assert len(cells) == 2**depth
    assert sum(shoelace_area(*c.vertices) for _, c in cells) == Fraction(1, 2)


# oracle: float walk through numpy copies of the printed matrices (see tests notes)
GENERIC = [
    ("e,e,e", math.sqrt(0.5), 1 / math.pi, "01001111111011100010"),
    ("e,12,e", 0.8414709848, 0.3183098862, "01011111111111111111"),
    ("123,13,23", 0.9092974268, 0.6180339887, "10101001111111111101"),
    ("e,23,132", 0.5772156649, 0.2718281828, "11111011000001010101"),
    ("13,e,12", 0.7390851332, 0.5671432904, "11010111000000000000"),
]


@pytest.mark.parametrize("t,x,y,bits", GENERIC)
def test_additive_sequence_matches_float_oracle(t, x, y, bits):
    seq = additive_sequence(t, Point(Fraction(x), Fraction(y)), 20)
    assert str(seq) == bits and not seq.boundary_flag


@given(triples, st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_point_lies_in_every_cell_of_its_itinerary(t, seed):
    p = sample_point(seed, 0, 64)
    seq = additive_sequence(t, p, 30)
    for n in range(len(seq) + 1):
        c = cone_coordinates(farey_triangle(t, seq.bits[:n]).matrix, p)
        assert all(ci >= 0 for ci in c)
    assert additive_sequence(t, p, 10).bits == seq.bits[:10]


def test_points_on_an_edge_are_flagged():
    # x + y = 1 is the common edge of the two depth-1 cells; the walker takes bit 0
    seq = additive_sequence("e,e,e", point("9/10", "1/10"), 5)
    assert seq.bits == (0,) and seq.boundary_flag
    assert additive_sequence("e,e,e", point("9/10", "1/20"), 5).bits[0] == 1


def test_points_outside_are_rejected():
    with pytest.raises(OutsideDomain):
        additive_sequence("e,e,e", point("1/2", "3/4"), 3)


@given(st.sampled_from(["e,e,e", "e,12,12", "e,23,132", "13,123,e"]), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_gauss_step_inverts_the_cylinder_map(t, seed):
    p = sample_point(seed, 1, 128)
    k, q = gauss_step(t, p)
    f0, f1 = farey_matrices(triple(t))
    cylinder = BASE @ f1.power(k) @ f0
    # the branch of the map is the projective map BASE -> cylinder, inverted
    assert project(mat_vec(cylinder @ BASE.inverse(), lift(q))) == p


def test_gauss_step_examples():
    assert gauss_step("e,e,e", point("3/4", "1/2")) == (0, point("2/3", "1/3"))
    with pytest.raises(NoCylinder):
        gauss_step("e,e,e", Point(Fraction(1, 2), Fraction(1, 10**6) + Fraction(1, 10**9)), k_limit=10)


@given(triples, st.integers(0, 2**32))
@settings(max_examples=30, deadline=None)
def test_multiplicative_digits_expand_to_the_additive_prefix(t, seed):
    p = sample_point(seed, 2, 256)
    digits = multiplicative_sequence(t, p, 8)
    bits = additive_from_multiplicative(digits).bits
    assert additive_sequence(t, p, len(bits)).bits == bits


def _run_lengths(bits):
    # oracle: lengths of the runs of ones closed by a zero
    text = "".join(map(str, bits))
    return tuple(len(run) for run in text.split("0")[:-1])


@given(st.lists(st.integers(0, 1), max_size=60))
def test_bits_to_digits_matches_run_lengths(bits):
    m = multiplicative_from_additive(bits)
    assert m.digits == _run_lengths(bits)
    assert additive_from_multiplicative(m).bits == tuple(bits)


@given(st.lists(st.integers(0, 30), max_size=20))
def test_digits_round_trip(digits):
    assert multiplicative_from_additive(additive_from_multiplicative(digits)).digits == tuple(digits)


def test_worked_translation_examples():
    assert multiplicative_from_additive("10110") == MultiplicativeSeq((1, 2))
    assert multiplicative_from_additive("100110").digits == (1, 0, 2)
    assert MultiplicativeSeq((2, 3, 1)).partial_sums == (2, 5, 6)
    assert str(AdditiveSeq.parse("1 0,1")) == "101"
    with pytest.raises(ParseError):
        AdditiveSeq.parse("102")


def test_periodic_limit_of_the_base_map():
    res = periodic_limit_farey("e,e,e", [0])
    assert res.char_poly_text() == "x^3 - x^2 - 1"
    assert res.min_poly_degree == 3 and res.converges and not res.point_exact
    lo, hi = res.perron_interval
    assert hi - lo <= Fraction(1, 2**64)
    assert float(lo) == pytest.approx(1.4655712318767684, abs=1e-15)
    # oracle: numpy Perron vector of F0 pushed through BASE
    assert float(res.point.x) == pytest.approx(0.6823278038280192, abs=1e-12)
    assert float(res.point.y) == pytest.approx(0.4655712318767679, abs=1e-12)


@pytest.mark.parametrize("t,period,x,y", [
    ("e,e,e", "01", 0.771844506346038, 0.4196433776070805),
    ("e,23,132", "011", 0.6920214716300959, 0.44504186791262884),
])
def test_periodic_limits_match_numpy(t, period, x, y):
    res = periodic_limit_farey(t, period)
    assert float(res.point.x) == pytest.approx(x, abs=1e-12)
    assert float(res.point.y) == pytest.approx(y, abs=1e-12)
    assert res.residual < Fraction(1, 10**15)


def test_non_shrinking_period_reports_its_segment():
    with pytest.raises(NonConvergent) as info:
        periodic_limit_farey("e,12,e", [1])
    assert set(info.value.segment) == {point(0, 0), point(1, 0)}
    assert info.value.result.min_poly == (-1, 1)


def test_min_poly_divides_char_poly_for_short_periods():
    for w in itertools.chain.from_iterable(itertools.product((0, 1), repeat=n) for n in (1, 2)):
        res = periodic_limit_farey("e,13,132", w, raise_on_segment=False)
        assert 1 <= res.min_poly_degree <= 3
