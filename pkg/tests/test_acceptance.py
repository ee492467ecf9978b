"""The seventeen acceptance criteria, each timed against its limit."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from tripq import lab
from tripq._limits import poly_divmod
from tripq.barycentric import bary_matrices, bary_partition, bary_triangle, normalized_area, periodic_limit_bary
from tripq.classes import (
    ERRATA, PAPER_LISTS, classify_all, corrected_list, list_discrepancies, same_partition, status_counts,
    twin, twin_pairs,
)
from tripq.farey import (
    additive_from_multiplicative, all_triples, farey_matrices, farey_partition, multiplicative_from_additive,
    periodic_limit_farey, product, triple,
)
from tripq.linalg import IDENTITY, Point, point
from tripq.minkowski import DyadicSet, FareySet, classical_qmark, degenerate_phi, phi_eval

CORNERS = (point(0, 0), point(1, 0), point(1, 1))


def _cells(cells) -> list:
    return [set(c.vertices) for _, c in cells]


def _pts(*pairs) -> set:
    return {Point(Fraction(x), Fraction(y)) for x, y in pairs}


def test_01_farey_depth2_eee(criterion):
    with criterion(1, "depth-2 Farey vertices of (e,e,e)", 1):
        cells = _cells(farey_partition("e,e,e", 2))
        assert cells == [
            _pts((1, 1), ("1/2", "1/2"), ("2/3", "1/3")),
            _pts((1, 0), (1, 1), ("2/3", "1/3")),
            _pts((1, 0), ("1/2", "1/2"), ("1/3", "1/3")),
            _pts((0, 0), (1, 0), ("1/3", "1/3")),
        ]


def test_02_farey_depth2_12_13_e(criterion):
    with criterion(2, "depth-2 Farey vertices of (12,13,e)", 1):
        cells = _cells(farey_partition("12,13,e", 2))
        assert cells == [
            _pts(("1/2", "1/2"), (0, 0), (1, "1/2")),
            _pts((1, 1), (1, "1/2"), ("1/2", "1/2")),
            _pts(("2/3", "1/3"), (1, "1/2"), (1, 0)),
            _pts((0, 0), (1, 0), ("2/3", "1/3")),
        ]


def test_03_bary_depth2_eee(criterion):
    with criterion(3, "depth-2 barycentric vertices of (e,e,e)", 1):
        cells = bary_partition("e,e,e", 2)
        found = set().union(*(c.vertices for _, c in cells))
        assert found == _pts((0, 0), (1, 0), (1, 1), ("1/2", "1/2"), ("3/4", "1/4"), ("1/4", "1/4"))
        assert all(c.normalized_area == Fraction(1, 4) for _, c in cells)


def test_04_bary_halving(criterion):
    with criterion(4, "barycentric cells halve in area", 30):
        rng = random.Random(4)
        for t in rng.sample(all_triples(), 10):
            for _ in range(100):
                bits = [rng.randrange(2) for _ in range(rng.randint(0, 20))]
                assert normalized_area(bary_triangle(t, bits)) == Fraction(1, 2 ** len(bits))


def test_05_markov_property(criterion):
    with criterion(5, "G matrices and their products are column-stochastic", 30):
        rng = random.Random(5)
        for t in all_triples():
            pair = bary_matrices(t)
            for g in pair:
                assert g.column_sums() == (1, 1, 1)
            for _ in range(100):
                m = product(pair, [rng.randrange(2) for _ in range(10)], IDENTITY)
                assert m.column_sums() == (1, 1, 1)


def test_06_twin_law(criterion):
    with criterion(6, "twins give the same partition with labels swapped", 120):
        pairs = twin_pairs()
        assert len(pairs) == 108
        for t, u in pairs:
            assert twin(u) == t
            assert same_partition(t, u, 6, allow_label_swap=True)


def test_07_classification(criterion):
    with criterion(7, "15 classes, printed lists and status counts", 120):
        classes = classify_all()
        assert len(classes) == 15
        members = [m for c in classes for m in c.members]
        assert len(members) == 216 and set(members) == set(all_triples())
        assert [len(PAPER_LISTS[k]) for k in ("normality", "degenerate", "ergodic", "monkemeyer")] == [48, 24, 24, 24]
        # every printed entry agrees with the computed classes except the recorded misprints
        assert set(list_discrepancies(classes)) == set(ERRATA)
        by_rep = {str(c.representative): c.members for c in classes}
        assert set(corrected_list("normality")) == by_rep["e,e,e"] | by_rep["e,e,12"] | by_rep["e,12,12"]
        assert set(corrected_list("degenerate")) == by_rep["e,12,e"]
        assert set(corrected_list("monkemeyer")) == by_rep["e,23,132"]
        assert set(corrected_list("ergodic")) == by_rep["e,23,e"] | by_rep["e,13,23"]
        assert status_counts() == {"ProvenSingular": 96, "ConditionalOnErgodicity": 60, "Open": 60}


def test_08_classical_qmark(criterion):
    with criterion(8, "classical question mark on Farey points and monotonicity", 10):
        farey3, dyadic3 = FareySet(3), DyadicSet(3)
        assert [classical_qmark(x, 3) for x in farey3.elements] == list(dyadic3.elements)
        assert classical_qmark(Fraction(2, 5), 3) == Fraction(3, 8)
        assert classical_qmark(Fraction(3, 5), 3) == Fraction(5, 8)
        rng = random.Random(8)
        for _ in range(10**4):
            a, b = sorted(Fraction(rng.getrandbits(40), 2**40) for _ in range(2))
            assert classical_qmark(a, 20) <= classical_qmark(b, 20)


def test_09_translation(criterion):
    with criterion(9, "digits (2,3,1,0,2) and bits 1101110100110", 1):
        bits = additive_from_multiplicative((2, 3, 1, 0, 2))
        assert str(bits) == "1101110100110"
        assert multiplicative_from_additive(bits).digits == (2, 3, 1, 0, 2)


def test_10_cylinder_area_law(criterion):
    with criterion(10, "first-digit cylinder areas 1/((k+1)(k+2))", 10):
        for t in ("e,23,e", "e,13,e", "132,12,123", "13,23,123", "13,23,13"):
            table = lab.cylinder_areas(t, 10)
            assert table.law_holds, (t, table.first_discrepancy)
            assert table.areas == tuple(Fraction(1, (k + 1) * (k + 2)) for k in range(11))


def test_11_f1_power_forms(criterion):
    with criterion(11, "closed forms of F1^k and F1^k F0", 5):
        for t in lab.NORMALITY_TRIPLES:
            f0, f1 = farey_matrices(t)
            power = IDENTITY
            for k in range(51):
                assert lab.f1_power_form(t, k) == power
                assert lab.f1_power_form(t, k, times_f0=True) == power @ f0
                power = power @ f1


def test_12_tail_bound(criterion):
    with criterion(12, "tail-cylinder area bound 1/(c(k) xyz)", 60):
        rng = random.Random(12)
        for t in lab.NORMALITY_TRIPLES:
            wide_middle = str(t) in ("e,e,e", "e,e,12")
            for _ in range(100):
                a, b, c = sorted(Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in range(3))
                top = (a, b, c) if wide_middle else (b, a, c)
                for k in range(21):
                    for n in (1, 2, 3):
                        res = lab.tail_cylinder_area_bound(t, top, k, n)
                        assert res.c == k * n + (1 if str(t) in ("e,e,e", "e,12,e") else 2)
                        assert res.area >= res.bound


def test_13_convergence_survey(criterion):
    with criterion(13, "convergence survey for (e,e,23), (e,12,e), (e,e,e)", 60):
        always = lab.convergence_survey("e,e,23", 100, 60, seed=13)
        assert always.all_below(Fraction(1, 2**40))  # squared sides, so max side < 2^-20
        never = lab.convergence_survey("e,12,e", 100, 60, seed=13)
        assert never.min_diameter() >= 0.5
        forced = lab.convergence_survey("e,e,e", 20, 60, seed=13, forced_tail=1)
        assert all(s.tau_constant_on_tail and s.mu_halves_on_tail for s in forced.samples)


def test_14_bary_normal_bits(criterion):
    with criterion(14, "barycentric bits are balanced", 60):
        rep = lab.bary_bit_experiment("e,e,e", 200, 1000, seed=14)
        assert rep.failures == 0
        assert abs(rep.mean - 0.5) < 0.05


def test_15_sn_divergence_proxy(criterion):
    with criterion(15, "s_n/n grows for (e,e,e)", 120):
        cfg = lab.ExperimentConfig("e,e,e", 500, 80, 42, denominator_bits=256, checkpoints=(20, 40, 80))
        rep = lab.sn_experiment(cfg)
        medians = [rep.median(n) for n in (20, 40, 80)]
        assert medians[0] < medians[1] < medians[2]
        assert rep.fraction_below(1.5, 80) < 0.10


def _pencil_point(corner: int, a: Fraction, s: Fraction) -> Point:
    c = CORNERS[corner]
    q = (point(1, a), point(a, a), point(a, 0))[corner]
    return Point(c.x + s * (q.x - c.x), c.y + s * (q.y - c.y))


def test_16_degenerate_phi(criterion):
    with criterion(16, "Phi of degenerate maps matches the classical question mark", 60):
        members = corrected_list("degenerate")
        assert len(members) == 24
        for t in members:
            corner = lab.degenerate_detect(t)
            assert corner is not None
            for a in FareySet(8).elements:
                p = _pencil_point(corner, a, Fraction(1, 2))
                approx = phi_eval(t, p, 40)
                exact = degenerate_phi(t, p, 40)
                gap = (approx.image.x - exact.x) ** 2 + (approx.image.y - exact.y) ** 2
                assert gap <= approx.diameter_sq


def test_17_periodic_limits(criterion):
    with criterion(17, "periodic limits over all triples and periods up to length 3", 120):
        periods = [w for n in (1, 2, 3) for w in itertools.product((0, 1), repeat=n)]
        for t in all_triples():
            for w in periods:
                bary = periodic_limit_bary(t, w)
                if bary.is_point:
                    assert all(isinstance(v, Fraction) for v in bary.point)
                far = periodic_limit_farey(t, w, raise_on_segment=False)
                assert far.min_poly_degree <= 3
                _, rem = poly_divmod([Fraction(c) for c in far.char_poly], [Fraction(c) for c in far.min_poly])
                assert all(c == 0 for c in rem)
        assert periodic_limit_farey(triple("e,e,e"), [0]).char_poly_text() == "x^3 - x^2 - 1"
