from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tripq.classes import (
    ERRATA, LEMMA_FAMILIES, PAPER_LISTS, REPRESENTATIVES, check_orbit_stars, class_of, classify_all, conjugate,
    conjugates, corrected_list, list_discrepancies, orbits, same_partition, singularity_status, status_counts,
    twin, twin_pairs,
)
from tripq.farey import all_triples, triple
from tripq.linalg import PERM_NAMES

triples = st.sampled_from(all_triples())


@given(triples)
def test_twin_is_an_involution_without_fixed_points(t):
    assert twin(twin(t)) == t and twin(t) != t


def test_twin_examples():
    # (sigma (13), (12) tau1, (12) tau0) with the printed permutation matrices
    assert str(twin(triple("e,e,e"))) == "13,12,12"
    assert str(twin(triple("e,23,23"))) == "13,132,132"


@given(triples, st.sampled_from(PERM_NAMES))
def test_conjugation_is_a_group_action(t, rho):
    assert conjugate(t, "e") == t
    back = {"12": "12", "13": "13", "23": "23", "123": "132", "132": "123", "e": "e"}[rho]
    assert conjugate(conjugate(t, rho), back) == t


def test_conjugate_example():
    assert str(conjugate(triple("e,23,132"), "13")) == "13,132,23"
    assert len(conjugates(triple("e,e,e"))) == 6


@given(triples)
def test_classes_are_closed_under_twins_and_conjugates(t):
    c = class_of(t)
    assert twin(t) in c.members
    assert conjugates(t) <= c.members


def test_same_partition_examples():
    assert not same_partition(triple("e,e,e"), triple("e,e,12"), 3)
    assert same_partition(triple("e,12,e"), triple("e,123,13"), 6)
    for family in LEMMA_FAMILIES.values():
        first = triple(family[0])
        assert all(same_partition(first, triple(o), 5) for o in family[1:])
    with pytest.raises(ValueError):
        same_partition(triple("e,e,e"), triple("e,e,e"), 0)


def test_twin_pairs_cover_everything_once():
    pairs = twin_pairs()
    flat = [t for p in pairs for t in p]
    assert len(pairs) == 108 and len(set(flat)) == 216


def test_orbits_and_stars():
    sizes = sorted(len(o) for o in orbits())
    assert sizes == [6] * 6 + [12] * 15
    assert check_orbit_stars() == []


def test_classification_shape():
    classes = classify_all()
    assert [c.representative for c in classes] == list(REPRESENTATIVES)
    assert sorted(len(c) for c in classes) == [12] * 12 + [24] * 3
    assert {str(c.representative) for c in classes if len(c) == 24} == {"e,e,12", "e,12,e", "e,23,132"}
    assert all({"Twin", "Conjugate"} <= c.provenance for c in classes)
    assert "SamePartitionLemma2" in class_of(triple("e,123,e")).provenance


def test_printed_lists_differ_only_at_recorded_misprints():
    assert set(list_discrepancies()) == set(ERRATA)
    for (name, pos), fixed in ERRATA.items():
        assert PAPER_LISTS[name][pos] != fixed
        assert corrected_list(name)[pos] == fixed
    # a printed member of the ergodic list actually belongs to the (e,23,e) class
    assert str(class_of(triple("132,12,123")).representative) == "e,23,e"


def test_statuses():
    assert status_counts() == {"ProvenSingular": 96, "ConditionalOnErgodicity": 60, "Open": 60}
    assert str(singularity_status(triple("e,e,e"))) == "ProvenSingular(Normality)"
    assert str(singularity_status(triple("e,12,13"))) == "ProvenSingular(Degenerate)"
    assert str(singularity_status(triple("e,13,e"))) == "ConditionalOnErgodicity"
    assert str(singularity_status(triple("e,e,23"))) == "Open"


def test_class_json_is_sorted():
    data = classify_all()[0].to_json()
    assert data["representative"] == "e,e,e" and data["size"] == 12
    assert data["members"] == sorted(data["members"], key=lambda s: triple(s).sort_key())
