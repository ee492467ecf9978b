"""Equivalences among the 216 maps: twins, conjugation, shared partitions,
and the resulting 15 classes with their singularity status.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ClassificationMismatch
from .farey import PermTriple, all_triples, farey_matrices, triple
from .linalg import BASE, PERM_NAMES, compose, perm_inverse, vertices

TWIN = "Twin"
CONJUGATE = "Conjugate"
LEMMA_RULES = ("SamePartitionLemma1", "SamePartitionLemma2", "SamePartitionLemma3")

# families whose members produce the same partition of the triangle
LEMMA_FAMILIES = {
    "SamePartitionLemma1": ("e,23,23", "e,23,132", "e,132,23", "e,132,132"),
    "SamePartitionLemma2": ("e,12,e", "e,123,e", "e,12,13", "e,123,13"),
    "SamePartitionLemma3": ("e,e,12", "e,e,123", "e,13,12", "e,13,123"),
}

REPRESENTATIVES = tuple(triple(s) for s in (
    "e,e,e", "e,e,12", "e,e,13", "e,e,23", "e,e,132",
    "e,12,e", "e,12,12", "e,12,23", "e,12,132", "e,13,e",
    "e,13,23", "e,13,132", "e,23,e", "e,23,132", "e,123,132",
))

# the 21 orbit representatives before the lemma merges; True marks 6-element orbits
ORBIT_REPRESENTATIVES = {
    "e,e,e": False, "e,e,12": False, "e,e,13": False, "e,e,23": False, "e,e,123": True,
    "e,e,132": False, "e,12,e": False, "e,12,12": False, "e,12,13": True, "e,12,23": False,
    "e,12,132": False, "e,13,e": False, "e,13,12": True, "e,13,23": False, "e,13,132": False,
    "e,23,e": False, "e,23,23": True, "e,23,132": False, "e,123,e": True, "e,123,132": False,
    "e,132,132": True,
}

PROVEN_SINGULAR = "ProvenSingular"
CONDITIONAL = "ConditionalOnErgodicity"
OPEN = "Open"

STATUS_BY_REPRESENTATIVE = {
    "e,e,e": (PROVEN_SINGULAR, "Normality"),
    "e,e,12": (PROVEN_SINGULAR, "Normality"),
    "e,12,12": (PROVEN_SINGULAR, "Normality"),
    "e,12,e": (PROVEN_SINGULAR, "Degenerate"),
    "e,23,132": (PROVEN_SINGULAR, "Monkemeyer"),
    "e,13,e": (CONDITIONAL, None),
    "e,13,23": (CONDITIONAL, None),
    "e,13,132": (CONDITIONAL, None),
    "e,23,e": (CONDITIONAL, None),
    "e,123,132": (CONDITIONAL, None),
    "e,e,13": (OPEN, None),
    "e,e,23": (OPEN, None),
    "e,e,132": (OPEN, None),
    "e,12,23": (OPEN, None),
    "e,12,132": (OPEN, None),
}


def _parse_list(text: str) -> tuple:
    out = []
    for chunk in text.split("("):
        if ")" in chunk:
            out.append(triple(chunk.split(")")[0]))
    return tuple(out)


# membership lists as printed, in printed order
PAPER_LISTS = {
    "normality": _parse_list("""
        (e,e,e) (12,12,12) (13,13,13) (23,23,23) (123,132,132) (132,123,123)
        (13,12,12) (123,e,e) (e,123,123) (132,132,132) (12,23,23) (13,13,13)
        (e,e,12) (12,12,e) (13,13,123) (23,23,132) (123,132,23) (132,123,13)
        (13,e,12) (123,12,e) (e,13,123) (132,23,132) (12,132,23) (13,123,13)
        (e,e,123) (12,12,23) (13,13,12) (23,23,13) (123,132,e) (132,123,132)
        (e,13,12) (12,132,12) (13,e,123) (23,123,132) (123,12,23) (132,23,13)
        (e,12,12) (12,e,e) (13,123,123) (23,132,132) (123,23,23) (132,13,13)
        (13,e,e) (123,12,12) (e,13,13) (132,23,23) (12,132,132) (13,123,123)"""),
    "degenerate": _parse_list("""
        (e,12,e) (e,12,13) (e,123,e) (e,123,13)
        (13,12,e) (13,12,13) (13,123,e) (13,123,13)
        (12,e,12) (12,e,132) (12,23,12) (12,23,132)
        (123,e,12) (123,e,132) (123,23,12) (123,23,132)
        (23,13,23) (23,13,123) (23,132,23) (23,132,123)
        (132,13,23) (132,13,123) (132,132,23) (132,132,123)"""),
    "ergodic": _parse_list("""
        (e,23,e) (12,123,12) (13,132,13) (23,e,23) (123,13,132) (132,12,123)
        (13,12,132) (123,e,13) (e,123,23) (132,132,12) (12,23,123) (23,13,e)
        (e,13,23) (12,123,132) (13,e,123) (23,132,e) (123,12,13) (132,23,12)
        (13,132,123) (123,13,23) (e,23,12) (132,12,13) (12,123,e) (23,e,132)"""),
    "monkemeyer": _parse_list("""
        (e,23,23) (e,23,132) (e,132,23) (e,132,132)
        (13,23,23) (13,23,132) (13,132,23) (13,132,132)
        (12,13,13) (12,13,123) (12,123,13) (12,123,123)
        (123,13,13) (123,13,123) (123,123,13) (123,123,123)
        (23,e,e) (23,e,12) (23,12,e) (23,12,12)
        (132,e,e) (132,e,12) (132,12,e) (132,12,12)"""),
}

# which classes each printed list is meant to cover
LIST_CLASSES = {
    "normality": ("e,e,e", "e,e,12", "e,12,12"),
    "degenerate": ("e,12,e",),
    "ergodic": ("e,23,e", "e,13,23"),
    "monkemeyer": ("e,23,132",),
}

# printed entries that duplicate another entry or fall outside the class;
# (list, position) -> replacement that completes the class
ERRATA = {
    ("normality", 11): triple("23,13,13"),
    ("normality", 23): triple("23,123,13"),
    ("normality", 31): triple("12,132,e"),
    ("normality", 47): triple("23,123,123"),
    ("ergodic", 13): triple("12,132,123"),
    ("ergodic", 14): triple("13,e,132"),
    ("ergodic", 15): triple("23,123,e"),
}


def corrected_list(name: str) -> tuple:
    return tuple(ERRATA.get((name, i), t) for i, t in enumerate(PAPER_LISTS[name]))


def twin(t: PermTriple) -> PermTriple:
    """(sigma (13), (12) tau1, (12) tau0): same partition with 0 and 1 swapped."""
    t = triple(t)
    return PermTriple(compose(t.sigma, "13").name, compose("12", t.tau1).name,
                      compose("12", t.tau0).name)


def conjugate(t: PermTriple, rho) -> PermTriple:
    """(rho sigma, tau0 rho^-1, tau1 rho^-1)."""
    t = triple(t)
    inv = perm_inverse(rho)
    return PermTriple(compose(rho, t.sigma).name, compose(t.tau0, inv).name, compose(t.tau1, inv).name)


def conjugates(t: PermTriple) -> frozenset:
    return frozenset(conjugate(t, rho) for rho in PERM_NAMES)


def _cells_by_level(t: PermTriple, depth: int) -> list:
    pair = farey_matrices(triple(t))
    level = [((), BASE)]
    out = []
    for _ in range(depth):
        level = [(w + (i,), m @ pair[i]) for w, m in level for i in (0, 1)]
        out.append({w: frozenset(vertices(m)) for w, m in level})
    return out


def same_partition(a: PermTriple, b: PermTriple, depth: int, allow_label_swap: bool = False) -> bool:
    """Do a and b cut the triangle into the same cells at every level up to depth?

    Without label swap the cells of each level are compared as unordered sets
    of unordered vertex sets. With label swap the cell a(w) must equal the
    cell b(w') where w' is w with 0 and 1 exchanged.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    la, lb = _cells_by_level(a, depth), _cells_by_level(b, depth)
    for ca, cb in zip(la, lb):
        if allow_label_swap:
            if any(cells != cb[tuple(1 - i for i in w)] for w, cells in ca.items()):
                return False
        elif set(ca.values()) != set(cb.values()):
            return False
    return True


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class TripleClass:
    representative: PermTriple
    members: frozenset
    provenance: frozenset

    @property
    def status(self) -> "SingularityStatus":
        kind, method = STATUS_BY_REPRESENTATIVE[str(self.representative)]
        return SingularityStatus(kind, method)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "representative": str(self.representative),
            "members": [str(m) for m in sorted(self.members)],
            "size": len(self.members),
            "provenance": sorted(self.provenance),
            "status": str(self.status),
        }


def _edges(verify_depth: int):
    for t in all_triples():
        yield t, twin(t), TWIN
        for c in conjugates(t):
            yield t, c, CONJUGATE
    for rule, family in LEMMA_FAMILIES.items():
        first = triple(family[0])
        for other in family[1:]:
            other = triple(other)
            if not same_partition(first, other, verify_depth):
                raise ClassificationMismatch(f"{rule}: {first} and {other} differ by depth {verify_depth}")
            yield first, other, rule


def orbits() -> list:
    """Orbits of the 216 triples under twins and conjugation alone."""
    uf = _UnionFind(all_triples())
    for t in all_triples():
        uf.union(t, twin(t))
        for c in conjugates(t):
            uf.union(t, c)
    groups = {}
    for t in all_triples():
        groups.setdefault(uf.find(t), set()).add(t)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g).sort_key())


def check_orbit_stars() -> list:
    """Differences between computed orbit sizes and the printed stars (empty when they agree)."""
    problems = []
    found = {}
    for orbit in orbits():
        reps = [r for r in ORBIT_REPRESENTATIVES if triple(r) in orbit]
        if len(reps) != 1:
            problems.append(f"orbit of {min(orbit)} holds printed representatives {reps}")
            continue
        found[reps[0]] = len(orbit)
    for rep, starred in ORBIT_REPRESENTATIVES.items():
        size = found.get(rep)
        if size is not None and size != (6 if starred else 12):
            problems.append(f"{rep}: orbit size {size} but starred={starred}")
    return problems


@lru_cache(maxsize=4)
def classify_all(verify_depth: int = 6) -> tuple:
    """The 15 classes, ordered by representative."""
    triples = all_triples()
    uf = _UnionFind(triples)
    edges = list(_edges(verify_depth))
    for a, b, _ in edges:
        uf.union(a, b)
    groups = {}
    for t in triples:
        groups.setdefault(uf.find(t), set()).add(t)
    rules = {}
    for a, b, rule in edges:
        if a != b:
            rules.setdefault(uf.find(a), set()).add(rule)
    classes = []
    for root, members in groups.items():
        reps = [r for r in REPRESENTATIVES if r in members]
        if len(reps) != 1:
            raise ClassificationMismatch(f"class of {min(members)} holds representatives {[str(r) for r in reps]}")
        classes.append(TripleClass(reps[0], frozenset(members), frozenset(rules.get(root, ()))))
    if len(classes) != 15:
        raise ClassificationMismatch(f"expected 15 classes, found {len(classes)}")
    classes.sort(key=lambda c: c.representative.sort_key())
    _check_lists(classes)
    return tuple(classes)


def _check_lists(classes) -> None:
    by_rep = {str(c.representative): c for c in classes}
    for name, reps in LIST_CLASSES.items():
        expected = frozenset().union(*(by_rep[r].members for r in reps))
        for (lname, pos), fixed in ERRATA.items():
            if lname == name and PAPER_LISTS[name][pos] == fixed:
                raise ClassificationMismatch(f"erratum {name}[{pos}] no longer differs from the print")
        listed = corrected_list(name)
        if len(set(listed)) != len(listed) or set(listed) != expected:
            extra = sorted(set(listed) - expected)
            missing = sorted(expected - set(listed))
            raise ClassificationMismatch(f"{name} list: extra {extra}, missing {missing}")


def list_discrepancies(classes=None) -> dict:
    """Printed entries that are duplicates or lie outside the intended classes."""
    classes = classes or classify_all()
    by_rep = {str(c.representative): c for c in classes}
    out = {}
    for name, reps in LIST_CLASSES.items():
        expected = frozenset().union(*(by_rep[r].members for r in reps))
        seen = set()
        for i, t in enumerate(PAPER_LISTS[name]):
            if t not in expected or t in seen:
                out[(name, i)] = t
            seen.add(t)
    return out


def class_of(t: PermTriple) -> TripleClass:
    t = triple(t)
    for c in classify_all():
        if t in c.members:
            return c
    raise KeyError(str(t))  # pragma: no cover


@dataclass(frozen=True)
class SingularityStatus:
    kind: str
    method: str | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.method})" if self.method else self.kind


def singularity_status(t: PermTriple) -> SingularityStatus:
    return class_of(t).status


def status_counts() -> dict:
    counts = {PROVEN_SINGULAR: 0, CONDITIONAL: 0, OPEN: 0}
    for c in classify_all():
        counts[c.status.kind] += len(c.members)
    return counts


def twin_pairs() -> list:
    pairs = []
    for t in all_triples():
        u = twin(t)
        if t < u:
            pairs.append((t, u))
    return pairs


__all__ = [
    "TripleClass", "SingularityStatus", "twin", "conjugate", "conjugates", "same_partition",
    "classify_all", "class_of", "singularity_status", "status_counts", "orbits", "twin_pairs",
    "PAPER_LISTS", "ERRATA", "REPRESENTATIVES", "LEMMA_FAMILIES", "list_discrepancies",
    "check_orbit_stars", "corrected_list",
]
