"""Singularity diagnostics: degenerate maps, cylinder areas, closed forms for
runs of ones, tail-area bounds, the contraction of the sets with bounded
digit growth, digit-sum experiments and cell-shrinking surveys.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._walk import start_vector
from .barycentric import bary_matrices, normalized_area, side_lengths, _bary_walker
from .errors import BoundaryPoint, DepthCapExceeded, NoCylinder, PreconditionViolated, UnsupportedTriple
from .farey import (
    DEFAULT_K_LIMIT, PermTriple, additive_sequence, farey_matrices, farey_partition, _farey_walker, triple,
)
from .linalg import BASE, Mat3, Point, format_rational, vertices

CORNERS = (Point(Fraction(0), Fraction(0)), Point(Fraction(1), Fraction(0)), Point(Fraction(1), Fraction(1)))


def degenerate_detect(t: PermTriple):
    """Index (0, 1, 2) of the corner shared by every cell of depth 1 and 2, or None."""
    t = triple(t)
    cells = [c for d in (1, 2) for _, c in farey_partition(t, d)]
    for j, corner in enumerate(CORNERS):
        if all(corner in c.vertices for c in cells):
            return j
    return None


@dataclass(frozen=True)
class CylinderAreaTable:
    triple: PermTriple
    areas: tuple  # areas[k] = normalized area of the cylinder with first digit k

    def law(self, k: int) -> Fraction:
        return Fraction(1, (k + 1) * (k + 2))

    @property
    def law_holds(self) -> bool:
        return self.first_discrepancy is None

    @property
    def first_discrepancy(self):
        for k, a in enumerate(self.areas):
            if a != self.law(k):
                return k
        return None

    def partial_sums(self) -> tuple:
        out, acc = [], Fraction(0)
        for a in self.areas:
            acc += a
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "triple": str(self.triple),
            "areas": {str(k): format_rational(a) for k, a in enumerate(self.areas)},
            "law_holds": self.law_holds,
            "first_discrepancy": self.first_discrepancy,
        }


def cylinder_areas(t: PermTriple, k_max: int) -> CylinderAreaTable:
    """Exact areas of pi(BASE F1^k F0) for k = 0..k_max."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    f0, f1 = farey_matrices(triple(t))
    areas = []
    m = BASE
    for _ in range(k_max + 1):
        areas.append(normalized_area(m @ f0))
        m = m @ f1
    return CylinderAreaTable(triple(t), tuple(areas))


NORMALITY_TRIPLES = tuple(triple(s) for s in ("e,e,e", "e,e,12", "e,12,e", "e,12,12"))


def _require_normality(t: PermTriple) -> PermTriple:
    t = triple(t)
    if t not in NORMALITY_TRIPLES:
        raise UnsupportedTriple(f"closed forms exist only for {[str(x) for x in NORMALITY_TRIPLES]}")
    return t


def f1_power_form(t: PermTriple, k: int, times_f0: bool = False) -> Mat3:
    """Closed form of F1^k (or F1^k F0) for the four normality representatives."""
    t = _require_normality(t)
    if k < 0:
        raise ValueError("k must be non-negative")
    name = str(t)
    if name in ("e,e,e", "e,12,e"):
        if not times_f0:
            return Mat3(((1, 0, k), (0, 1, 0), (0, 0, 1)))
        if name == "e,e,e":
            return Mat3(((0, k, k + 1), (1, 0, 0), (0, 1, 1)))
        return Mat3(((k, 0, k + 1), (0, 1, 0), (1, 0, 1)))
    j, odd = divmod(k, 2)
    if not times_f0:
        if odd:
            return Mat3(((0, 1, j + 1), (1, 0, j), (0, 0, 1)))
        return Mat3(((1, 0, j), (0, 1, j), (0, 0, 1)))
    if name == "e,e,12":
        if odd:
            return Mat3(((1, j + 1, j + 1), (0, j, j + 1), (0, 1, 1)))
        return Mat3(((0, j, j + 1), (1, j, j), (0, 1, 1)))
    if odd:
        return Mat3(((j + 1, 1, j + 1), (j, 0, j + 1), (1, 0, 1)))
    return Mat3(((j, 0, j + 1), (j, 1, j), (1, 0, 1)))


def c_constant(t: PermTriple, k: int, N: int) -> int:
    """c(k) of the tail bound: kN+1 when F1 is a shear, kN+2 for the parity-split classes."""
    t = _require_normality(t)
    return k * N + (1 if str(t) in ("e,e,e", "e,12,e") else 2)


@dataclass(frozen=True)
class TailBound:
    area: Fraction  # exact normalized area of the part of T with digit >= kN
    bound: Fraction  # 1/(c(k) x y z)
    c: int

    @property
    def holds(self) -> bool:
        return self.area >= self.bound

    def to_json(self) -> dict:
        return {"area": format_rational(self.area), "bound": format_rational(self.bound), "c": self.c,
                "holds": self.holds}


def tail_cylinder_area_bound(t: PermTriple, top_row: Sequence, k: int, N: int) -> TailBound:
    """Area of T_k for a unimodular cell T with the given first row, and its lower bound.

    The first row must satisfy z >= y >= x for (e,e,e) and (e,e,12), and
    z >= x >= y for (e,12,e) and (e,12,12).
    """
    t = _require_normality(t)
    x, y, z = (Fraction(v) for v in top_row)
    if min(x, y, z) <= 0:
        raise PreconditionViolated("first-row entries must be positive")
    if str(t) in ("e,e,e", "e,e,12"):
        ordered = z >= y >= x
    else:
        ordered = z >= x >= y
    if not ordered:
        raise PreconditionViolated(f"first row {(x, y, z)} is not ordered as the recurrences require")
    if k < 0 or N < 1:
        raise PreconditionViolated("need k >= 0 and N >= 1")
    power = f1_power_form(t, k * N)
    row = [x * power[0, j] + y * power[1, j] + z * power[2, j] for j in range(3)]
    area = 1 / (row[0] * row[1] * row[2])
    c = c_constant(t, k, N)
    return TailBound(area, 1 / (c * x * y * z), c)


@dataclass(frozen=True)
class RecursionLevel:
    k: int
    cells: int
    area: Fraction  # normalized area of the set after k digit constraints
    removed: Fraction  # area of the discarded tails at this level
    ratio: Fraction | None
    bound: Fraction | None  # (c(k)-1)/c(k)

    @property
    def ok(self) -> bool:
        return self.bound is None or self.ratio is None or self.ratio <= self.bound

    def to_json(self) -> dict:
        return {
            "k": self.k, "cells": self.cells, "area": format_rational(self.area),
            "removed": format_rational(self.removed),
            "ratio": format_rational(self.ratio) if self.ratio is not None else None,
            "bound": format_rational(self.bound) if self.bound is not None else None,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class RecursionReport:
    triple: PermTriple
    N: int
    levels: tuple

    @property
    def ok(self) -> bool:
        return all(level.ok for level in self.levels)

    def to_json(self) -> dict:
        return {"triple": str(self.triple), "N": self.N, "ok": self.ok,
                "levels": [level.to_json() for level in self.levels]}


def measure_recursion_check(t: PermTriple, N: int, k_max: int, depth_cap: int = 64,
                            max_cells: int = 500_000) -> RecursionReport:
    """Build the cells whose i-th digit is below iN for i <= k, exactly, and track areas."""
    t = triple(t)
    if N < 1:
        raise PreconditionViolated("N must be at least 1")
    f0, f1 = farey_matrices(t)
    has_bound = t in NORMALITY_TRIPLES
    cells = [BASE]
    area = Fraction(1)
    levels = [RecursionLevel(0, 1, area, Fraction(0), None, None)]
    for k in range(1, k_max + 1):
        depth = N * k * (k + 1) // 2
        if depth > depth_cap:
            raise DepthCapExceeded(f"level {k} needs digit strings of length {depth} > cap {depth_cap}")
        if len(cells) * k * N > max_cells:
            raise DepthCapExceeded(f"level {k} needs {len(cells) * k * N} cells > cap {max_cells}")
        new_cells = []
        removed = Fraction(0)
        for m in cells:
            run = m
            for _ in range(k * N):
                new_cells.append(run @ f0)
                run = run @ f1
            removed += normalized_area(run)
        new_area = sum((normalized_area(c) for c in new_cells), Fraction(0))
        if new_area + removed != area:
            raise AssertionError("cylinder split does not preserve area")  # pragma: no cover
        bound = None
        if has_bound:
            c = c_constant(t, k, N)
            bound = Fraction(c - 1, c)
        levels.append(RecursionLevel(k, len(new_cells), new_area, removed, new_area / area, bound))
        cells, area = new_cells, new_area
    return RecursionReport(t, N, tuple(levels))


def product_divergence(a: int, N: int, c: int, k_max: int, checkpoints: Sequence[int] = ()) -> dict:
    """Partial sums of log(1 + 1/(a N k + c - 1)) for k = 2..K at the checkpoints."""
    checkpoints = sorted(set(checkpoints) | {k_max})
    out = {}
    total = 0.0
    want = iter(checkpoints)
    nxt = next(want)
    for k in range(2, k_max + 1):
        total += math.log1p(1 / (a * N * k + c - 1))
        while k == nxt:
            out[k] = total
            nxt = next(want, None)
    return out


# random points


def sample_point(seed: int, index: int, bits: int) -> Point:
    """Uniform rational point of denominator 2^bits with 1 > x > y > 0, by rejection."""
    rng = np.random.default_rng([seed & (2**64 - 1), index])
    words = (bits + 31) // 32
    scale = 2**bits
    while True:
        raw = rng.integers(0, 2**32, size=2 * words, dtype=np.uint64)
        vals = []
        for part in (raw[:words], raw[words:]):
            v = 0
            for w in part:
                v = (v << 32) | int(w)
            vals.append(v >> (32 * words - bits))
        x, y = vals
        if scale > x > y > 0:
            return Point(Fraction(x, scale), Fraction(y, scale))


@dataclass(frozen=True)
class ExperimentConfig:
    triple: PermTriple
    samples: int
    n: int
    seed: int
    denominator_bits: int = 53
    checkpoints: tuple = ()
    threshold: float = 1.5
    k_limit: int = DEFAULT_K_LIMIT
    step_budget: int = 10**4  # most Gauss steps a single sample may take
    map: str = "gauss"  # "gauss" or the barycentric control "tent"

    def __post_init__(self):
        object.__setattr__(self, "triple", triple(self.triple))
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        cps = tuple(sorted(set(self.checkpoints) | {self.n})) if self.n else ()
        if any(c < 1 or c > self.n for c in cps):
            raise ValueError("checkpoints must lie in 1..n")
        object.__setattr__(self, "checkpoints", cps)
        if self.map not in ("gauss", "tent"):
            raise ValueError("map is 'gauss' or 'tent'")

    def to_json(self) -> dict:
        d = asdict(self)
        d["triple"] = str(self.triple)
        d["checkpoints"] = list(self.checkpoints)
        return d


@dataclass(frozen=True)
class SampleRecord:
    index: int
    point: Point
    sums: tuple  # s_n at each checkpoint reached
    status: str  # ok | boundary | nocylinder | budget
    digits_done: int


def _run_sample(cfg: ExperimentConfig, index: int) -> SampleRecord:
    p = sample_point(cfg.seed, index, cfg.denominator_bits)
    walker = _farey_walker(cfg.triple) if cfg.map == "gauss" else _bary_walker(cfg.triple)
    w = start_vector(p)
    total = 0
    sums = []
    cps = set(cfg.checkpoints)
    status = "ok"
    done = 0
    limit = min(cfg.n, cfg.step_budget)
    for i in range(limit):
        try:
            k, w = walker.multiplicative_step(w, cfg.k_limit, i)
        except BoundaryPoint:
            status = "boundary"
            break
        except NoCylinder:
            status = "nocylinder"
            break
        total += k
        done = i + 1
        if done in cps:
            sums.append(total)
    if status == "ok" and done < cfg.n:
        status = "budget"
    return SampleRecord(index, p, tuple(sums), status, done)


def _run_chunk(args) -> list:
    cfg, indices = args
    return [_run_sample(cfg, i) for i in indices]


@dataclass(frozen=True)
class SnReport:
    config: ExperimentConfig
    records: tuple

    @property
    def completed(self) -> tuple:
        return tuple(r for r in self.records if r.status == "ok")

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if r.status != "ok")

    def failure_counts(self) -> dict:
        out = {}
        for r in self.records:
            if r.status != "ok":
                out[r.status] = out.get(r.status, 0) + 1
        return out

    def ratios(self, n: int | None = None) -> np.ndarray:
        """s_n/n over completed samples at checkpoint n (default: the last)."""
        n = self.config.n if n is None else n
        j = self.config.checkpoints.index(n)
        return np.array([r.sums[j] / n for r in self.completed], dtype=float)

    def quantiles(self, n: int | None = None, qs=(0.1, 0.25, 0.5, 0.75, 0.9)) -> dict:
        vals = self.ratios(n)
        if len(vals) == 0:
            return {q: float("nan") for q in qs}
        return {q: float(np.quantile(vals, q)) for q in qs}

    def median(self, n: int | None = None) -> float:
        return self.quantiles(n, (0.5,))[0.5]

    def fraction_below(self, threshold: float | None = None, n: int | None = None) -> float:
        threshold = self.config.threshold if threshold is None else threshold
        vals = self.ratios(n)
        if len(vals) == 0:
            return float("nan")
        return float(np.mean(vals <= threshold))

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "completed": len(self.completed),
            "failures": self.failures,
            "failure_counts": self.failure_counts(),
            "summary": {str(n): {"quantiles": {str(q): v for q, v in self.quantiles(n).items()},
                                 "fraction_below": self.fraction_below(None, n)}
                        for n in self.config.checkpoints},
            "samples": [{"sample": r.index, "point": r.point.to_json(), "status": r.status,
                         "digits_done": r.digits_done, "s_n": list(r.sums)} for r in self.records],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(self.config.to_json(), sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["sample", "n", "s_n", "s_n_over_n", "status"])
        for r in self.records:
            for j, n in enumerate(self.config.checkpoints):
                if j < len(r.sums):
                    writer.writerow([r.index, n, r.sums[j], repr(r.sums[j] / n), "ok"])
                else:
                    writer.writerow([r.index, n, "", "", r.status])
        return buf.getvalue()


def sn_experiment(cfg: ExperimentConfig, workers: int = 1) -> SnReport:
    """Digit sums s_n of random points; identical output for any worker count."""
    indices = list(range(cfg.samples))
    if workers <= 1:
        records = [_run_sample(cfg, i) for i in indices]
    else:
        chunks = [(cfg, indices[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
        records.sort(key=lambda r: r.index)
    return SnReport(cfg, tuple(records))


@dataclass(frozen=True)
class BitReport:
    triple: PermTriple
    n_bits: int
    proportions: tuple  # share of ones per completed sample
    failures: int

    @property
    def mean(self) -> float:
        return float(np.mean(self.proportions)) if self.proportions else float("nan")

    def to_json(self) -> dict:
        return {"triple": str(self.triple), "n_bits": self.n_bits, "mean": self.mean,
                "completed": len(self.proportions), "failures": self.failures}


def bary_bit_experiment(t: PermTriple, samples: int, n_bits: int, seed: int,
                        denominator_bits: int = 53) -> BitReport:
    """Proportion of ones in barycentric itineraries of random points."""
    t = triple(t)
    walker = _bary_walker(t)
    props = []
    failures = 0
    for i in range(samples):
        p = sample_point(seed, i, denominator_bits)
        bits, hit = walker.additive(p, n_bits)
        if hit or len(bits) < n_bits:
            failures += 1
            continue
        props.append(sum(bits) / n_bits)
    return BitReport(t, n_bits, tuple(props), failures)


# shrinking of barycentric cells


@dataclass(frozen=True)
class SurveySample:
    index: int
    bits: tuple
    max_side_sq: tuple  # at each checkpoint
    min_side_sq: tuple
    min_diameter_sq: Fraction  # smallest longest side over all depths
    tau_constant_on_tail: bool | None
    mu_halves_on_tail: bool | None
    status: str


@dataclass(frozen=True)
class SurveyReport:
    triple: PermTriple
    depth: int
    checkpoints: tuple
    forced_tail: int | None
    samples: tuple
    category: str

    def final_max_side(self) -> float:
        return max(math.sqrt(s.max_side_sq[-1]) for s in self.samples if s.status == "ok")

    def min_diameter(self) -> float:
        return min(math.sqrt(s.min_diameter_sq) for s in self.samples if s.status == "ok")

    def all_below(self, bound_sq: Fraction) -> bool:
        return all(s.status == "ok" and s.max_side_sq[-1] < bound_sq for s in self.samples)

    def to_json(self) -> dict:
        return {
            "triple": str(self.triple), "depth": self.depth, "checkpoints": list(self.checkpoints),
            "forced_tail": self.forced_tail, "category": self.category,
            "samples": [{
                "sample": s.index, "status": s.status,
                "max_side": [math.sqrt(v) for v in s.max_side_sq],
                "min_side": [math.sqrt(v) for v in s.min_side_sq],
                "min_diameter": math.sqrt(s.min_diameter_sq),
                "tau_constant_on_tail": s.tau_constant_on_tail,
                "mu_halves_on_tail": s.mu_halves_on_tail,
            } for s in self.samples],
        }


def convergence_survey(t: PermTriple, samples: int, depth: int, seed: int,
                       checkpoints: Sequence[int] = (), forced_tail: int | None = None,
                       denominator_bits: int = 256) -> SurveyReport:
    """Follow Gamma cells along itineraries and record side lengths.

    Without ``forced_tail`` the itinerary is the Farey itinerary of a random
    point. With it, a random half-length prefix is followed by the forced bit.
    """
    from .minkowski import convergence_category  # local: minkowski imports this module

    t = triple(t)
    cps = tuple(sorted(set(checkpoints) | {depth}))
    g = bary_matrices(t)
    out = []
    for i in range(samples):
        if forced_tail is None:
            p = sample_point(seed, i, denominator_bits)
            seq = additive_sequence(t, p, depth)
            bits = seq.bits
            status = "ok" if len(bits) == depth and not seq.boundary_flag else "boundary"
            tail_start = None
        else:
            rng = np.random.default_rng([seed & (2**64 - 1), i])
            prefix = tuple(int(b) for b in rng.integers(0, 2, size=depth // 2))
            bits = prefix + (forced_tail,) * (depth - len(prefix))
            status = "ok"
            tail_start = len(prefix)
        m = BASE
        maxes, mins = [], []
        min_diam = None
        taus, mus = [], []
        for n, b in enumerate(bits, start=1):
            m = m @ g[b]
            s = side_lengths(_Cell(vertices(m)))
            diam = s.max_sq
            min_diam = diam if min_diam is None else min(min_diam, diam)
            taus.append(s.tau_sq)
            mus.append(s.mu_sq)
            if n in cps:
                maxes.append(s.max_sq)
                mins.append(s.min_sq)
        tau_const = mu_half = None
        if tail_start is not None and tail_start < len(bits):
            tail_taus = taus[tail_start:]
            tail_mus = mus[tail_start:]
            tau_const = all(v == tail_taus[0] for v in tail_taus)
            mu_half = all(b == a / 4 for a, b in zip(tail_mus, tail_mus[1:]))
        out.append(SurveySample(i, tuple(bits), tuple(maxes), tuple(mins),
                                min_diam if min_diam is not None else Fraction(0), tau_const, mu_half, status))
    return SurveyReport(t, depth, cps, forced_tail, tuple(out), convergence_category(t))


@dataclass(frozen=True)
class _Cell:
    vertices: tuple


__all__ = [
    "degenerate_detect", "cylinder_areas", "CylinderAreaTable", "f1_power_form", "c_constant",
    "tail_cylinder_area_bound", "TailBound", "measure_recursion_check", "RecursionReport",
    "product_divergence", "sample_point", "ExperimentConfig", "SnReport", "sn_experiment",
    "bary_bit_experiment", "BitReport", "convergence_survey", "SurveyReport", "NORMALITY_TRIPLES",
]
