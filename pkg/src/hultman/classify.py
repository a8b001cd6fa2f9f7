"""Five-way classification of Hultman elements and the exhaustive
verification, minimal-pattern, and witness-table harnesses.

The five conditions are computed by independent code paths; their
agreement is the content of the theorem being verified, so a disagreement
is report material, never silently reconciled.

Condition numbering (CLI `--conditions`):
  1 chambers          c(w) = s(w)
  2 distance          l_D(u,w) = l_T(u,w) for all u <= w
  3 pseudo_inclusions defined by (pseudo-)inclusions
  4 relaxed_hull      (relaxed) right hull condition
  5 bp_avoidance      BP avoidance of the 31 listed patterns (type A: the
                      four classical patterns)
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import arrangements, bruhat, diagrams, patterns
from .bruhat import BruhatGraph, bruhat_graph, coessential_boxes, group_rank_grids
from .diagrams import CoessBox, HullBudgetExceeded
from .groups import (
    Element,
    GroupContext,
    Window,
    absolute_length,
    compose_windows,
    context,
    coxeter_length,
    invert_window,
    parse_element,
)

CONDITION_NAMES = {
    1: "chambers",
    2: "distance",
    3: "pseudo_inclusions",
    4: "relaxed_hull",
    5: "bp_avoidance",
}
ALL_CONDITIONS = (1, 2, 3, 4, 5)


@lru_cache(maxsize=None)
def group_absolute_lengths(ctx: GroupContext) -> dict[Window, int]:
    return {e.window: absolute_length(e) for e in ctx.elements}


@dataclass
class ClassificationReport:
    element: Element
    conditions: dict[str, bool | None] = field(default_factory=dict)
    c: int | None = None
    s: int | None = None
    distance_witness: tuple[Element, int, int] | None = None  # (u, l_D, l_T)
    violations: tuple[CoessBox, ...] = ()
    hull_counterexample: Window | None = None
    matched_pattern: tuple[Element, patterns.ParabolicEmbedding] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def computed(self) -> list[bool]:
        return [v for v in self.conditions.values() if v is not None]

    @property
    def consistent(self) -> bool:
        return len(set(self.computed)) <= 1

    @property
    def is_hultman(self) -> bool | None:
        vals = self.computed
        if not vals or not self.consistent:
            return None
        return vals[0]

    def to_json_dict(self) -> dict:
        witness = self.distance_witness
        return {
            "element": str(self.element),
            "family": self.element.ctx.family,
            "rank": self.element.ctx.rank,
            "conditions": dict(self.conditions),
            "c": self.c,
            "s": self.s,
            "witnesses": (
                [{"u": str(witness[0]), "lD": witness[1], "lT": witness[2]}]
                if witness
                else []
            ),
            "violations": [
                {"p": b.p, "q": b.q, "r": b.r} for b in self.violations
            ],
            "matched_pattern": (
                {
                    "pattern": str(self.matched_pattern[0]),
                    "family": self.matched_pattern[0].ctx.family,
                    "rank": self.matched_pattern[0].ctx.rank,
                    "indices": list(self.matched_pattern[1].indices),
                }
                if self.matched_pattern
                else None
            ),
        }


def _distance_condition(
    w: Element, graph: BruhatGraph
) -> tuple[bool, tuple[Element, int, int] | None]:
    """Hultman distance condition with a minimal-length witness on failure."""
    dist = bruhat.directed_distances_to(graph, graph.index[w.window])
    winv = invert_window(w.window)
    grids = group_rank_grids(w.ctx)
    boxes = coessential_boxes(w.window)
    abslens = group_absolute_lengths(w.ctx)
    for i, u in enumerate(graph.elements):
        grid = grids[u.window]
        if not all(grid[p - 1][q - 1] <= r for p, q, r in boxes):
            continue
        lt = abslens[compose_windows(winv, u.window)]
        if dist[i] != lt:
            return False, (u, int(dist[i]), lt)
    return True, None


def _hull_condition(
    w: Element,
    node_budget: int,
    samples: int | None,
    rng: random.Random,
) -> tuple[bool | None, Window | None, str | None]:
    """Returns (value, counterexample, note); value None means inconclusive
    (sampled run without a counterexample, or budget exhausted)."""
    if samples is not None:
        verdict = diagrams.sampled_relaxed_right_hull(w, samples, rng)
        if verdict is False:
            return False, None, None
        return None, None, f"sampled {samples} hull windows, no counterexample"
    try:
        if w.ctx.family == "A":
            cex = diagrams.right_hull_counterexample(w, node_budget)
        else:
            cex = diagrams.hull_relaxed_counterexample(w, node_budget)
    except HullBudgetExceeded:
        return None, None, f"hull enumeration exceeded {node_budget} nodes"
    return cex is None, cex, None


def _pattern_condition(
    w: Element,
) -> tuple[bool, tuple[Element, patterns.ParabolicEmbedding] | None]:
    if w.ctx.family == "B":
        return patterns.avoids_condition5_list(w)
    for v in patterns.condition5_patterns():
        if v.ctx.family != "A":
            continue
        emb = patterns.bp_contains(w, v)
        if emb is not None:
            return False, (v, emb)
    return True, None


def classify(
    w: Element,
    conditions: tuple[int, ...] = ALL_CONDITIONS,
    *,
    graph: BruhatGraph | None = None,
    hull_node_budget: int = diagrams.DEFAULT_NODE_BUDGET,
    hull_samples: int | None = None,
    rng: random.Random | None = None,
    chamber_cache: dict[Window, int] | None = None,
) -> ClassificationReport:
    """Evaluate the requested conditions independently and cross-check."""
    rng = rng or random.Random(0)
    report = ClassificationReport(w)
    for num in conditions:
        name = CONDITION_NAMES[num]
        if num == 1:
            if chamber_cache is not None and w.window in chamber_cache:
                report.c = chamber_cache[w.window]
            else:
                report.c = arrangements.chamber_count(w)
                if chamber_cache is not None:
                    # c(w) = c(w^{-1}): the inverse arrangement is the
                    # image of this one under w
                    chamber_cache[w.window] = report.c
                    chamber_cache[invert_window(w.window)] = report.c
            report.s = bruhat.interval_size(w)
            report.conditions[name] = report.c == report.s
        elif num == 2:
            g = graph or bruhat_graph(w.ctx)
            ok, witness = _distance_condition(w, g)
            report.conditions[name] = ok
            report.distance_witness = witness
        elif num == 3:
            report.violations = diagrams.violated_boxes(w)
            if w.ctx.family == "A":
                report.conditions[name] = not report.violations
            else:
                report.conditions[name] = diagrams.is_defined_by_pseudo_inclusions(w)
        elif num == 4:
            value, cex, note = _hull_condition(
                w, hull_node_budget, hull_samples, rng
            )
            report.conditions[name] = value
            report.hull_counterexample = cex
            if note:
                report.notes.append(note)
        elif num == 5:
            ok, matched = _pattern_condition(w)
            report.conditions[name] = ok
            report.matched_pattern = matched
        else:
            raise ValueError(f"unknown condition {num}")
    return report


@dataclass
class VerificationSummary:
    ctx: GroupContext
    conditions: tuple[int, ...]
    total: int = 0
    hultman_count: int = 0
    disagreements: list[ClassificationReport] = field(default_factory=list)
    hull_inconclusive: int = 0
    reports: list[ClassificationReport] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json_dict(self) -> dict:
        return {
            "family": self.ctx.family,
            "rank": self.ctx.rank,
            "conditions": [CONDITION_NAMES[c] for c in self.conditions],
            "total": self.total,
            "hultman_count": self.hultman_count,
            "hull_inconclusive": self.hull_inconclusive,
            "disagreements": [r.to_json_dict() for r in self.disagreements],
            "elements": [r.to_json_dict() for r in self.reports],
        }


def verify_equivalence(
    ctx: GroupContext,
    conditions: tuple[int, ...] = ALL_CONDITIONS,
    *,
    hull_node_budget: int = diagrams.DEFAULT_NODE_BUDGET,
    hull_samples: int | None = None,
    seed: int = 0,
    keep_reports: bool = False,
) -> VerificationSummary:
    """Classify every group element and check that all computed conditions
    agree.  Inconclusive hull results (None) are excluded from the
    agreement check and tallied separately."""
    start = time.perf_counter()
    rng = random.Random(seed)
    graph = bruhat_graph(ctx) if 2 in conditions else None
    summary = VerificationSummary(ctx, tuple(conditions))

    chamber_cache: dict[Window, int] = {}
    for w in ctx.elements:
        report = classify(
            w,
            conditions,
            graph=graph,
            hull_node_budget=hull_node_budget,
            hull_samples=hull_samples,
            rng=rng,
            chamber_cache=chamber_cache,
        )
        summary.total += 1
        if report.conditions.get("relaxed_hull", False) is None:
            summary.hull_inconclusive += 1
        if not report.consistent:
            summary.disagreements.append(report)
        elif report.is_hultman:
            summary.hultman_count += 1
        if keep_reports:
            summary.reports.append(report)
    summary.elapsed = time.perf_counter() - start
    return summary


def find_minimal_non_hultman(
    max_a: int = 6, max_b: int = 5
) -> tuple[Element, ...]:
    """BP-containment-minimal elements not defined by (pseudo-)inclusions,
    over S_4..S_{max_a} and B_3..B_{max_b}.

    Groups are scanned small-to-large so any earlier-found pattern that a
    candidate BP contains disqualifies it; within one group the only
    containments are an element and its diagram flip, which are mutual,
    so same-group patterns never disqualify each other.
    """
    contexts = [context("A", m) for m in range(4, max_a + 1)]
    contexts += [context("B", m) for m in range(3, max_b + 1)]
    minimal: list[Element] = []
    for ctx in contexts:
        for w in ctx.elements:
            if ctx.family == "A":
                if diagrams.is_defined_by_inclusions(w):
                    continue
            elif diagrams.is_defined_by_pseudo_inclusions(w):
                continue
            dominated = any(
                v.ctx != ctx and patterns.bp_contains(w, v) is not None
                for v in minimal
            )
            if not dominated:
                minimal.append(w)
    return tuple(minimal)


# Reference distance-witness data for the 31 minimal non-Hultman patterns,
# as previously reported: (family, rank, w, u, l_D, l_T).  Recomputation
# treats the w column as binding and flags rows whose distances are
# parity-inconsistent with l(w) - l(u).
REFERENCE_WITNESS_ROWS: tuple[tuple[str, int, str, str, int, int], ...] = (
    ("A", 4, "4231", "2143", 4, 2),
    ("A", 5, "35142", "12435", 5, 3),
    ("A", 5, "42513", "13245", 5, 3),
    ("A", 6, "351624", "423156", 6, 4),
    ("A", 6, "351624", "126543", 6, 4),
    ("B", 3, "426153", "132546", 4, 2),
    ("B", 3, "536142", "142536", 4, 2),
    ("B", 3, "563412", "124356", 4, 2),
    ("B", 3, "462513", "135246", 4, 2),
    ("B", 3, "635241", "153426", 4, 2),
    ("B", 3, "635241", "241635", 4, 2),
    ("B", 3, "642531", "315264", 4, 2),
    ("B", 3, "642531", "153426", 4, 2),
    ("B", 3, "645231", "154326", 4, 2),
    ("B", 3, "645231", "351624", 4, 2),
    ("B", 3, "623451", "132546", 4, 2),
    ("B", 3, "624351", "135246", 4, 2),
    ("B", 3, "624351", "142536", 4, 2),
    ("B", 3, "653421", "214365", 4, 2),
    ("B", 4, "35172846", "12436578", 5, 3),
    ("B", 4, "46172835", "12536478", 5, 3),
    ("B", 4, "57163824", "14627358", 5, 3),
    ("B", 4, "57163824", "12654378", 5, 3),
    ("B", 4, "47163825", "13527468", 5, 3),
    ("B", 4, "47163825", "12645378", 5, 3),
    ("B", 4, "52618374", "14236758", 5, 3),
    ("B", 4, "52618374", "13254768", 5, 3),
    ("B", 4, "47618325", "13254768", 5, 3),
    ("B", 4, "42681375", "13427568", 5, 3),
    ("B", 4, "42681375", "13254768", 5, 3),
    ("B", 4, "42618375", "13245768", 5, 3),
    ("B", 4, "37154826", "12536478", 5, 3),
    ("B", 4, "37154826", "12463578", 5, 3),
    ("B", 4, "37145826", "12436578", 5, 3),
    ("B", 4, "37581426", "14627358", 5, 3),
    ("B", 4, "37581426", "12654378", 5, 3),
    ("B", 4, "37518426", "12645378", 5, 3),
    ("B", 4, "37518426", "14263758", 5, 3),
    ("B", 4, "35718246", "12463578", 5, 3),
    ("B", 4, "46718235", "12354678", 5, 3),
    ("B", 5, "3617294a58", "124365879a", 6, 4),
    ("B", 5, "3617294a58", "125347869a", 6, 4),
    ("B", 5, "3517924a68", "124365879a", 6, 4),
    ("B", 5, "3517924a68", "124538679a", 6, 4),
    ("B", 5, "3517294a68", "124356879a", 6, 4),
)


@dataclass(frozen=True)
class RowComparison:
    family: str
    rank: int
    w: str
    u: str
    listed: tuple[int, int]  # (l_D, l_T) as published
    recomputed: tuple[int, int] | None  # None when u is not below w
    parity_consistent: bool
    is_witness: bool

    @property
    def matches(self) -> bool:
        return self.is_witness and self.recomputed == self.listed


@dataclass
class PatternWitnessReport:
    pattern: Element
    non_hultman_confirmed: bool = False
    witnesses: list[tuple[Element, int, int]] = field(default_factory=list)
    row_comparisons: list[RowComparison] = field(default_factory=list)
    extra_witnesses: list[tuple[Element, int, int]] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "family": self.pattern.ctx.family,
            "rank": self.pattern.ctx.rank,
            "non_hultman_confirmed": self.non_hultman_confirmed,
            "witnesses": [
                {"u": str(u), "lD": ld, "lT": lt} for u, ld, lt in self.witnesses
            ],
            "rows": [
                {
                    "u": c.u,
                    "listed": list(c.listed),
                    "recomputed": list(c.recomputed) if c.recomputed else None,
                    "parity_consistent": c.parity_consistent,
                    "is_witness": c.is_witness,
                    "matches": c.matches,
                }
                for c in self.row_comparisons
            ],
            "extra_witnesses": [
                {"u": str(u), "lD": ld, "lT": lt}
                for u, ld, lt in self.extra_witnesses
            ],
        }


def witness_table() -> list[PatternWitnessReport]:
    """Recompute, for each listed pattern w, every u < w with
    l_D(u,w) > l_T(u,w), and diff against the reference rows."""
    reports = []
    for w in patterns.condition5_patterns():
        ctx = w.ctx
        graph = bruhat_graph(ctx)
        dist = bruhat.directed_distances_to(graph, graph.index[w.window])
        winv = invert_window(w.window)
        grids = group_rank_grids(ctx)
        boxes = coessential_boxes(w.window)
        abslens = group_absolute_lengths(ctx)
        report = PatternWitnessReport(w)
        recomputed: dict[Window, tuple[int, int]] = {}
        for i, u in enumerate(graph.elements):
            if u.window == w.window:
                continue
            grid = grids[u.window]
            if not all(grid[p - 1][q - 1] <= r for p, q, r in boxes):
                continue
            lt = abslens[compose_windows(winv, u.window)]
            if dist[i] != lt:
                recomputed[u.window] = (int(dist[i]), lt)
                report.witnesses.append((u, int(dist[i]), lt))
        report.non_hultman_confirmed = bool(report.witnesses)

        listed_windows = set()
        lw = coxeter_length(w)
        for family, rank, wt, ut, ld, lt in REFERENCE_WITNESS_ROWS:
            if (family, rank) != (ctx.family, ctx.rank) or wt != str(w):
                continue
            u = parse_element(ut, ctx)
            listed_windows.add(u.window)
            below = bruhat.bruhat_leq(u, w)
            rec = recomputed.get(u.window)
            if rec is None and below:
                # below but not a witness: distances agree; report them
                du = dist[graph.index[u.window]]
                rec_pair = (int(du), bruhat.undirected_distance(u, w))
                is_witness = False
            elif rec is None:
                rec_pair = None
                is_witness = False
            else:
                rec_pair = rec
                is_witness = True
            parity = (lw - coxeter_length(u)) % 2
            consistent = ld % 2 == parity and lt % 2 == parity
            report.row_comparisons.append(
                RowComparison(
                    ctx.family,
                    ctx.rank,
                    str(w),
                    ut,
                    (ld, lt),
                    rec_pair,
                    consistent,
                    is_witness,
                )
            )
        report.extra_witnesses = [
            (u, ld, lt)
            for u, ld, lt in report.witnesses
            if u.window not in listed_windows
        ]
        reports.append(report)
    return reports


def witness_table_json(reports: list[PatternWitnessReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2)
