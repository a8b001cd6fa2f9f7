"""Diagrams, coessential sets, inclusion tests, right hulls, and the basic
elements attached to coessential boxes.

Grid coordinates follow the matrix convention: p is the row (a value),
q is the column (a position).  For type B elements everything is computed
in the embedded S_{2n} picture; the central box is (n+1, n).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .bruhat import (
    bruhat_leq,
    coessential_boxes,
    window_leq,
    window_rank,
    window_rank_grid,
)
from .groups import (
    Element,
    GroupContext,
    Window,
    compose,
    context,
    coxeter_length,
    invert_window,
)

DEFAULT_NODE_BUDGET = 10**8


class HullBudgetExceeded(RuntimeError):
    """Raised when hull enumeration visits more nodes than its budget."""


@dataclass(frozen=True, order=True)
class CoessBox:
    p: int
    q: int
    r: int


def diagram(w: Element) -> frozenset[tuple[int, int]]:
    """Boxes (p, q) with p > w(q) and w^{-1}(p) > q (the strike-out rule)."""
    inv = invert_window(w.window)
    n = w.degree
    return frozenset(
        (p, q)
        for q in range(1, n + 1)
        for p in range(w.window[q - 1] + 1, n + 1)
        if inv[p - 1] > q
    )


def coessential_set(w: Element) -> tuple[CoessBox, ...]:
    """E(w): the northeast-most diagram boxes, with their rank values."""
    return tuple(CoessBox(p, q, r) for p, q, r in coessential_boxes(w.window))


def identity_rank(p: int, q: int) -> int:
    return max(0, q - p + 1)


def violated_boxes(w: Element) -> tuple[CoessBox, ...]:
    """Coessential boxes whose rank exceeds the identity bound."""
    return tuple(
        b for b in coessential_set(w) if b.r != identity_rank(b.p, b.q)
    )


def is_defined_by_inclusions(w: Element) -> bool:
    """Every coessential box attains r_w(p,q) = max(0, q-p+1)."""
    return not violated_boxes(w)


def is_defined_by_pseudo_inclusions(w: Element) -> bool:
    """Type B relaxation: the central box (n+1, n) may have r = 1 instead."""
    if w.ctx.family != "B":
        raise ValueError("pseudo-inclusions are defined for type B elements only")
    n = w.ctx.rank
    for b in violated_boxes(w):
        if not (b.p == n + 1 and b.q == n and b.r == 1):
            return False
    return True


@dataclass(frozen=True)
class HullBounds:
    """Per-column value intervals of the right hull.

    (i, j) lies in the hull iff lo[j-1] <= i <= hi[j-1], where
    lo_j = min_{k>=j} w(k) and hi_j = max_{k<=j} w(k).
    """

    lo: tuple[int, ...]
    hi: tuple[int, ...]


def hull_bounds(w: Element) -> HullBounds:
    win = w.window
    n = len(win)
    hi = []
    m = 0
    for v in win:
        m = max(m, v)
        hi.append(m)
    lo = [0] * n
    m = n + 1
    for j in range(n - 1, -1, -1):
        m = min(m, win[j])
        lo[j] = m
    return HullBounds(tuple(lo), tuple(hi))


def window_in_hull(u_window: Sequence[int], bounds: HullBounds) -> bool:
    return all(
        lo <= v <= hi for v, lo, hi in zip(u_window, bounds.lo, bounds.hi)
    )


def in_hull(u: Element, w: Element) -> bool:
    """u ⊆ H(w): every point (u(j), j) lies in the right hull of w."""
    if u.degree != w.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {w.degree}")
    return window_in_hull(u.window, hull_bounds(w))


def hull_windows(
    bounds: HullBounds, node_budget: int = DEFAULT_NODE_BUDGET
) -> Iterator[Window]:
    """All windows inside the column bounds, by backtracking with a used-value
    mask.  Every attempted placement costs one node against the budget."""
    n = len(bounds.lo)
    used = [False] * (n + 1)
    current = [0] * n
    nodes = 0

    def extend(j: int) -> Iterator[Window]:
        nonlocal nodes
        if j == n:
            yield tuple(current)
            return
        for v in range(bounds.lo[j], bounds.hi[j] + 1):
            if used[v]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise HullBudgetExceeded(
                    f"hull enumeration exceeded {node_budget} nodes"
                )
            used[v] = True
            current[j] = v
            yield from extend(j + 1)
            used[v] = False

    yield from extend(0)


def satisfies_right_hull(
    w: Element, node_budget: int = DEFAULT_NODE_BUDGET
) -> bool:
    """Whether every permutation inside H(w) is <= w (early exit on the
    first counterexample)."""
    bounds = hull_bounds(w)
    for u in hull_windows(bounds, node_budget):
        if not window_leq(u, w.window):
            return False
    return True


def right_hull_counterexample(
    w: Element, node_budget: int = DEFAULT_NODE_BUDGET
) -> Window | None:
    bounds = hull_bounds(w)
    for u in hull_windows(bounds, node_budget):
        if not window_leq(u, w.window):
            return u
    return None


def satisfies_relaxed_right_hull(
    w: Element, node_budget: int = DEFAULT_NODE_BUDGET
) -> bool:
    """Type B relaxation of the right hull condition.

    Either the plain condition holds over all u in S_{2n}, or
    r_w(n+1,n) = 1 and every u ⊆ H(w) with r_u(n+1,n) <= 1 is <= w.
    Enumerating only u in B_n would be wrong; the whole of S_{2n} is
    scanned.
    """
    if w.ctx.family != "B":
        raise ValueError("the relaxed right hull condition is a type B notion")
    n = w.ctx.rank
    center_ok = window_rank(w.window, n + 1, n) == 1
    bounds = hull_bounds(w)
    plain = True
    relaxed = True
    for u in hull_windows(bounds, node_budget):
        if window_leq(u, w.window):
            continue
        plain = False
        if not center_ok:
            return False
        if window_rank(u, n + 1, n) <= 1:
            relaxed = False
            return False
    return plain or (center_ok and relaxed)


def hull_relaxed_counterexample(
    w: Element, node_budget: int = DEFAULT_NODE_BUDGET
) -> Window | None:
    """A hull window refuting the relaxed condition, if any."""
    n = w.ctx.rank
    center_ok = window_rank(w.window, n + 1, n) == 1
    bounds = hull_bounds(w)
    for u in hull_windows(bounds, node_budget):
        if window_leq(u, w.window):
            continue
        if not center_ok or window_rank(u, n + 1, n) <= 1:
            return u
    return None


def sampled_relaxed_right_hull(
    w: Element, samples: int, rng: random.Random
) -> bool | None:
    """Randomized one-sided check of the relaxed right hull condition.

    Returns False when a counterexample is sampled, None otherwise
    (no counterexample found; inconclusive).  Sampling draws windows
    uniformly-ish by shuffling candidate values per column.
    """
    n = w.ctx.rank if w.ctx.family == "B" else None
    center_ok = n is not None and window_rank(w.window, n + 1, n) == 1
    bounds = hull_bounds(w)
    size = len(bounds.lo)
    for _ in range(samples):
        used = set()
        win = []
        for j in range(size):
            choices = [
                v
                for v in range(bounds.lo[j], bounds.hi[j] + 1)
                if v not in used
            ]
            if not choices:
                break
            v = rng.choice(choices)
            used.add(v)
            win.append(v)
        if len(win) != size:
            continue
        u = tuple(win)
        if window_leq(u, w.window):
            continue
        if n is None:
            return False  # type A: plain right hull refuted
        if not center_ok or window_rank(u, n + 1, n) <= 1:
            return False
    return None


def hull_equiv_check(
    w: Element,
    sample: int | None = None,
    rng: random.Random | None = None,
) -> bool:
    """Verify that u ⊆ H(w) iff r_u(p,q) <= r_w(p,q) for the coessential
    boxes attaining the identity bound.

    Exhaustive over the degree's symmetric group when `sample` is None
    (sensible up to degree 7); otherwise checks `sample` random windows.
    """
    bounds = hull_bounds(w)
    tight = [
        (b.p, b.q, b.r)
        for b in coessential_set(w)
        if b.r == identity_rank(b.p, b.q)
    ]
    degree = w.degree

    def agree(u: Window) -> bool:
        lhs = window_in_hull(u, bounds)
        rhs = all(window_rank(u, p, q) <= r for p, q, r in tight)
        return lhs == rhs

    if sample is None:
        return all(agree(u) for u in permutations(range(1, degree + 1)))
    rng = rng or random.Random(0)
    values = list(range(1, degree + 1))
    for _ in range(sample):
        rng.shuffle(values)
        if not agree(tuple(values)):
            return False
    return True


def _segment(a: int, b: int) -> list[int]:
    """The run a, a+1, ..., b; empty when a > b."""
    return list(range(a, b + 1))


def basic_element(p: int, q: int, r: int, ctx: GroupContext) -> Element:
    """v(p,q,r): the minimal element whose rank at (p,q) exceeds r.

    Type A uses the one-piece closed form; type B uses the four-case table
    on the half-window (q < n, or q = n with p > n), with the remaining
    boxes reached through v(p,q,r) = v(2n+2-p, 2n-q, p-q-1+r).
    """
    if ctx.family == "A":
        n = ctx.rank
        win = (
            _segment(1, q - r - 1)
            + _segment(p, p + r)
            + _segment(q - r, p - 1)
            + _segment(p + r + 1, n)
        )
        candidate = _checked(win, p, q, r, ctx)
        return candidate

    n = ctx.rank
    if not (q < n or (q == n and p > n)):
        return basic_element(2 * n + 2 - p, 2 * n - q, p - q - 1 + r, ctx)
    if p + r <= n:
        half = (
            _segment(1, q - r - 1)
            + _segment(p, p + r)
            + _segment(q - r, p - 1)
            + _segment(p + r + 1, n)
        )
    elif p <= n:
        half = (
            _segment(1, q - r - 1)
            + _segment(p, n)
            + _segment(2 * n + 2 - p, n + r + 1)
            + _segment(q - r, n - r - 1)
        )
    elif p + q < 2 * n + 2:
        half = (
            _segment(1, q - r - 1)
            + _segment(p, p + r)
            + _segment(q - r, 2 * n - p - r)
            + _segment(2 * n + 2 - p, n)
        )
    else:
        half = (
            _segment(1, 2 * n - p - r)
            + _segment(2 * n + 2 - p, q)
            + _segment(p, p + r)
            + _segment(q + 1, n)
        )
    win = half + [2 * n + 1 - v for v in reversed(half)]
    return _checked(win, p, q, r, ctx)


def _checked(win: list[int], p: int, q: int, r: int, ctx: GroupContext) -> Element:
    if sorted(win) != list(range(1, ctx.degree + 1)):
        raise ValueError(f"infeasible box (p={p}, q={q}, r={r}) for {ctx}")
    el = Element(tuple(win), ctx)
    if window_rank(el.window, p, q) != r + 1:
        raise ValueError(f"infeasible box (p={p}, q={q}, r={r}) for {ctx}")
    return el


def basic_element_bruteforce(p: int, q: int, r: int, ctx: GroupContext) -> Element:
    """Oracle: the Bruhat-minimal group element v with r_v(p,q) > r.

    Raises if the minimal element is not unique or none exists.
    """
    offenders = [
        v for v in ctx.elements if window_rank(v.window, p, q) > r
    ]
    if not offenders:
        raise ValueError(f"no element has rank > {r} at ({p}, {q})")
    minimal = [
        v
        for v in offenders
        if not any(
            u is not v and bruhat_leq(u, v) for u in offenders
        )
    ]
    if len(minimal) != 1:
        raise ValueError(f"minimal violator at ({p},{q},{r}) is not unique")
    return minimal[0]


def _mirror_box(box: tuple[int, int], n: int) -> tuple[int, int]:
    p, q = box
    return (2 * n + 2 - p, 2 * n - q)


def reduced_coessential(w: Element) -> tuple[CoessBox, ...]:
    """E'(w): the minimal centrally symmetric subset of E(w) whose rank
    conditions still cut out [id, w] within B_n.

    Computed by greedy symmetric-pair elimination validated against a full
    scan of B_n; uniqueness of the minimal set makes the greedy order
    irrelevant.
    """
    if w.ctx.family != "B":
        raise ValueError("E'(w) is defined for type B elements only")
    n = w.ctx.rank
    boxes = {(b.p, b.q): b.r for b in coessential_set(w)}
    orbits = []
    seen = set()
    for pq in sorted(boxes):
        if pq in seen:
            continue
        mirror = _mirror_box(pq, n)
        orbit = {pq, mirror}
        seen |= orbit
        orbits.append(orbit)

    below = frozenset(
        v.window for v in w.ctx.elements if window_leq(v.window, w.window)
    )

    def valid(active: set[tuple[int, int]]) -> bool:
        tests = [(p, q, boxes[(p, q)]) for p, q in active]
        for v in w.ctx.elements:
            ok = all(window_rank(v.window, p, q) <= r for p, q, r in tests)
            if ok != (v.window in below):
                return False
        return True

    active = set(boxes)
    for orbit in orbits:
        trial = active - orbit
        if valid(trial):
            active = trial
    return tuple(
        CoessBox(p, q, boxes[(p, q)]) for p, q in sorted(active)
    )


def reduced_coessential_closed_form(
    w: Element, offset: str = "p-n-1", strict_domain: bool = True
) -> tuple[CoessBox, ...]:
    """Closed-form redundancy filter for E'(w), kept for comparison only.

    `offset` selects which shift relates r_w(2n+2-p, q) to r_w(p, q) in the
    redundancy test; the three published variants do not agree, so none is
    treated as ground truth.  `strict_domain` keeps the literal p,q < n
    restriction; the corrected reading uses p <= n, q < n.
    """
    if w.ctx.family != "B":
        raise ValueError("E'(w) is defined for type B elements only")
    n = w.ctx.rank
    boxes = {(b.p, b.q): b.r for b in coessential_set(w)}
    shifts = {
        "p-n-1": lambda p, q: p - n - 1,
        "n-p+1": lambda p, q: n - p + 1,
        "p-q-1": lambda p, q: p - q - 1,
    }
    shift = shifts[offset]
    redundant: set[tuple[int, int]] = set()
    for (p, q), r in boxes.items():
        in_domain = (p < n and q < n) if strict_domain else (p <= n and q < n)
        if not in_domain:
            continue
        partner = (2 * n + 2 - p, q)
        if partner not in boxes:
            continue
        if _mirror_box((p, q), n) not in boxes:
            continue
        if boxes[partner] == r + shift(p, q):
            redundant.add((p, q))
            redundant.add(_mirror_box((p, q), n))
    return tuple(
        CoessBox(p, q, boxes[(p, q)])
        for p, q in sorted(boxes)
        if (p, q) not in redundant
    )


@lru_cache(maxsize=None)
def count_reduced_words(v: Element) -> int:
    """Number of reduced expressions, via R(v) = sum over descents of R(vs).

    Exact arbitrary-precision integers; counts grow quickly with length.
    """
    length = coxeter_length(v)
    if length == 0:
        return 1
    total = 0
    for s in v.ctx.generators:
        vs = compose(v, s)
        if coxeter_length(vs) < length:
            total += count_reduced_words(vs)
    return total


def has_unique_reduced_word(v: Element) -> bool:
    return count_reduced_words(v) == 1


def coxeter_coessential(w: Element) -> tuple[Element, ...]:
    """The Coxeter-theoretic coessential set: Bruhat-minimal elements not
    below w, in graded order."""
    not_below = [
        v for v in w.ctx.elements if not window_leq(v.window, w.window)
    ]
    minimal: list[Element] = []
    for v in not_below:  # graded order: anything below v was seen earlier
        if not any(window_leq(m.window, v.window) for m in minimal):
            minimal.append(v)
    return tuple(minimal)
