"""Elements of the symmetric and hyperoctahedral groups.

Conventions used throughout the package:

- Windows are 1-indexed one-line notation: ``window[i-1] == w(i)``.
- A type A context of rank n is S_n acting on {1..n}.
- A type B context of rank n is the hyperoctahedral group B_n embedded in
  S_{2n} as the centrally symmetric permutations, those with
  w(i) + w(2n+1-i) = 2n+1 for all i.  The embedded window is the single
  source of truth; the length-n signed window is a derived view.
- Composition is right-to-left: ``compose(u, v)(i) == u(v(i))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterator, Sequence

# Digits for one-line text form; 'a' stands for 10, 'b' for 11, and so on.
DIGITS = "123456789abcdefghijklmnopqrstuvwxyz"

Window = tuple[int, ...]
SignedWindow = tuple[int, ...]


@dataclass(frozen=True)
class GroupContext:
    """Ambient group descriptor: family 'A' (S_n) or 'B' (B_n in S_{2n})."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "B"):
            raise ValueError(f"unknown family {self.family!r}; expected 'A' or 'B'")
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @property
    def degree(self) -> int:
        """Size of the ambient symmetric group: n for type A, 2n for type B."""
        return self.rank if self.family == "A" else 2 * self.rank

    @property
    def order(self) -> int:
        if self.family == "A":
            return factorial(self.rank)
        return 2**self.rank * factorial(self.rank)

    @cached_property
    def identity(self) -> "Element":
        return Element(tuple(range(1, self.degree + 1)), self)

    @cached_property
    def generators(self) -> tuple["Element", ...]:
        """Simple generators: s_1..s_{n-1} for type A; s_0..s_{n-1} for type B."""
        n = self.rank
        gens = []
        if self.family == "A":
            for i in range(1, n):
                gens.append(Element(_swap(identity_window(n), i, i + 1), self))
        else:
            gens.append(Element(_swap(identity_window(2 * n), n, n + 1), self))
            for i in range(1, n):
                win = _swap(identity_window(2 * n), n - i, n - i + 1)
                win = _swap(win, n + i, n + i + 1)
                gens.append(Element(win, self))
        return tuple(gens)

    @cached_property
    def reflections(self) -> tuple["Element", ...]:
        """All conjugates of the generators, in window-lexicographic order.

        There are n(n-1)/2 reflections in type A and n^2 in type B.
        """
        seen: set[Window] = {g.window for g in self.generators}
        frontier = list(seen)
        gens = [g.window for g in self.generators]
        while frontier:
            new = []
            for t in frontier:
                for s in gens:
                    conj = compose_windows(s, compose_windows(t, s))
                    if conj not in seen:
                        seen.add(conj)
                        new.append(conj)
            frontier = new
        return tuple(Element(w, self) for w in sorted(seen))

    @cached_property
    def elements(self) -> tuple["Element", ...]:
        """Every group element, sorted by (Coxeter length, window)."""
        if self.family == "A":
            wins: Iterator[Window] = itertools.permutations(range(1, self.rank + 1))
        else:
            wins = _type_b_windows(self.rank)
        els = [Element(w, self) for w in wins]
        els.sort(key=lambda e: (coxeter_length(e), e.window))
        return tuple(els)

    @cached_property
    def longest_element(self) -> "Element":
        n = self.degree
        return Element(tuple(range(n, 0, -1)), self)


@dataclass(frozen=True)
class Element:
    """A group element in embedded one-line notation."""

    window: Window
    ctx: GroupContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(self.window))
        n = self.ctx.degree
        if len(self.window) != n:
            raise ValueError(
                f"window length {len(self.window)} does not match degree {n}"
            )
        if not is_bijective_window(self.window):
            raise ValueError(f"window {self.window} is not a bijection on 1..{n}")
        if self.ctx.family == "B" and not is_type_b_window(self.window, self.ctx.rank):
            raise ValueError(
                f"window {self.window} violates the central symmetry of B_{self.ctx.rank}"
            )

    def __call__(self, i: int) -> int:
        return self.window[i - 1]

    def __str__(self) -> str:
        return format_window(self.window)

    @property
    def degree(self) -> int:
        return len(self.window)


def identity_window(n: int) -> Window:
    return tuple(range(1, n + 1))


def _swap(window: Window, i: int, j: int) -> Window:
    out = list(window)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def is_bijective_window(window: Sequence[int]) -> bool:
    n = len(window)
    return sorted(window) == list(range(1, n + 1))


def is_type_b_window(window: Sequence[int], rank: int) -> bool:
    """Central symmetry test: w(i) + w(2n+1-i) = 2n+1 for all i <= n."""
    n2 = 2 * rank
    if len(window) != n2:
        return False
    return all(window[i] + window[n2 - 1 - i] == n2 + 1 for i in range(rank))


def _type_b_windows(rank: int) -> Iterator[Window]:
    """All centrally symmetric windows: pick one value per mirror pair for the
    first half, in every order; the second half is forced."""
    n2 = 2 * rank
    pairs = [(v, n2 + 1 - v) for v in range(1, rank + 1)]
    for picks in itertools.product((0, 1), repeat=rank):
        half_values = [pairs[k][picks[k]] for k in range(rank)]
        for first_half in itertools.permutations(half_values):
            second = tuple(n2 + 1 - v for v in reversed(first_half))
            yield first_half + second


def compose_windows(u: Window, v: Window) -> Window:
    """(u∘v)(i) = u(v(i)) on raw windows."""
    return tuple(u[k - 1] for k in v)


def invert_window(window: Window) -> Window:
    inv = [0] * len(window)
    for pos, val in enumerate(window, start=1):
        inv[val - 1] = pos
    return tuple(inv)


def compose(u: Element, v: Element) -> Element:
    """Compose two elements, applying v first: (u∘v)(i) = u(v(i)).

    The type B context is preserved when both inputs share it; composing
    elements of equal degree but different contexts lands in type A.
    """
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {v.degree}")
    ctx = u.ctx if u.ctx == v.ctx else context("A", u.degree)
    return Element(compose_windows(u.window, v.window), ctx)


def inverse(w: Element) -> Element:
    return Element(invert_window(w.window), w.ctx)


def inversion_count(window: Sequence[int]) -> int:
    n = len(window)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if window[i] > window[j]
    )


def coxeter_length(w: Element) -> int:
    """Length with respect to the simple generators.

    Type A counts window inversions.  Type B uses the signed-window formula
    inv(σ) + Σ_{σ(i)<0} |σ(i)|, which differs from the S_{2n} inversion
    count of the embedded window.
    """
    if w.ctx.family == "A":
        return inversion_count(w.window)
    sigma = signed_window(w)
    return inversion_count_signed(sigma) + sum(-s for s in sigma if s < 0)


def inversion_count_signed(sigma: Sequence[int]) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def signed_window(w: Element) -> SignedWindow:
    """Signed one-line form σ(1..n), read off positions n+1..2n of the window.

    σ(k) = w(n+k) - n when w(n+k) > n, and -(n+1-w(n+k)) otherwise.  Under
    this convention s_0 flips the sign of coordinate 1 and s_i swaps
    coordinates i and i+1, matching the reflection action on R^n.
    """
    if w.ctx.family != "B":
        raise ValueError("signed windows are defined for type B elements only")
    n = w.ctx.rank
    out = []
    for k in range(1, n + 1):
        v = w.window[n + k - 1]
        out.append(v - n if v > n else -(n + 1 - v))
    return tuple(out)


def element_from_signed(sigma: Sequence[int], rank: int) -> Element:
    """Inverse of signed_window: build the embedded B_rank element."""
    if len(sigma) != rank:
        raise ValueError(f"signed window length {len(sigma)} != rank {rank}")
    if sorted(abs(s) for s in sigma) != list(range(1, rank + 1)):
        raise ValueError(f"{tuple(sigma)} is not a signed permutation of 1..{rank}")
    n = rank
    second = [n + s if s > 0 else n + 1 + s for s in sigma]
    first = [2 * n + 1 - v for v in reversed(second)]
    return Element(tuple(first + second), context("B", rank))


def parse_element(text: str, ctx: GroupContext) -> Element:
    """Parse digit text ('a'=10, ...) or, for type B, a comma-separated
    signed window of length n (e.g. '-3,2,-1')."""
    text = text.strip()
    if "," in text:
        if ctx.family != "B":
            raise ValueError("signed-window input is only valid for type B")
        entries = tuple(int(part) for part in text.split(","))
        return element_from_signed(entries, ctx.rank)
    values = []
    for ch in text:
        idx = DIGITS.find(ch)
        if idx < 0:
            raise ValueError(f"bad character {ch!r} in element text {text!r}")
        values.append(idx + 1)
    return Element(tuple(values), ctx)


def format_window(window: Sequence[int]) -> str:
    if max(window, default=0) > len(DIGITS):
        raise ValueError(f"degree {max(window)} too large for digit notation")
    return "".join(DIGITS[v - 1] for v in window)


def format_signed(w: Element) -> str:
    return ",".join(str(s) for s in signed_window(w))


def window_cycles(window: Window) -> list[tuple[int, ...]]:
    """Disjoint cycles (fixed points included), each starting at its least
    point, sorted by least point."""
    n = len(window)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = window[i - 1]
        cycles.append(tuple(cyc))
    return cycles


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    return tuple(cyc[k:]) + tuple(cyc[:k])


@dataclass(frozen=True)
class CycleUnit:
    """A cycle of the embedded window paired with its mirror w_0 c w_0.

    A self-mirrored cycle is an odd unit; a pair of distinct mirrored
    cycles is an even unit.  A trivial unit is a mirror pair of fixed
    points.
    """

    cycles: tuple[tuple[int, ...], ...]
    parity: str  # "even" or "odd"
    trivial: bool


@dataclass(frozen=True)
class CyclePairing:
    units: tuple[CycleUnit, ...]

    @property
    def even_count(self) -> int:
        return sum(1 for u in self.units if u.parity == "even")


def cycle_pairing(w: Element) -> CyclePairing:
    """Mirror-paired cycle decomposition of a type B element.

    Reflection length in B_n is n minus the number of even units.
    """
    if w.ctx.family != "B":
        raise ValueError("cycle pairing is defined for type B elements only")
    n2 = w.degree

    def mirror(c: Sequence[int]) -> tuple[int, ...]:
        return _canonical_cycle([n2 + 1 - i for i in c])

    remaining = {c: c for c in window_cycles(w.window)}
    units = []
    for cyc in sorted(remaining):
        if cyc not in remaining:
            continue
        mir = mirror(cyc)
        if mir == cyc:
            del remaining[cyc]
            units.append(CycleUnit((cyc,), "odd", False))
        else:
            del remaining[cyc]
            del remaining[mir]
            trivial = len(cyc) == 1
            units.append(CycleUnit((cyc, mir), "even", trivial))
    return CyclePairing(tuple(units))


def absolute_length(w: Element) -> int:
    """Reflection length: n - cyc(w) in type A, n - ecyc(w) in type B."""
    if w.ctx.family == "A":
        return w.degree - len(window_cycles(w.window))
    return w.ctx.rank - cycle_pairing(w).even_count


@lru_cache(maxsize=None)
def context(family: str, rank: int) -> GroupContext:
    """Interned context, so views like `elements` are computed once."""
    return GroupContext(family, rank)
