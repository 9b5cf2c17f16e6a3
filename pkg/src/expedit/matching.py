"""Slope-1 matching geometry between two exponent strings, and a distance oracle.

A matching is a finite set of diagonal (slope-1) segments inside the rectangle
[0, len(p)) x [0, len(q)) whose axis projections are disjoint and which never
cross. Matched positions pay substitution weight along the segment, unmatched
source positions pay deletion, unmatched target positions insertion.

Segments are parameterized by their *horizontal extent* h rather than their
Euclidean length h*sqrt(2); the 1/sqrt(2) in the substitution integral cancels
against the Euclidean measure, so every cost here is an exact rational.

The factor boundaries of the two strings slice the rectangle into boxes with
constant symbol pairs. Any matching normalizes (clip at box lines, push right,
push up, merge) into one segment per box without changing its cost, which
turns minimization into a small linear program per monotone chain of boxes —
an independent way to compute the exp-edit distance (the oracle), sharing no
code with the dynamic-programming engine.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import core
from .core import ExpString, GuardExceeded, Symbol, check_exponent, check_rational
from .cost import CostModel, EditOp
from .distance import apply_script


class MatchingError(ValueError):
    """The segment set breaks one of the matching conditions."""


@dataclass(frozen=True)
class Segment:
    """The diagonal segment {(x0 + t, y0 + t) : 0 <= t < h}."""

    x0: Fraction
    y0: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x0", check_rational(self.x0))
        object.__setattr__(self, "y0", check_rational(self.y0))
        object.__setattr__(self, "h", check_exponent(self.h))

    @property
    def x1(self) -> Fraction:
        return self.x0 + self.h

    @property
    def y1(self) -> Fraction:
        return self.y0 + self.h


@dataclass(frozen=True)
class ExpMatching:
    """A valid set of segments within bounds (L1, L2); validated on construction.

    For x-sorted segments validity is exactly: each segment starts at or after
    the previous one's end in *both* coordinates (half-open ends may touch).
    That single check gives disjoint X projections, disjoint Y projections and
    monotonicity at once.
    """

    segments: tuple[Segment, ...]
    bounds: tuple[Fraction, Fraction]

    def __post_init__(self):
        l1, l2 = self.bounds
        object.__setattr__(self, "bounds", (check_rational(l1), check_rational(l2)))
        segs = tuple(sorted(self.segments, key=lambda s: s.x0))
        object.__setattr__(self, "segments", segs)
        l1, l2 = self.bounds
        for s in segs:
            if s.x0 < 0 or s.y0 < 0 or s.x1 > l1 or s.y1 > l2:
                raise MatchingError(f"segment {s} leaves the bounding box {l1} x {l2}")
        for a, b in zip(segs, segs[1:]):
            if b.x0 < a.x1:
                raise MatchingError(f"overlapping X projections: {a} and {b}")
            if b.y0 < a.y1:
                raise MatchingError(f"crossing or overlapping Y projections: {a} and {b}")


# ---------------------------------------------------------------------------
# boxes


@dataclass(frozen=True)
class Box:
    """One cell of the factor-boundary grid; all its positions share symbols."""

    i: int
    j: int
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction
    src_symbol: Symbol
    dst_symbol: Symbol


@dataclass(frozen=True)
class BoxGrid:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    src: tuple[Symbol, ...]
    dst: tuple[Symbol, ...]

    @property
    def n(self) -> int:
        return len(self.src)

    @property
    def k(self) -> int:
        return len(self.dst)

    def box(self, i: int, j: int) -> Box:
        return Box(
            i, j,
            self.xs[i], self.xs[i + 1],
            self.ys[j], self.ys[j + 1],
            self.src[i], self.dst[j],
        )


def box_grid(p: ExpString, q: ExpString) -> BoxGrid:
    return BoxGrid(
        xs=core.prefix_sums(p),
        ys=core.prefix_sums(q),
        src=tuple(f.symbol for f in p.factors),
        dst=tuple(f.symbol for f in q.factors),
    )


@dataclass(frozen=True)
class BoxChain:
    """A monotone, duplicate-free list of box indices (row, column)."""

    boxes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        for (i0, j0), (i1, j1) in itertools.combinations(self.boxes, 2):
            if (i0, j0) == (i1, j1):
                raise ValueError(f"repeated box ({i0},{j0})")
            if (i0 < i1 and j0 > j1) or (i1 < i0 and j1 > j0):
                raise ValueError(f"boxes ({i0},{j0}) and ({i1},{j1}) are not monotone")


@dataclass(frozen=True)
class OracleConfig:
    """Desk-scale guard: the oracle enumerates chains, so keep factor counts tiny."""

    max_flen: int = 4


# ---------------------------------------------------------------------------
# cost


def _pieces(s: ExpString, lo: Fraction, hi: Fraction) -> Iterator[tuple[Symbol, Fraction]]:
    """Split [lo, hi) of s at factor boundaries; yields (symbol, piece length)."""
    if lo >= hi:
        return
    start = Fraction(0)
    for f in s.factors:
        end = start + f.exponent
        a, b = max(lo, start), min(hi, end)
        if a < b:
            yield f.symbol, b - a
        start = end
    if hi > start:
        raise MatchingError(f"interval [{lo},{hi}) exceeds len {start}")


def _matched_pieces(
    p: ExpString, q: ExpString, seg: Segment
) -> Iterator[tuple[Fraction, Symbol, Symbol]]:
    """Split a segment wherever either string changes factor; yields
    (piece length, source symbol, target symbol)."""
    cuts = {Fraction(0), seg.h}
    for v in core.prefix_sums(p):
        if seg.x0 < v < seg.x1:
            cuts.add(v - seg.x0)
    for v in core.prefix_sums(q):
        if seg.y0 < v < seg.y1:
            cuts.add(v - seg.y0)
    ordered = sorted(cuts)
    for t0, t1 in zip(ordered, ordered[1:]):
        yield t1 - t0, core.char_at(p, seg.x0 + t0), core.char_at(q, seg.y0 + t0)


def matching_cost(E: ExpMatching, p: ExpString, q: ExpString, m: CostModel) -> Fraction:
    """Deletion over uncovered source + insertion over uncovered target +
    substitution along the segments, all exact."""
    l1, l2 = core.length(p), core.length(q)
    if E.bounds != (l1, l2):
        raise MatchingError(f"matching bounds {E.bounds} do not fit strings ({l1}, {l2})")
    total = Fraction(0)
    x_done = Fraction(0)
    y_done = Fraction(0)
    for seg in E.segments:
        for sym, width in _pieces(p, x_done, seg.x0):
            total += m.delete(sym) * width
        for sym, width in _pieces(q, y_done, seg.y0):
            total += m.ins(sym) * width
        for width, a, b in _matched_pieces(p, q, seg):
            total += m.sub(a, b) * width
        x_done, y_done = seg.x1, seg.y1
    for sym, width in _pieces(p, x_done, l1):
        total += m.delete(sym) * width
    for sym, width in _pieces(q, y_done, l2):
        total += m.ins(sym) * width
    return total


# ---------------------------------------------------------------------------
# normalization: clip, push right, push up, merge


def clip_segments(segments: Sequence[Segment], grid: BoxGrid) -> tuple[Segment, ...]:
    """Cut every segment at each grid line it crosses."""
    out = []
    for seg in segments:
        cuts = {Fraction(0), seg.h}
        for v in grid.xs:
            if seg.x0 < v < seg.x1:
                cuts.add(v - seg.x0)
        for v in grid.ys:
            if seg.y0 < v < seg.y1:
                cuts.add(v - seg.y0)
        ordered = sorted(cuts)
        for t0, t1 in zip(ordered, ordered[1:]):
            out.append(Segment(seg.x0 + t0, seg.y0 + t0, t1 - t0))
    return tuple(sorted(out, key=lambda s: s.x0))


def _slab_end(boundaries: Sequence[Fraction], v: Fraction) -> Fraction:
    """The first grid boundary strictly to the right of position v."""
    idx = bisect_right(boundaries, v)
    if idx >= len(boundaries):
        raise MatchingError(f"position {v} outside the grid")
    return boundaries[idx]


def translate_right(segments: Sequence[Segment], grid: BoxGrid) -> tuple[Segment, ...]:
    """Push each segment (rightmost first) right until it touches its box wall
    or the next segment's X projection. Expects box-contained (clipped) input."""
    segs = sorted(segments, key=lambda s: s.x0)
    for idx in range(len(segs) - 1, -1, -1):
        s = segs[idx]
        wall = _slab_end(grid.xs, s.x0)
        if s.x1 > wall:
            raise MatchingError(f"segment {s} crosses a box line; clip first")
        slack = wall - s.x1
        if idx + 1 < len(segs):
            slack = min(slack, segs[idx + 1].x0 - s.x1)
        if slack > 0:
            segs[idx] = Segment(s.x0 + slack, s.y0, s.h)
    return tuple(segs)


def translate_up(segments: Sequence[Segment], grid: BoxGrid) -> tuple[Segment, ...]:
    """Push each segment (topmost first) up until its box ceiling or the next
    segment's Y projection."""
    segs = sorted(segments, key=lambda s: s.y0)
    for idx in range(len(segs) - 1, -1, -1):
        s = segs[idx]
        ceiling = _slab_end(grid.ys, s.y0)
        if s.y1 > ceiling:
            raise MatchingError(f"segment {s} crosses a box line; clip first")
        slack = ceiling - s.y1
        if idx + 1 < len(segs):
            slack = min(slack, segs[idx + 1].y0 - s.y1)
        if slack > 0:
            segs[idx] = Segment(s.x0, s.y0 + slack, s.h)
    return tuple(segs)


def merge_continuous(segments: Sequence[Segment]) -> tuple[Segment, ...]:
    """Fuse chains of segments whose ends meet exactly."""
    segs = sorted(segments, key=lambda s: s.x0)
    out: list[Segment] = []
    for s in segs:
        if out and out[-1].x1 == s.x0 and out[-1].y1 == s.y0:
            out[-1] = Segment(out[-1].x0, out[-1].y0, out[-1].h + s.h)
        else:
            out.append(s)
    return tuple(out)


def normalize(E: ExpMatching, grid: BoxGrid) -> ExpMatching:
    """Clip at box lines, push right, push up, merge; cost-preserving, leaves
    at most one segment (chain) per box, idempotent."""
    segs = clip_segments(E.segments, grid)
    segs = translate_right(segs, grid)
    segs = translate_up(segs, grid)
    segs = merge_continuous(segs)
    return ExpMatching(segs, E.bounds)


# ---------------------------------------------------------------------------
# chains and their linear programs


def enumerate_box_chains(p: ExpString, q: ExpString, config: OracleConfig = OracleConfig()) -> list[BoxChain]:
    """All nonempty monotone chains over the box grid of (p, q).

    In the lexicographic order a set is monotone iff every consecutive pair
    is, so a depth-first extension by lex-later compatible boxes enumerates
    each chain exactly once.
    """
    n, k = core.flen(p), core.flen(q)
    if n > config.max_flen or k > config.max_flen:
        raise GuardExceeded(
            f"chain enumeration guards at {config.max_flen} factors per side, got {n} x {k}"
        )
    boxes = [(i, j) for i in range(n) for j in range(k)]
    chains: list[BoxChain] = []

    def extend(prefix: list[tuple[int, int]], start: int):
        if prefix:
            chains.append(BoxChain(tuple(prefix)))
        for t in range(start, len(boxes)):
            bi, bj = boxes[t]
            if prefix:
                li, lj = prefix[-1]
                if bi > li and bj < lj:
                    continue
            prefix.append(boxes[t])
            extend(prefix, t + 1)
            prefix.pop()

    extend([], 0)
    return chains


def maximal_box_chains(n: int, k: int) -> Iterator[BoxChain]:
    """Staircase paths from box (0,0) to box (n-1,k-1); every monotone chain is
    a subset of one of these, and enlarging a chain never raises its LP cost."""

    def walk(i: int, j: int, acc: list[tuple[int, int]]) -> Iterator[BoxChain]:
        acc.append((i, j))
        if i == n - 1 and j == k - 1:
            yield BoxChain(tuple(acc))
        else:
            if i + 1 < n:
                yield from walk(i + 1, j, acc)
            if j + 1 < k:
                yield from walk(i, j + 1, acc)
        acc.pop()

    yield from walk(0, 0, [])


def simplex_max(
    obj: Sequence[Fraction], rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximize obj·x subject to rows·x <= rhs, x >= 0, with rhs >= 0.

    Dense tableau over Fractions with Bland's rule (anti-cycling), so it
    terminates on every input. Returns the optimum and one optimal vertex —
    a basic solution, which matters to callers that rely on integrality.
    """
    m, n = len(rows), len(obj)
    if any(b < 0 for b in rhs):
        raise ValueError("rhs must be nonnegative (the origin must be feasible)")
    # columns: n structural + m slacks + rhs
    tab = [
        [Fraction(v) for v in row] + [Fraction(int(r == i)) for r in range(m)] + [Fraction(b)]
        for i, (row, b) in enumerate(zip(rows, rhs))
    ]
    z = [-Fraction(v) for v in obj] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]

    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for r in range(m):
            coef = tab[r][enter]
            if coef > 0:
                ratio = tab[r][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        if leave is None:
            raise ValueError("objective is unbounded")
        pivot = tab[leave][enter]
        tab[leave] = [v / pivot for v in tab[leave]]
        for r in range(m):
            if r != leave and tab[r][enter]:
                f = tab[r][enter]
                tab[r] = [a - f * b for a, b in zip(tab[r], tab[leave])]
        if z[enter]:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, tab[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = tab[r][-1]
    return z[-1], tuple(x)


def chain_lp_solve(
    chain: BoxChain, p: ExpString, q: ExpString, m: CostModel
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Best matching cost attainable with one segment per box of the chain.

    Placing extent h in a box saves its deletion+insertion weight and pays its
    substitution weight, so maximize the total gain subject to row/column
    capacities (the factor exponents); the cost is the full delete+insert bill
    minus that optimum.
    """
    grid = box_grid(p, q)
    caps_row = [f.exponent for f in p.factors]
    caps_col = [f.exponent for f in q.factors]
    const = sum((m.delete(f.symbol) * f.exponent for f in p.factors), Fraction(0))
    const += sum((m.ins(f.symbol) * f.exponent for f in q.factors), Fraction(0))

    gains = []
    for i, j in chain.boxes:
        if not (0 <= i < grid.n and 0 <= j < grid.k):
            raise ValueError(f"box ({i},{j}) outside the {grid.n} x {grid.k} grid")
        gains.append(m.delete(grid.src[i]) + m.ins(grid.dst[j]) - m.sub(grid.src[i], grid.dst[j]))

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in sorted({i for i, _ in chain.boxes}):
        rows.append([Fraction(int(bi == i)) for bi, _ in chain.boxes])
        rhs.append(caps_row[i])
    for j in sorted({j for _, j in chain.boxes}):
        rows.append([Fraction(int(bj == j)) for _, bj in chain.boxes])
        rhs.append(caps_col[j])

    saved, extents = simplex_max(gains, rows, rhs)
    return const - saved, extents


def oracle_distance(p: ExpString, q: ExpString, m: CostModel, config: OracleConfig = OracleConfig()) -> Fraction:
    """Exp-edit distance computed purely from the matching geometry.

    Minimizes the chain LP over maximal (staircase) chains: every chain is
    contained in a maximal one, and a superset chain can only do better (its
    LP relaxes by adding variables that may stay 0 — which also covers the
    empty matching). Entirely independent of the dynamic-programming engine.
    """
    n, k = core.flen(p), core.flen(q)
    if n > config.max_flen or k > config.max_flen:
        raise GuardExceeded(
            f"oracle guards at {config.max_flen} factors per side, got {n} x {k}"
        )
    if n == 0 or k == 0:
        total = sum((m.delete(f.symbol) * f.exponent for f in p.factors), Fraction(0))
        return total + sum((m.ins(f.symbol) * f.exponent for f in q.factors), Fraction(0))
    return min(chain_lp_solve(chain, p, q, m)[0] for chain in maximal_box_chains(n, k))


# ---------------------------------------------------------------------------
# scripts <-> matchings


def matching_from_script(p: ExpString, q: ExpString, ops: Sequence[EditOp]) -> ExpMatching:
    """The graph of the position map induced by a script as a matching.

    Surviving source positions (never deleted) flow to target positions:
    deletions remove a window and pull later positions left, insertions push
    them right, substitutions leave positions in place. The resulting cost is
    at most the script's (equal when the script is optimal).
    """
    if apply_script(p, ops) != q:
        raise ValueError("script does not transform the source into the target")
    # pieces (sx, sy, h): original positions [sx, sx+h) sit at [sy, sy+h) now
    pieces: list[tuple[Fraction, Fraction, Fraction]] = []
    if core.length(p) > 0:
        pieces.append((Fraction(0), Fraction(0), core.length(p)))
    for op in ops:
        t, e = op.at, op.exponent
        if op.kind == "sub":
            continue
        moved: list[tuple[Fraction, Fraction, Fraction]] = []
        if op.kind == "ins":
            for sx, sy, h in pieces:
                if sy >= t:
                    moved.append((sx, sy + e, h))
                elif sy + h > t:
                    cut = t - sy
                    moved.append((sx, sy, cut))
                    moved.append((sx + cut, t + e, h - cut))
                else:
                    moved.append((sx, sy, h))
        else:  # delete the current window [t, t+e)
            for sx, sy, h in pieces:
                if sy + h <= t:  # entirely before the window
                    moved.append((sx, sy, h))
                elif sy >= t + e:  # entirely after: pulled left
                    moved.append((sx, sy - e, h))
                else:
                    if sy < t:  # left part survives in place
                        moved.append((sx, sy, t - sy))
                    if sy + h > t + e:  # right part lands at the cut
                        cut = t + e - sy
                        moved.append((sx + cut, t, h - cut))
        pieces = moved
    segments = tuple(Segment(sx, sy, h) for sx, sy, h in pieces)
    return ExpMatching(segments, (core.length(p), core.length(q)))


def script_from_matching(E: ExpMatching, p: ExpString, q: ExpString) -> tuple[EditOp, ...]:
    """A script that realizes a matching at exactly its cost (for valid models):
    delete unmatched source, insert unmatched target, substitute across
    segments where the symbols differ."""
    l1, l2 = core.length(p), core.length(q)
    if E.bounds != (l1, l2):
        raise MatchingError(f"matching bounds {E.bounds} do not fit strings ({l1}, {l2})")
    ops: list[EditOp] = []
    cursor = Fraction(0)  # everything left of cursor already equals the target
    x_done = Fraction(0)
    y_done = Fraction(0)
    for seg in E.segments:
        for sym, width in _pieces(p, x_done, seg.x0):
            ops.append(EditOp(sym, None, width, cursor))
        for sym, width in _pieces(q, y_done, seg.y0):
            ops.append(EditOp(None, sym, width, cursor))
            cursor += width
        for width, a, b in _matched_pieces(p, q, seg):
            if a != b:
                ops.append(EditOp(a, b, width, cursor))
            cursor += width
        x_done, y_done = seg.x1, seg.y1
    for sym, width in _pieces(p, x_done, l1):
        ops.append(EditOp(sym, None, width, cursor))
    for sym, width in _pieces(q, y_done, l2):
        ops.append(EditOp(None, sym, width, cursor))
        cursor += width
    return tuple(ops)


# ---------------------------------------------------------------------------
# dump format: one "x0 <tab> y0 <tab> h" line per segment


def dump_matching(E: ExpMatching) -> str:
    return "".join(f"{s.x0}\t{s.y0}\t{s.h}\n" for s in E.segments)


def parse_matching_dump(text: str, bounds: tuple[Fraction, Fraction]) -> ExpMatching:
    segments = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        x0, y0, h = (Fraction(part) for part in line.split("\t"))
        segments.append(Segment(x0, y0, h))
    return ExpMatching(tuple(segments), bounds)
