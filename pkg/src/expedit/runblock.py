"""Run-compressed Levenshtein distance via piecewise-linear boundary propagation.

The (len1+1) x (len2+1) alignment table of two run-length strings splits into
blocks along run boundaries. Inside a block both symbols are fixed, so the
cheapest way from an entry point on the top/left border to an exit point on
the bottom/right border has a closed form in the displacement (dx, dy):

    equal symbols    |dx - dy|   (ride the diagonal for free)
    distinct symbols max(dx, dy) (substitutions cost as much as ins/del)

The distance restricted to a grid line is a piecewise-linear (PL) function,
so we propagate PL functions block by block instead of cell values, and the
work per block depends on the number of runs, not the run lengths.

Exactness note: the discrete table is only defined at integer points; the PL
functions interpolate it. Every minimization below (prefix/suffix/window
mins, envelopes) is over real intervals, which is safe because local minima
of all functions involved stay at integer abscissae: lower envelopes only
ever create *concave* kinks at crossings (a candidate overtakes from above),
so new valleys never appear between integers, and interval minima are always
attained at integer breakpoints or endpoints. All coordinates are Fractions;
nothing is rounded.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

ZERO = Fraction(0)


@dataclass(frozen=True)
class PL:
    """A continuous piecewise-linear function on [xs[0], xs[-1]]."""

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.xs or len(self.xs) != len(self.ys):
            raise ValueError("breakpoint lists must be nonempty and aligned")
        if any(a >= b for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def lo(self) -> Fraction:
        return self.xs[0]

    @property
    def hi(self) -> Fraction:
        return self.xs[-1]


def pl_points(points: Iterable[tuple[Fraction, Fraction]]) -> PL:
    """Build a PL from (x, y) points, dropping collinear interior points."""
    pts = sorted(points)
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for x, y in pts:
        if xs and x == xs[-1]:
            if y != ys[-1]:
                raise ValueError(f"conflicting values at {x}: {ys[-1]} vs {y}")
            continue
        xs.append(x)
        ys.append(y)
    # merge collinear triples
    keep_x = [xs[0]]
    keep_y = [ys[0]]
    for i in range(1, len(xs) - 1):
        x0, x1, x2 = keep_x[-1], xs[i], xs[i + 1]
        y0, y1, y2 = keep_y[-1], ys[i], ys[i + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        keep_x.append(x1)
        keep_y.append(y1)
    if len(xs) > 1:
        keep_x.append(xs[-1])
        keep_y.append(ys[-1])
    return PL(tuple(keep_x), tuple(keep_y))


def evaluate(f: PL, x) -> Fraction:
    x = Fraction(x)
    if x < f.lo or x > f.hi:
        raise ValueError(f"{x} outside domain [{f.lo}, {f.hi}]")
    if len(f.xs) == 1:
        return f.ys[0]
    i = bisect_right(f.xs, x)
    if i == len(f.xs):
        return f.ys[-1]
    if f.xs[i - 1] == x:
        return f.ys[i - 1]
    x0, x1 = f.xs[i - 1], f.xs[i]
    y0, y1 = f.ys[i - 1], f.ys[i]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def restrict(f: PL, lo: Fraction, hi: Fraction) -> PL:
    if lo < f.lo or hi > f.hi or lo > hi:
        raise ValueError(f"cannot restrict [{f.lo},{f.hi}] to [{lo},{hi}]")
    if lo == hi:
        return PL((lo,), (evaluate(f, lo),))
    pts = [(lo, evaluate(f, lo))]
    pts += [(x, y) for x, y in zip(f.xs, f.ys) if lo < x < hi]
    pts.append((hi, evaluate(f, hi)))
    return pl_points(pts)


def shift(f: PL, b: Fraction) -> PL:
    """g(x) = f(x - b): the graph moved right by b."""
    return PL(tuple(x + b for x in f.xs), f.ys)


def flip(f: PL) -> PL:
    """g(x) = f(-x)."""
    return PL(tuple(-x for x in reversed(f.xs)), tuple(reversed(f.ys)))


def compose_neg(f: PL, c: Fraction) -> PL:
    """g(x) = f(c - x)."""
    return shift(flip(f), c)


def add_affine(f: PL, c: Fraction, s: Fraction) -> PL:
    """g(x) = f(x) + c + s*x."""
    return PL(f.xs, tuple(y + c + s * x for x, y in zip(f.xs, f.ys)))


def envelope(fs: Sequence[PL]) -> PL:
    """Pointwise minimum of candidates with (possibly) partial domains.

    The candidates fed in here always leave a continuous minimum: wherever one
    candidate's domain ends, another already matches or undercuts it.
    """
    fs = [f for f in fs if f is not None]
    if not fs:
        raise ValueError("no candidates")
    grid: set[Fraction] = set()
    for f in fs:
        grid.update(f.xs)
    # pairwise crossings refine the grid so each cell has one active candidate
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            f, g = fs[i], fs[j]
            lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
            if lo > hi:
                continue
            cuts = sorted({x for x in f.xs + g.xs if lo <= x <= hi} | {lo, hi})
            for u, v in zip(cuts, cuts[1:]):
                fu, fv = evaluate(f, u), evaluate(f, v)
                gu, gv = evaluate(g, u), evaluate(g, v)
                d0, d1 = fu - gu, fv - gv
                if d0 * d1 < 0:
                    grid.add(u + (v - u) * d0 / (d0 - d1))
    xs = sorted(grid)
    pts = []
    for x in xs:
        vals = [evaluate(f, x) for f in fs if f.lo <= x <= f.hi]
        pts.append((x, min(vals)))
    return pl_points(pts)


def prefix_min(f: PL) -> PL:
    """g(x) = min of f over [lo, x].

    Walking left to right, the running minimum `best` always satisfies
    best <= f(x0) at the start of each piece, so a piece only matters if it
    descends below `best`.
    """
    pts = [(f.xs[0], f.ys[0])]
    best = f.ys[0]
    for (x0, y0), (x1, y1) in zip(zip(f.xs, f.ys), zip(f.xs[1:], f.ys[1:])):
        if y1 >= best:
            pts.append((x1, best))
        else:
            if y0 > best:
                # the piece crosses the running-min level inside (x0, x1)
                t = x0 + (x1 - x0) * (best - y0) / (y1 - y0)
                pts.append((t, best))
            best = y1
            pts.append((x1, y1))
    return pl_points(pts)


def suffix_min(f: PL) -> PL:
    """g(x) = min of f over [x, hi]."""
    return flip(prefix_min(flip(f)))


def extend_left_flat(f: PL, new_lo: Fraction) -> PL:
    """Continue f to the left at its leftmost value (for saturated minima)."""
    if new_lo >= f.lo:
        return f
    return PL((new_lo,) + f.xs, (f.ys[0],) + f.ys)


def window_min(f: PL, w: Fraction) -> PL:
    """g(x) = min of f over [x - w, x], clipped to f's domain at the left.

    Attained either at the window ends (f itself / f shifted by w) or at a
    breakpoint that sits inside the window, which broadcasts its value over
    [x*, x* + w].
    """
    if w <= 0:
        raise ValueError("window width must be positive")
    cands: list[PL] = [f]
    if f.lo + w <= f.hi:
        cands.append(restrict(shift(f, w), f.lo + w, f.hi))
    for x, y in zip(f.xs, f.ys):
        hi = min(x + w, f.hi)
        if hi == x:
            cands.append(PL((x,), (y,)))
        else:
            cands.append(PL((x, hi), (y, y)))
    return envelope(cands)


# ---------------------------------------------------------------------------
# block propagation


def _block_match(T: PL, L: PL, x0, x1, y0, y1) -> tuple[PL, PL]:
    """Exit functions of a block whose symbols agree (kernel |dx - dy|)."""
    W, H = x1 - x0, y1 - y0

    def one_edge(top: PL, left: PL, a0, a1, b1, width, height):
        # bottom edge value at x  =  min over entries:
        #   top (t, _): cost |x - t - height|, split at t = x - height
        #   left (_, s): cost |s - (b1 + a0 - x)|, a distance transform of `left`
        c0 = b1 + a0
        A = add_affine(window_min(add_affine(top, ZERO, Fraction(1)), height), height, Fraction(-1))
        Bc = None
        if a0 + height <= a1:
            pm = prefix_min(add_affine(top, ZERO, Fraction(-1)))
            Bc = add_affine(restrict(shift(pm, height), a0 + height, a1), -height, Fraction(1))
        sm2 = extend_left_flat(suffix_min(add_affine(left, ZERO, Fraction(1))), b1 - width)
        C = add_affine(restrict(compose_neg(sm2, c0), a0, a1), -c0, Fraction(1))
        pmL = prefix_min(add_affine(left, ZERO, Fraction(-1)))
        D = compose_neg(pmL, c0)
        D = add_affine(restrict(D, a0, min(a1, D.hi)), c0, Fraction(-1))
        return envelope([A, Bc, C, D])

    bottom = one_edge(T, L, x0, x1, y1, W, H)
    right = one_edge(L, T, y0, y1, x1, H, W)
    return bottom, right


def _block_mismatch(T: PL, L: PL, x0, x1, y0, y1) -> tuple[PL, PL]:
    """Exit functions of a block whose symbols differ (kernel max(dx, dy))."""
    W, H = x1 - x0, y1 - y0

    def one_edge(top: PL, left: PL, a0, a1, b0, b1, width, height):
        c0 = b1 + a0
        A = add_affine(window_min(top, height), height, ZERO)
        Bc = None
        if a0 + height <= a1:
            pm = prefix_min(add_affine(top, ZERO, Fraction(-1)))
            Bc = add_affine(restrict(shift(pm, height), a0 + height, a1), ZERO, Fraction(1))
        sm = extend_left_flat(suffix_min(left), b1 - width)
        C = add_affine(restrict(compose_neg(sm, c0), a0, a1), -a0, Fraction(1))
        pmL = prefix_min(add_affine(left, ZERO, Fraction(-1)))
        D = compose_neg(pmL, c0)
        D = add_affine(restrict(D, a0, min(a1, D.hi)), b1, ZERO)
        return envelope([A, Bc, C, D])

    bottom = one_edge(T, L, x0, x1, y0, y1, W, H)
    right = one_edge(L, T, y0, y1, x0, x1, H, W)
    return bottom, right


def run_block_levenshtein(runs1: Sequence[tuple[str, int]], runs2: Sequence[tuple[str, int]]) -> Fraction:
    """Unit-cost string edit distance between two run-length encoded strings.

    runs are (symbol, count) pairs with positive integer counts; the result is
    an integer-valued Fraction, exactly equal to the expanded computation.
    """
    for sym, count in list(runs1) + list(runs2):
        if count <= 0 or int(count) != count:
            raise ValueError(f"run counts must be positive integers, got {sym}^{count}")
    if not runs1 or not runs2:
        return Fraction(sum(c for _, c in runs1) + sum(c for _, c in runs2))

    X = [ZERO]
    for _, c in runs1:
        X.append(X[-1] + c)
    Y = [ZERO]
    for _, c in runs2:
        Y.append(Y[-1] + c)

    # D(x, 0) = x along the top border; D(0, y) = y down the left border
    horiz: list[PL] = [PL((X[i], X[i + 1]), (X[i], X[i + 1])) for i in range(len(runs1))]
    for j in range(len(runs2)):
        vert = PL((Y[j], Y[j + 1]), (Y[j], Y[j + 1]))
        for i in range(len(runs1)):
            block = _block_match if runs1[i][0] == runs2[j][0] else _block_mismatch
            bottom, right = block(horiz[i], vert, X[i], X[i + 1], Y[j], Y[j + 1])
            horiz[i] = bottom
            vert = right
    return evaluate(horiz[-1], X[-1])
