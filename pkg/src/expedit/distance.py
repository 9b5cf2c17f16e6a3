"""The exp-edit distance engine.

Pipeline: if either input is empty the closed form applies directly; otherwise
scale both inputs by the least common denominator C of their exponents (giving
a pair of integer run-length strings), run a string edit distance backend on
the scaled pair, and divide by C. Two backends: a reference dynamic program
over the expanded character sequences (any valid cost model, recovers an edit
script) and a run-compressed path (unit costs only, see runblock).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import core
from .core import EMPTY, ExpString, Factor, GuardExceeded
from .cost import CostModel, EditOp, is_unit_cost
from .runblock import run_block_levenshtein

EditScript = tuple[EditOp, ...]

BACKENDS = ("expanded", "run_block")


@dataclass(frozen=True)
class EngineConfig:
    """Size guards; exceeding one raises GuardExceeded instead of grinding."""

    expanded_cell_guard: int = 1_000_000


@dataclass(frozen=True)
class ScaledPair:
    """Two inputs scaled by their common denominator c to integer exponents."""

    c: int
    w1: ExpString
    w2: ExpString


@dataclass(frozen=True)
class DistanceReport:
    distance: Fraction
    backend: str
    script: Optional[EditScript] = None


def common_denominator(p: ExpString, q: ExpString) -> int:
    """lcm of all exponent denominators of both inputs (1 when there are none)."""
    c = 1
    for s in (p, q):
        for f in s.factors:
            c = math.lcm(c, f.exponent.denominator)
    return c


def scaled_pair(p: ExpString, q: ExpString) -> ScaledPair:
    c = common_denominator(p, q)
    return ScaledPair(c, core.scale(p, c), core.scale(q, c))


def _expand_runs(w: ExpString) -> list[str]:
    chars: list[str] = []
    for f in w.factors:
        if f.exponent.denominator != 1:
            raise ValueError(f"exponent {f.exponent} is not integral; scale first")
        chars.extend([f.symbol] * f.exponent.numerator)
    return chars


def string_edit_distance_expanded(
    w1: ExpString, w2: ExpString, m: CostModel, config: EngineConfig = EngineConfig()
) -> tuple[Fraction, EditScript]:
    """Alignment DP over the expanded character sequences.

    Returns the exact optimum and one optimal script (runs of identical ops
    merged into exponent-weighted ops). Ties between DP predecessors break in
    favor of substitution, then deletion, then insertion, so the script is
    deterministic. The hot loop runs on plain ints: every weight is
    pre-multiplied by the lcm of the model's denominators, and the single
    exact division happens at the end.
    """
    s1 = _expand_runs(w1)
    s2 = _expand_runs(w2)
    n1, n2 = len(s1), len(s2)
    cells = (n1 + 1) * (n2 + 1)
    if cells > config.expanded_cell_guard:
        raise GuardExceeded(
            f"expanded DP needs {cells} cells ({n1}+1 x {n2}+1), guard is {config.expanded_cell_guard}"
        )

    alphabet = sorted(set(s1) | set(s2))
    code = {a: i for i, a in enumerate(alphabet)}
    weights: list[Fraction] = []
    weights += [m.delete(a) for a in alphabet]
    weights += [m.ins(a) for a in alphabet]
    weights += [m.sub(a, b) for a in alphabet for b in alphabet]
    denom = 1
    for wgt in weights:
        denom = math.lcm(denom, wgt.denominator)
    cd = [int(m.delete(a) * denom) for a in alphabet]
    ci = [int(m.ins(a) * denom) for a in alphabet]
    cs = [[int(m.sub(a, b) * denom) for b in alphabet] for a in alphabet]

    t1 = [code[a] for a in s1]
    t2 = [code[b] for b in s2]

    # parent codes: 0 = diagonal (substitute/match), 1 = up (delete), 2 = left (insert)
    prev = [0] * (n2 + 1)
    for j in range(1, n2 + 1):
        prev[j] = prev[j - 1] + ci[t2[j - 1]]
    parents = [bytearray(n2 + 1)]
    for j in range(1, n2 + 1):
        parents[0][j] = 2

    for i in range(1, n1 + 1):
        a = t1[i - 1]
        del_a = cd[a]
        sub_a = cs[a]
        row = [0] * (n2 + 1)
        par = bytearray(n2 + 1)
        row[0] = prev[0] + del_a
        par[0] = 1
        for j in range(1, n2 + 1):
            b = t2[j - 1]
            best = prev[j - 1] + sub_a[b]
            choice = 0
            up = prev[j] + del_a
            if up < best:
                best = up
                choice = 1
            left = row[j - 1] + ci[b]
            if left < best:
                best = left
                choice = 2
            row[j] = best
            par[j] = choice
        prev = row
        parents.append(par)

    # backtrace, then a forward pass that merges runs and assigns positions
    moves: list[int] = []
    i, j = n1, n2
    while i > 0 or j > 0:
        move = parents[i][j]
        moves.append(move)
        if move == 0:
            i -= 1
            j -= 1
        elif move == 1:
            i -= 1
        else:
            j -= 1
    moves.reverse()

    ops: list[EditOp] = []
    acc: Optional[tuple[Optional[str], Optional[str], int, int]] = None  # src, dst, count, at

    def flush():
        nonlocal acc
        if acc is not None:
            src, dst, count, at = acc
            ops.append(EditOp(src, dst, Fraction(count), Fraction(at)))
            acc = None

    pos = 0
    i = j = 0
    for move in moves:
        if move == 0:
            a, b = s1[i], s2[j]
            i += 1
            j += 1
            if a == b:
                flush()
            else:
                if acc is not None and acc[0] == a and acc[1] == b:
                    acc = (a, b, acc[2] + 1, acc[3])
                else:
                    flush()
                    acc = (a, b, 1, pos)
            pos += 1
        elif move == 1:
            a = s1[i]
            i += 1
            if acc is not None and acc[0] == a and acc[1] is None:
                acc = (a, None, acc[2] + 1, acc[3])
            else:
                flush()
                acc = (a, None, 1, pos)
        else:
            b = s2[j]
            j += 1
            if acc is not None and acc[0] is None and acc[1] == b:
                acc = (None, b, acc[2] + 1, acc[3])
            else:
                flush()
                acc = (None, b, 1, pos)
            pos += 1
    flush()

    return Fraction(prev[n2], denom), tuple(ops)


def string_edit_distance_run_block(w1: ExpString, w2: ExpString) -> Fraction:
    """Levenshtein distance of two integer run-length strings, computed on the
    run grid in time independent of the run lengths (unit costs)."""
    for w in (w1, w2):
        for f in w.factors:
            if f.exponent.denominator != 1:
                raise ValueError(f"exponent {f.exponent} is not integral; scale first")
    return run_block_levenshtein(
        [(f.symbol, f.exponent.numerator) for f in w1.factors],
        [(f.symbol, f.exponent.numerator) for f in w2.factors],
    )


def _closed_form(p: ExpString, q: ExpString, m: CostModel) -> tuple[Fraction, EditScript]:
    """Distance when either side is empty: delete everything / insert everything."""
    if not p.factors and not q.factors:
        return Fraction(0), ()
    if not p.factors:
        total = Fraction(0)
        ops = []
        at = Fraction(0)
        for f in q.factors:
            total += f.exponent * m.ins(f.symbol)
            ops.append(EditOp(None, f.symbol, f.exponent, at))
            at += f.exponent
        return total, tuple(ops)
    total = Fraction(0)
    ops = []
    for f in p.factors:
        total += f.exponent * m.delete(f.symbol)
        ops.append(EditOp(f.symbol, None, f.exponent, Fraction(0)))
    return total, tuple(ops)


def exp_edit_distance(
    p: ExpString,
    q: ExpString,
    m: CostModel,
    backend: str = "expanded",
    config: EngineConfig = EngineConfig(),
) -> DistanceReport:
    """Exact exp-edit distance between two exponent strings.

    Empty inputs short-circuit to the closed forms; otherwise the pair is
    scaled to integers by the common denominator, the chosen backend computes
    the string edit distance, and the result is divided back. The expanded
    backend also reports an optimal edit script; run_block (unit costs only)
    reports the bare distance.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")

    if not p.factors or not q.factors:
        dist, script = _closed_form(p, q, m)
        return DistanceReport(dist, backend, script)

    pair = scaled_pair(p, q)
    if backend == "expanded":
        d, scaled_ops = string_edit_distance_expanded(pair.w1, pair.w2, m, config)
        script = tuple(
            EditOp(op.src, op.dst, op.exponent / pair.c, op.at / pair.c) for op in scaled_ops
        )
        return DistanceReport(d / pair.c, backend, script)

    alphabet = {f.symbol for f in p.factors} | {f.symbol for f in q.factors}
    if not is_unit_cost(m, alphabet):
        raise ValueError("run_block backend supports only the unit cost model")
    d = string_edit_distance_run_block(pair.w1, pair.w2)
    return DistanceReport(d / pair.c, backend, None)


def apply_script(p: ExpString, ops) -> ExpString:
    """Replay an edit script; each op's position addresses the current string."""
    cur = p
    for op in ops:
        x = op.at
        if x > core.length(cur):
            raise ValueError(f"op {op!r} positioned past the end of {cur!r}")
        head, rest = core.split_at(cur, x)
        if op.src is None:
            cur = core.concat(head, core.concat(ExpString((Factor(op.dst, op.exponent),)), rest))
            continue
        if core.length(rest) < op.exponent:
            raise ValueError(f"op {op!r} does not fit at position {x} of {cur!r}")
        mid, tail = core.split_at(rest, op.exponent)
        if core.flen(mid) != 1 or mid.factors[0].symbol != op.src:
            raise ValueError(f"op {op!r} expects {op.src}^{op.exponent} at position {x}, found {mid!r}")
        if op.dst is None:
            cur = core.concat(head, tail)
        else:
            cur = core.concat(head, core.concat(ExpString((Factor(op.dst, op.exponent),)), tail))
    return cur
