"""Shared generators and independent reference implementations.

The reference distance here (`brute_exp_distance`) deliberately shares no code
with the library: a plain two-row weighted Levenshtein over expanded character
lists, with the common-denominator scaling recomputed from scratch. Library
results are always compared against it, never against themselves.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from expedit import ExpMatching, Segment, core
from expedit.cost import CostModel

ALPHABET = "abcd"


# ---------------------------------------------------------------------------
# random.Random-based generators (deterministic loops for the acceptance gate)


def rand_exp_string(
    rng: random.Random,
    max_flen: int,
    alphabet: str = ALPHABET,
    max_num: int = 4,
    max_den: int = 1,
    min_flen: int = 0,
):
    """Random canonical exponent string; max_den=1 gives integer exponents."""
    n = rng.randint(min_flen, max_flen)
    factors, prev = [], None
    for _ in range(n):
        sym = rng.choice([c for c in alphabet if c != prev])
        factors.append((sym, Fraction(rng.randint(1, max_num), rng.randint(1, max_den))))
        prev = sym
    return core.parse_factors(factors)


def rand_int_string_by_length(rng: random.Random, max_expanded_len: int, alphabet: str = ALPHABET):
    """Integer exponents with expanded length at most max_expanded_len."""
    left = rng.randint(0, max_expanded_len)
    factors, prev = [], None
    while left > 0:
        sym = rng.choice([c for c in alphabet if c != prev])
        e = rng.randint(1, min(left, 5))
        factors.append((sym, Fraction(e)))
        prev = sym
        left -= e
    return core.parse_factors(factors)


def metric_closure_model(rng: random.Random, alphabet: str = ALPHABET) -> CostModel:
    """A random valid non-unit cost model: seed positive weights on the
    complete digraph over the alphabet plus the empty word, then close under
    the triangle inequality (all-pairs shortest paths)."""
    nodes: list = list(alphabet) + [None]
    w = {
        (x, y): Fraction(rng.randint(1, 8), rng.randint(1, 4))
        for x in nodes
        for y in nodes
        if x is not y
    }
    for mid in nodes:
        for x in nodes:
            for y in nodes:
                if x is not y and x is not mid and y is not mid:
                    through = w[(x, mid)] + w[(mid, y)]
                    if through < w[(x, y)]:
                        w[(x, y)] = through
    return CostModel(
        w_ins={s: w[(None, s)] for s in alphabet},
        w_del={s: w[(s, None)] for s in alphabet},
        w_sub={(a, b): w[(a, b)] for a in alphabet for b in alphabet if a != b},
    )


def rand_matching(rng: random.Random, p, q) -> ExpMatching:
    """Random valid matching: a monotone walk placing segments with random
    gaps, all coordinates small-denominator rationals."""
    l1, l2 = core.length(p), core.length(q)
    segs = []
    x = y = Fraction(0)
    while True:
        x = x + Fraction(rng.randint(0, 4), rng.randint(1, 3))
        y = y + Fraction(rng.randint(0, 4), rng.randint(1, 3))
        room = min(l1 - x, l2 - y)
        if room <= 0:
            break
        h = min(room, Fraction(rng.randint(1, 5), rng.randint(1, 3)))
        segs.append(Segment(x, y, h))
        x, y = x + h, y + h
        if rng.random() < 0.3:
            break
    return ExpMatching(tuple(segs), (l1, l2))


# ---------------------------------------------------------------------------
# independent reference distance


def weighted_levenshtein(a, b, w_ins, w_del, w_sub) -> Fraction:
    """Textbook two-row DP over character sequences with per-symbol weights."""
    m = len(b)
    prev = [Fraction(0)] * (m + 1)
    for j in range(1, m + 1):
        prev[j] = prev[j - 1] + w_ins[b[j - 1]]
    for i in range(1, len(a) + 1):
        cur = [prev[0] + w_del[a[i - 1]]]
        for j in range(1, m + 1):
            diag = prev[j - 1] + (Fraction(0) if a[i - 1] == b[j - 1] else w_sub[(a[i - 1], b[j - 1])])
            cur.append(min(diag, prev[j] + w_del[a[i - 1]], cur[j - 1] + w_ins[b[j - 1]]))
        prev = cur
    return prev[m]


def brute_exp_distance(p, q, m: CostModel) -> Fraction:
    """Expand both strings by their common denominator, run the textbook DP,
    scale back. Shares no code with the library engines."""
    c = 1
    for s in (p, q):
        for f in s.factors:
            c = math.lcm(c, f.exponent.denominator)

    def expand(s):
        out = []
        for f in s.factors:
            out.extend([f.symbol] * (f.exponent.numerator * (c // f.exponent.denominator)))
        return out

    syms = {f.symbol for s in (p, q) for f in s.factors}
    w_ins = {s: m.ins(s) for s in syms}
    w_del = {s: m.delete(s) for s in syms}
    w_sub = {(x, y): m.sub(x, y) for x in syms for y in syms}
    return weighted_levenshtein(expand(p), expand(q), w_ins, w_del, w_sub) / c


# ---------------------------------------------------------------------------
# hypothesis strategies


@st.composite
def exponents(draw, max_num: int = 6, max_den: int = 4):
    return Fraction(draw(st.integers(1, max_num)), draw(st.integers(1, max_den)))


@st.composite
def exp_strings(
    draw,
    alphabet: str = ALPHABET,
    max_flen: int = 5,
    max_num: int = 6,
    max_den: int = 4,
    min_flen: int = 0,
):
    n = draw(st.integers(min_flen, max_flen))
    factors = []
    prev = None
    for _ in range(n):
        sym = draw(st.sampled_from([c for c in alphabet if c != prev]))
        factors.append((sym, draw(exponents(max_num, max_den))))
        prev = sym
    return core.parse_factors(factors)


@st.composite
def int_exp_strings(draw, alphabet: str = ALPHABET, max_flen: int = 5, max_num: int = 5):
    return draw(exp_strings(alphabet, max_flen, max_num, max_den=1))
