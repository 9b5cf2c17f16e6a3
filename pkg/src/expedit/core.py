"""Exponent strings: sequences of symbol^exponent factors with exact rational exponents.

An exponent string generalizes a run-length encoded string: each character
carries a positive rational multiplicity instead of a positive integer count.
Values are always kept in *contraction form* (no two adjacent factors share a
symbol), which makes structural equality the right notion of equality.

All arithmetic is exact (`fractions.Fraction`); floats are rejected at the
boundary rather than converted, so no binary rounding can leak in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Protocol, Sequence, TypeVar

#: Symbols are single characters; these are claimed by the notation grammar.
RESERVED_CHARS = frozenset("^/.[]") | frozenset(" \t\n\r\f\v")

Symbol = str


class GuardExceeded(RuntimeError):
    """A configured size guard tripped before the computation started."""


def check_symbol(symbol: Symbol) -> Symbol:
    if not isinstance(symbol, str) or len(symbol) != 1:
        raise ValueError(f"symbol must be a single character, got {symbol!r}")
    if symbol in RESERVED_CHARS:
        raise ValueError(f"symbol {symbol!r} is a reserved notation character")
    return symbol


def check_exponent(value) -> Fraction:
    """Coerce to an exact positive Fraction; floats are refused, not rounded."""
    if isinstance(value, float):
        raise TypeError(
            f"float exponent {value!r} is inexact; pass Fraction, int or a string like '1.9'"
        )
    q = Fraction(value)
    if q <= 0:
        raise ValueError(f"exponent must be positive, got {q}")
    return q


def check_rational(value) -> Fraction:
    """Like check_exponent but without the positivity requirement."""
    if isinstance(value, float):
        raise TypeError(f"float value {value!r} is inexact; pass Fraction, int or str")
    return Fraction(value)


@dataclass(frozen=True)
class Factor:
    """One symbol^exponent term of a contraction form."""

    symbol: Symbol
    exponent: Fraction

    def __post_init__(self):
        check_symbol(self.symbol)
        object.__setattr__(self, "exponent", check_exponent(self.exponent))

    def __repr__(self):
        return f"{self.symbol}^{self.exponent}"


@dataclass(frozen=True)
class ExpString:
    """An exponent string in canonical contraction form.

    Construct via :func:`parse_factors` (which merges adjacent equal symbols);
    direct construction insists the factor sequence is already canonical.
    The empty tuple is the identity λ.
    """

    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        for left, right in zip(factors, factors[1:]):
            if left.symbol == right.symbol:
                raise ValueError(
                    f"not in contraction form: adjacent factors share symbol {left.symbol!r}"
                )

    def __mul__(self, other: "ExpString") -> "ExpString":
        return concat(self, other)

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    def __repr__(self):
        if not self.factors:
            return "ExpString(λ)"
        return "ExpString(%s)" % " ".join(repr(f) for f in self.factors)


#: The empty exponent string (the monoid identity).
EMPTY = ExpString()


# ---------------------------------------------------------------------------
# generic semigroup interface
#
# Exponents live in a semigroup: all the contraction machinery needs is an
# associative combine and equality on symbols.  The two shipped instances are
# the additive positive naturals and the additive positive rationals; anything
# else (tests use max and tuple concatenation) plugs in the same way.

E = TypeVar("E")


class Semigroup(Protocol[E]):
    def combine(self, a: E, b: E) -> E:
        ...


class AdditiveNaturals:
    """Positive integers under addition."""

    def combine(self, a: int, b: int) -> int:
        return a + b


class AdditivePositiveRationals:
    """Positive rationals under addition."""

    def combine(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b


NAT_ADD = AdditiveNaturals()
QPOS_ADD = AdditivePositiveRationals()


def contract(pairs: Iterable[tuple[Symbol, E]], semigroup: Semigroup[E]) -> tuple[tuple[Symbol, E], ...]:
    """Merge maximal runs of equal adjacent symbols via the semigroup combine.

    This is the generic contraction step; it knows nothing about positivity
    or rationals.  Idempotent: contracting a contraction is a no-op.
    """
    out: list[tuple[Symbol, E]] = []
    for symbol, value in pairs:
        if out and out[-1][0] == symbol:
            out[-1] = (symbol, semigroup.combine(out[-1][1], value))
        else:
            out.append((symbol, value))
    return tuple(out)


# ---------------------------------------------------------------------------
# construction and the monoid


def parse_factors(raw: Iterable[tuple[Symbol, object]]) -> ExpString:
    """Build the unique canonical ExpString from (symbol, exponent) pairs.

    Adjacent pairs with equal symbols merge by exponent addition, so every way
    of splitting the same underlying data parses to the same value. Exponents
    must be positive; ints, strings and Fractions are accepted (never floats).
    """
    checked = [(check_symbol(s), check_exponent(e)) for s, e in raw]
    merged = contract(checked, QPOS_ADD)
    return ExpString(tuple(Factor(s, e) for s, e in merged))


def concat(p: ExpString, q: ExpString) -> ExpString:
    """Monoid product; touching factors with equal symbols fuse."""
    if not p.factors:
        return q
    if not q.factors:
        return p
    left, right = p.factors[-1], q.factors[0]
    if left.symbol == right.symbol:
        middle = Factor(left.symbol, left.exponent + right.exponent)
        return ExpString(p.factors[:-1] + (middle,) + q.factors[1:])
    return ExpString(p.factors + q.factors)


def length(p: ExpString) -> Fraction:
    """Total duration: the exact rational sum of all exponents (0 for λ)."""
    return sum((f.exponent for f in p.factors), Fraction(0))


def flen(p: ExpString) -> int:
    """Number of factors in the contraction form."""
    return len(p.factors)


def prefix_sums(p: ExpString) -> tuple[Fraction, ...]:
    """Factor boundaries: 0, e1, e1+e2, ..., len(p).  Has flen(p)+1 entries."""
    sums = [Fraction(0)]
    for f in p.factors:
        sums.append(sums[-1] + f.exponent)
    return tuple(sums)


def char_at(p: ExpString, x) -> Symbol:
    """Symbol occupying position x, for 0 <= x < len(p); intervals are
    left-closed, so p[0] is the first symbol and p[len(p)] is out of range."""
    pos = check_rational(x)
    if pos >= 0:
        running = Fraction(0)
        for f in p.factors:
            running += f.exponent
            if pos < running:
                return f.symbol
    raise IndexError(f"position {pos} outside [0, {length(p)})")


def split_at(p: ExpString, x) -> tuple[ExpString, ExpString]:
    """Split p into (u, v) with p = u·v and len(u) = x; factors may be cut."""
    pos = check_rational(x)
    if pos < 0 or pos > length(p):
        raise IndexError(f"split position {pos} outside [0, {length(p)}]")
    head: list[Factor] = []
    rest = list(p.factors)
    remaining = pos
    while rest and remaining > 0:
        f = rest[0]
        if f.exponent <= remaining:
            head.append(f)
            remaining -= f.exponent
            rest.pop(0)
        else:
            head.append(Factor(f.symbol, remaining))
            rest[0] = Factor(f.symbol, f.exponent - remaining)
            remaining = Fraction(0)
    return ExpString(tuple(head)), ExpString(tuple(rest))


def is_prefix(q: ExpString, p: ExpString) -> bool:
    """True iff p = q·v for some v; the boundary factor may be split."""
    fq, fp = q.factors, p.factors
    if not fq:
        return True
    if len(fq) > len(fp):
        return False
    if any(a != b for a, b in zip(fq[:-1], fp)):
        return False
    last, against = fq[-1], fp[len(fq) - 1]
    return last.symbol == against.symbol and last.exponent <= against.exponent


def is_suffix(q: ExpString, p: ExpString) -> bool:
    """True iff p = u·q for some u."""
    fq, fp = q.factors, p.factors
    if not fq:
        return True
    if len(fq) > len(fp):
        return False
    if any(a != b for a, b in zip(reversed(fq[1:]), reversed(fp))):
        return False
    first, against = fq[0], fp[len(fp) - len(fq)]
    return first.symbol == against.symbol and first.exponent <= against.exponent


def is_infix(q: ExpString, p: ExpString) -> bool:
    """True iff p = u·q·v for some u, v; both boundary factors may be split."""
    fq, fp = q.factors, p.factors
    m, n = len(fq), len(fp)
    if m == 0:
        return True
    if m > n:
        return False
    if m == 1:
        f = fq[0]
        return any(g.symbol == f.symbol and g.exponent >= f.exponent for g in fp)
    for i in range(n - m + 1):
        first, last = fq[0], fq[m - 1]
        g0, g1 = fp[i], fp[i + m - 1]
        if (
            g0.symbol == first.symbol
            and g0.exponent >= first.exponent
            and g1.symbol == last.symbol
            and g1.exponent >= last.exponent
            and all(fp[i + t] == fq[t] for t in range(1, m - 1))
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# the isomorphism with plain strings (integer exponents only)


def to_plain_string(p: ExpString) -> str:
    """Expand a^n to n repetitions; errors on non-integer exponents."""
    parts = []
    for f in p.factors:
        if f.exponent.denominator != 1:
            raise ValueError(f"non-integer exponent {f.exponent} cannot expand to a plain string")
        parts.append(f.symbol * f.exponent.numerator)
    return "".join(parts)


def from_plain_string(s: Sequence[str]) -> ExpString:
    """Run-length encode a plain string; inverse of to_plain_string."""
    return ExpString(
        tuple(
            Factor(symbol, Fraction(sum(1 for _ in group)))
            for symbol, group in itertools.groupby(s)
        )
    )


def scale(p: ExpString, k) -> ExpString:
    """Multiply every exponent by the positive rational k."""
    factor = check_exponent(k)
    return ExpString(tuple(Factor(f.symbol, f.exponent * factor) for f in p.factors))
