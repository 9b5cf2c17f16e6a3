"""Cost models for exp-edit operations and their validity checks.

An edit on exponent strings is one of
    insert   λ → b^q
    delete   a^q → λ
    substitute a^q → b^q        (the exponent is preserved)
and costs q times the per-symbol weight. A model is *valid* when weights are
positive (zero only on the substitution diagonal) and the triangle inequality
holds over Σ ∪ {λ}, where the λ legs are the insert/delete weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .core import Symbol, check_rational, check_exponent

#: stand-in for the empty string when a triangle witness mentions it
LAMBDA_MARK = "λ"


class MissingCost(KeyError):
    """A required weight is absent from the model."""


@dataclass(frozen=True)
class CostModel:
    """Per-symbol weights; treat as immutable once built.

    w_sub holds ordered pairs; an absent diagonal entry reads as 0 (a valid
    model cannot have anything else there anyway). Absent off-diagonal
    entries are genuinely missing — the file loader completes them, the
    in-memory API reports them.
    """

    w_ins: Mapping[Symbol, Fraction]
    w_del: Mapping[Symbol, Fraction]
    w_sub: Mapping[tuple[Symbol, Symbol], Fraction]

    def ins(self, a: Symbol) -> Fraction:
        try:
            return self.w_ins[a]
        except KeyError:
            raise MissingCost(f"no insertion weight for {a!r}") from None

    def delete(self, a: Symbol) -> Fraction:
        try:
            return self.w_del[a]
        except KeyError:
            raise MissingCost(f"no deletion weight for {a!r}") from None

    def sub(self, a: Symbol, b: Symbol) -> Fraction:
        if a == b:
            return self.w_sub.get((a, b), Fraction(0))
        try:
            return self.w_sub[(a, b)]
        except KeyError:
            raise MissingCost(f"no substitution weight for {a!r}->{b!r}") from None

    def alphabet(self) -> frozenset[Symbol]:
        syms = set(self.w_ins) | set(self.w_del)
        for a, b in self.w_sub:
            syms.add(a)
            syms.add(b)
        return frozenset(syms)


def unit_cost_model(alphabet: Iterable[Symbol]) -> CostModel:
    """The Levenshtein model: every ins/del/cross-substitution costs 1."""
    syms = sorted(set(alphabet))
    if not syms:
        raise ValueError("unit cost model needs a nonempty alphabet")
    one = Fraction(1)
    return CostModel(
        w_ins={a: one for a in syms},
        w_del={a: one for a in syms},
        w_sub={(a, b): (Fraction(0) if a == b else one) for a in syms for b in syms},
    )


def is_unit_cost(m: CostModel, alphabet: Iterable[Symbol]) -> bool:
    """True iff m restricted to the alphabet is exactly the unit model."""
    syms = sorted(set(alphabet))
    try:
        return all(m.ins(a) == 1 and m.delete(a) == 1 for a in syms) and all(
            m.sub(a, b) == (0 if a == b else 1) for a in syms for b in syms
        )
    except MissingCost:
        return False


@dataclass(frozen=True)
class Validity:
    """Outcome of validate(): ok, or the first problem found.

    kind is "valid", "incomplete" (missing entries — not the same thing as an
    invalid model) or "invalid"; witness carries the offending symbols with
    None standing for λ.
    """

    ok: bool
    kind: str = "valid"
    detail: str = ""
    witness: tuple[Optional[Symbol], ...] = ()


def _witness_str(witness: Sequence[Optional[Symbol]]) -> str:
    return "→".join(LAMBDA_MARK if s is None else s for s in witness)


def validate(m: CostModel, alphabet: Iterable[Symbol]) -> Validity:
    """Check positivity, zero diagonal, and the triangle inequality over Σ∪{λ}.

    Returns the first violated triple on failure; missing entries are
    reported as incompleteness, which is distinct from invalidity.
    """
    syms = sorted(set(alphabet))
    missing = []
    for a in syms:
        if a not in m.w_ins:
            missing.append(f"ins {a}")
        if a not in m.w_del:
            missing.append(f"del {a}")
    for a in syms:
        for b in syms:
            if a != b and (a, b) not in m.w_sub:
                missing.append(f"sub {a} {b}")
    if missing:
        return Validity(False, "incomplete", "missing entries: " + ", ".join(missing))

    for a in syms:
        if m.ins(a) <= 0:
            return Validity(False, "invalid", f"w_ins({a}) = {m.ins(a)} is not positive", (None, a))
        if m.delete(a) <= 0:
            return Validity(False, "invalid", f"w_del({a}) = {m.delete(a)} is not positive", (a, None))
    for a in syms:
        diag = m.w_sub.get((a, a), Fraction(0))
        if diag != 0:
            return Validity(False, "invalid", f"w_sub({a},{a}) = {diag} must be 0", (a, a))
        for b in syms:
            if a != b and m.sub(a, b) <= 0:
                return Validity(False, "invalid", f"w_sub({a},{b}) = {m.sub(a, b)} is not positive", (a, b))

    # triangle over Σ ∪ {λ}: w(x→y) ≤ w(x→z) + w(z→y)
    nodes: list[Optional[Symbol]] = [None] + syms

    def w(x: Optional[Symbol], y: Optional[Symbol]) -> Fraction:
        if x == y:
            return Fraction(0)
        if x is None:
            return m.ins(y)
        if y is None:
            return m.delete(x)
        return m.sub(x, y)

    for x in nodes:
        for y in nodes:
            if x == y:
                continue
            direct = w(x, y)
            for z in nodes:
                if z == x or z == y:
                    continue
                via = w(x, z) + w(z, y)
                if direct > via:
                    triple = (x, z, y)
                    return Validity(
                        False,
                        "invalid",
                        f"triangle violated: w({_witness_str((x, y))}) = {direct}"
                        f" > {via} = w({_witness_str((x, z))}) + w({_witness_str((z, y))})"
                        f" (witness {_witness_str(triple)})",
                        triple,
                    )
    return Validity(True)


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class EditOp:
    """One exp-edit operation with a position.

    src=None encodes insertion, dst=None deletion, both set substitution.
    A substitution keeps its exponent on both sides by construction (there is
    only one exponent field, so a^q → b^r with q ≠ r is unrepresentable).
    `at` is the rational offset in the evolving string where the op applies.
    """

    src: Optional[Symbol]
    dst: Optional[Symbol]
    exponent: Fraction
    at: Fraction = Fraction(0)

    def __post_init__(self):
        if self.src is None and self.dst is None:
            raise ValueError("an edit needs at least one side")
        object.__setattr__(self, "exponent", check_exponent(self.exponent))
        object.__setattr__(self, "at", check_rational(self.at))
        if self.at < 0:
            raise ValueError(f"negative position {self.at}")

    @property
    def kind(self) -> str:
        if self.src is None:
            return "ins"
        if self.dst is None:
            return "del"
        return "sub"

    def __repr__(self):
        e, a = self.exponent, self.at
        if self.src is None:
            return f"ins {self.dst}^{e} @ {a}"
        if self.dst is None:
            return f"del {self.src}^{e} @ {a}"
        return f"sub {self.src}^{e}->{self.dst}^{e} @ {a}"


def op_cost(m: CostModel, op: EditOp) -> Fraction:
    """Exponent-scaled cost of one operation."""
    if op.src is None:
        return op.exponent * m.ins(op.dst)
    if op.dst is None:
        return op.exponent * m.delete(op.src)
    return op.exponent * m.sub(op.src, op.dst)


def script_cost(m: CostModel, ops: Iterable[EditOp]) -> Fraction:
    return sum((op_cost(m, op) for op in ops), Fraction(0))
