"""Command-line workflows: notation parsing, file ingestion, and subcommands.

Notation grammar (an artifact convention — symbols are single characters so no
whitespace is ever required):

    string   := [ '[' ] item* [ ']' ]
    item     := SYMBOL [ '^' exponent ]
    exponent := DIGITS | DIGITS '.' DIGITS | DIGITS '/' DIGITS

whitespace between items is ignored; a missing exponent means 1; decimals are
converted exactly (1.9 -> 19/10), never through binary floats. `^ / . [ ]` and
whitespace are reserved and cannot be symbols; anything else (including digits)
can.

Cost-model files are line-oriented: `ins SYM COST`, `del SYM COST`,
`sub SYM SYM COST`, with `#` comments. Absent substitution entries over the
file's alphabet default to del+ins (triangle-safe); absent diagonals are 0.

Symbol-map files remap multi-character tokens (IPA digraphs and such) to
single-character symbols before parsing: `TOKEN<TAB>SYMBOL` per line, applied
longest token first.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import core, cost, distance, matching
from .core import ExpString, GuardExceeded
from .cost import CostModel, EditOp, MissingCost

_EXPONENT_CHARS = frozenset("0123456789./")
_DIGITS = frozenset("0123456789")


class NotationError(ValueError):
    """Text that does not follow the exponent-string grammar."""


class CostFileError(ValueError):
    """A cost-model file that cannot be read (distinct from an invalid model)."""


class DocumentError(ValueError):
    """A notation document that cannot be ingested."""


# ---------------------------------------------------------------------------
# notation


def _rational_literal(tok: str, what: str) -> Fraction:
    digits = "0123456789"
    ok = (
        tok
        and all(c in _EXPONENT_CHARS for c in tok)
        and (
            all(c in digits for c in tok)
            or (
                tok.count(".") == 1
                and tok.count("/") == 0
                and all(part and all(c in digits for c in part) for part in tok.split("."))
            )
            or (
                tok.count("/") == 1
                and tok.count(".") == 0
                and all(part and all(c in digits for c in part) for part in tok.split("/"))
            )
        )
    )
    if not ok:
        raise NotationError(f"malformed {what} {tok!r}" if tok else f"empty {what}")
    return Fraction(tok)


def parse_notation(text: str) -> ExpString:
    """Parse notation into a canonical exponent string (runs merged)."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    pairs: list[tuple[str, Fraction]] = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch in core.RESERVED_CHARS:
            raise NotationError(f"unexpected {ch!r} at position {i}")
        i += 1
        exponent = Fraction(1)
        if i < len(s) and s[i] == "^":
            i += 1
            j = i
            while j < len(s) and s[j] in _EXPONENT_CHARS:
                j += 1
            exponent = _rational_literal(s[i:j], "exponent")
            if exponent <= 0:
                raise NotationError(f"exponent must be positive, got {s[i:j]}")
            i = j
        pairs.append((ch, exponent))
    return core.parse_factors(pairs)


def _decimal_if_exact(q: Fraction) -> str:
    """The exact decimal literal for q when one exists, else 'num/den'."""
    rest = q.denominator
    twos = fives = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return str(q)
    k = max(twos, fives)
    if k == 0:
        return str(q.numerator)
    scaled = str(q.numerator * 10**k // q.denominator).rjust(k + 1, "0")
    return scaled[:-k] + "." + scaled[-k:]


FORMAT_STYLES = ("fraction", "decimal-if-exact")


def format_notation(p: ExpString, style: str = "fraction") -> str:
    """Render notation that parse_notation maps back to p exactly."""
    if style not in FORMAT_STYLES:
        raise ValueError(f"unknown style {style!r}; expected one of {FORMAT_STYLES}")
    out: list[str] = []
    for f in p.factors:
        if f.exponent == 1:
            chunk = f.symbol
        elif style == "fraction":
            chunk = f"{f.symbol}^{f.exponent}"
        else:
            chunk = f"{f.symbol}^{_decimal_if_exact(f.exponent)}"
        # a digit symbol after exponent digits would be munched into the
        # exponent on re-parse; a space keeps the boundary
        if out and out[-1][-1] in _DIGITS and chunk[0] in _DIGITS:
            out.append(" ")
        out.append(chunk)
    return "".join(out)


# ---------------------------------------------------------------------------
# files


def parse_cost_model(text: str) -> CostModel:
    """Read a cost-model document; see the module docstring for the format."""
    w_ins: dict[str, Fraction] = {}
    w_del: dict[str, Fraction] = {}
    w_sub: dict[tuple[str, str], Fraction] = {}

    def symbol_tok(tok: str, ln: int) -> str:
        try:
            return core.check_symbol(tok)
        except ValueError as exc:
            raise CostFileError(f"line {ln}: {exc}") from None

    def cost_tok(tok: str, ln: int) -> Fraction:
        try:
            return _rational_literal(tok, "cost")
        except NotationError as exc:
            raise CostFileError(f"line {ln}: {exc}") from None

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("ins", "del") and len(parts) == 3:
            table = w_ins if parts[0] == "ins" else w_del
            sym = symbol_tok(parts[1], ln)
            if sym in table:
                raise CostFileError(f"line {ln}: duplicate {parts[0]} entry for {sym!r}")
            table[sym] = cost_tok(parts[2], ln)
        elif parts[0] == "sub" and len(parts) == 4:
            a, b = symbol_tok(parts[1], ln), symbol_tok(parts[2], ln)
            if (a, b) in w_sub:
                raise CostFileError(f"line {ln}: duplicate sub entry for {a!r} -> {b!r}")
            w_sub[(a, b)] = cost_tok(parts[3], ln)
        else:
            raise CostFileError(
                f"line {ln}: expected 'ins SYM COST', 'del SYM COST' or 'sub SYM SYM COST'"
            )

    for a in sorted(w_del):
        for b in sorted(w_ins):
            if a != b and (a, b) not in w_sub:
                w_sub[(a, b)] = w_del[a] + w_ins[b]
    return CostModel(w_ins, w_del, w_sub)


def load_cost_model(path: str) -> CostModel:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_cost_model(fh.read())
    except OSError as exc:
        raise CostFileError(f"cannot read {path}: {exc}") from None


def parse_document(text: str) -> list[tuple[str, ExpString]]:
    """Read an `id<TAB>notation` document; `#` lines and blanks are skipped."""
    entries: list[tuple[str, ExpString]] = []
    seen: set[str] = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in raw:
            raise DocumentError(f"line {ln}: expected 'id<TAB>notation'")
        ident, notation = raw.split("\t", 1)
        ident = ident.strip()
        if not ident:
            raise DocumentError(f"line {ln}: empty id")
        if ident in seen:
            raise DocumentError(f"line {ln}: duplicate id {ident!r}")
        seen.add(ident)
        try:
            entries.append((ident, parse_notation(notation)))
        except (NotationError, ValueError) as exc:
            raise DocumentError(f"line {ln} ({ident!r}): {exc}") from None
    return entries


def parse_symbol_map(text: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "\t" not in line:
            raise DocumentError(f"line {ln}: expected 'TOKEN<TAB>SYMBOL'")
        token, sym = line.split("\t", 1)
        sym = sym.strip()
        if not token or token in mapping:
            raise DocumentError(f"line {ln}: empty or duplicate token")
        mapping[token] = core.check_symbol(sym)
    return mapping


def apply_symbol_map(text: str, mapping: dict[str, str]) -> str:
    """Replace tokens longest-first so digraphs beat their prefixes."""
    out: list[str] = []
    tokens = sorted(mapping, key=len, reverse=True)
    i = 0
    while i < len(text):
        for token in tokens:
            if text.startswith(token, i):
                out.append(mapping[token])
                i += len(token)
                break
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


# ---------------------------------------------------------------------------
# subcommands


def _auto_model(*strings: ExpString) -> CostModel:
    alphabet = {f.symbol for s in strings for f in s.factors}
    return cost.unit_cost_model(alphabet or {"a"})


def _read_notation(arg: str, symbol_map: Optional[dict[str, str]]) -> ExpString:
    if symbol_map:
        arg = apply_symbol_map(arg, symbol_map)
    return parse_notation(arg)


def _format_value(value: Fraction, exact_only: bool) -> str:
    if exact_only:
        return str(value)
    return f"{value} ≈ {float(value):.6g}"


def _format_op(op: EditOp) -> str:
    if op.kind == "ins":
        return f"ins {op.dst}^{op.exponent} @ {op.at}"
    if op.kind == "del":
        return f"del {op.src}^{op.exponent} @ {op.at}"
    return f"sub {op.src}^{op.exponent} -> {op.dst} @ {op.at}"


def _load_map(args) -> Optional[dict[str, str]]:
    if getattr(args, "symbol_map", None):
        with open(args.symbol_map, encoding="utf-8") as fh:
            return parse_symbol_map(fh.read())
    return None


def cmd_dist(args) -> int:
    symbol_map = _load_map(args)
    p = _read_notation(args.p, symbol_map)
    q = _read_notation(args.q, symbol_map)
    model = load_cost_model(args.costs) if args.costs else _auto_model(p, q)
    backend = args.backend.replace("-", "_")
    config = distance.EngineConfig(expanded_cell_guard=args.guard)
    if args.script and backend != "expanded":
        raise ValueError("--script requires --backend expanded")
    report = distance.exp_edit_distance(p, q, model, backend=backend, config=config)
    if args.oracle:
        check = matching.oracle_distance(p, q, model)
        if check != report.distance:
            raise ValueError(
                f"oracle disagrees: engine {report.distance}, oracle {check}"
            )
    print(_format_value(report.distance, args.exact))
    if args.script:
        for op in report.script:
            print(_format_op(op))
    return 0


def cmd_oracle(args) -> int:
    symbol_map = _load_map(args)
    p = _read_notation(args.p, symbol_map)
    q = _read_notation(args.q, symbol_map)
    model = load_cost_model(args.costs) if args.costs else _auto_model(p, q)
    value = matching.oracle_distance(
        p, q, model, matching.OracleConfig(max_flen=args.guard)
    )
    print(_format_value(value, args.exact))
    return 0


def cmd_pairwise(args) -> int:
    symbol_map = _load_map(args)
    with open(args.document, encoding="utf-8") as fh:
        text = fh.read()
    if symbol_map:
        text = "\n".join(
            line if line.lstrip().startswith("#") or "\t" not in line
            else line.split("\t", 1)[0] + "\t" + apply_symbol_map(line.split("\t", 1)[1], symbol_map)
            for line in text.splitlines()
        )
    entries = parse_document(text)
    model = (
        load_cost_model(args.costs)
        if args.costs
        else _auto_model(*(s for _, s in entries))
    )
    backend = args.backend.replace("-", "_")
    config = distance.EngineConfig(expanded_cell_guard=args.guard)

    ids = [ident for ident, _ in entries]
    values: list[list[Fraction]] = []
    for i, (ident_a, a) in enumerate(entries):
        row = []
        for j, (ident_b, b) in enumerate(entries):
            if i == j:
                row.append(Fraction(0))
                continue
            try:
                row.append(
                    distance.exp_edit_distance(a, b, model, backend=backend, config=config).distance
                )
            except (ValueError, MissingCost, GuardExceeded) as exc:
                raise ValueError(f"pair ({ident_a!r}, {ident_b!r}): {exc}") from None
        values.append(row)

    if args.format == "tsv":
        print("\t".join([""] + ids))
        for ident, row in zip(ids, values):
            print("\t".join([ident] + [str(v) for v in row]))
    else:
        width = max([len(i) for i in ids] + [4]) if ids else 4
        cells = [[str(v) for v in row] for row in values]
        col = max([len(c) for row in cells for c in row] + [width]) if ids else width
        print(f"pairwise exp-edit distances ({len(ids)} entries)")
        header = " " * (width + 2) + "  ".join(i.rjust(col) for i in ids)
        print(header.rstrip())
        for ident, row in zip(ids, cells):
            print(ident.ljust(width + 2) + "  ".join(c.rjust(col) for c in row))
    return 0


def cmd_validate_costs(args) -> int:
    model = load_cost_model(args.costs)
    alphabet = set(args.alphabet) if args.alphabet else set(model.alphabet())
    verdict = cost.validate(model, alphabet)
    if verdict.ok:
        print("valid")
        return 0
    print(f"{verdict.kind}: {verdict.detail}")
    return 1


def cmd_canon(args) -> int:
    symbol_map = _load_map(args)
    s = _read_notation(args.notation, symbol_map)
    print(format_notation(s, args.style))
    return 0


# ---------------------------------------------------------------------------
# wiring


def _add_common(sub, costs=True, backend=True, guard: Optional[int] = 1_000_000):
    if costs:
        sub.add_argument("--costs", metavar="FILE", help="cost-model file (default: unit costs)")
    if backend:
        sub.add_argument(
            "--backend",
            choices=("expanded", "run-block"),
            default="expanded",
            help="distance engine (run-block needs unit costs)",
        )
    if guard is not None:
        sub.add_argument(
            "--guard",
            type=int,
            default=guard,
            metavar="N",
            help="size guard for the chosen engine",
        )
    sub.add_argument("--symbol-map", metavar="FILE", help="token-to-symbol remapping file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expedit",
        description="exact edit distances between strings with rational character exponents",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    d = subs.add_parser("dist", help="distance between two exponent strings")
    d.add_argument("p")
    d.add_argument("q")
    _add_common(d)
    d.add_argument("--exact", action="store_true", help="print only the exact rational")
    d.add_argument("--script", action="store_true", help="also print an optimal edit script")
    d.add_argument("--oracle", action="store_true", help="cross-check against the matching oracle")
    d.set_defaults(func=cmd_dist)

    o = subs.add_parser("oracle", help="distance via the matching/LP construction")
    o.add_argument("p")
    o.add_argument("q")
    _add_common(o, backend=False, guard=None)
    o.add_argument("--guard", type=int, default=4, metavar="N", help="max factors per side")
    o.add_argument("--exact", action="store_true", help="print only the exact rational")
    o.set_defaults(func=cmd_oracle)

    pw = subs.add_parser("pairwise", help="all-pairs distance matrix for a document")
    pw.add_argument("document", help="TSV file: id<TAB>notation")
    _add_common(pw)
    pw.add_argument("--format", choices=("tsv", "structured"), default="tsv")
    pw.set_defaults(func=cmd_pairwise)

    v = subs.add_parser("validate-costs", help="check a cost-model file")
    v.add_argument("--costs", metavar="FILE", required=True)
    v.add_argument("--alphabet", help="symbols to validate over (default: the file's)")
    v.set_defaults(func=cmd_validate_costs)

    c = subs.add_parser("canon", help="parse notation and print its canonical form")
    c.add_argument("notation")
    c.add_argument("--style", choices=FORMAT_STYLES, default="fraction")
    c.add_argument("--symbol-map", metavar="FILE", help="token-to-symbol remapping file")
    c.set_defaults(func=cmd_canon)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        NotationError,
        CostFileError,
        DocumentError,
        MissingCost,
        GuardExceeded,
        matching.MatchingError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
