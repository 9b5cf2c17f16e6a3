"""Notation grammar, file ingestion, and the command-line surface."""

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import exp_strings
from expedit.cli import (
    CostFileError,
    DocumentError,
    NotationError,
    apply_symbol_map,
    format_notation,
    main,
    parse_cost_model,
    parse_document,
    parse_notation,
    parse_symbol_map,
)
from expedit.core import parse_factors
from expedit.cost import validate

F = Fraction


def s(pairs):
    return parse_factors(pairs)


class TestParseNotation:
    def test_phone_transcription(self):
        assert parse_notation("b^1i^1.9t^1") == s([("b", 1), ("i", F(19, 10)), ("t", 1)])

    def test_brackets_stripped(self):
        assert parse_notation("[b^1i^1.9t^1]") == parse_notation("b^1i^1.9t^1")

    def test_mixed_exponents(self):
        assert parse_notation("a^2c^1.5b^3") == s([("a", 2), ("c", F(3, 2)), ("b", 3)])

    def test_plain_text_defaults_to_one(self):
        assert parse_notation("abba") == s([("a", 1), ("b", 2), ("a", 1)])

    def test_fraction_exponents(self):
        assert parse_notation("a^3/2 b^7/3") == s([("a", F(3, 2)), ("b", F(7, 3))])

    def test_whitespace_between_items(self):
        assert parse_notation(" a^2   b ") == s([("a", 2), ("b", 1)])

    def test_runs_merge(self):
        assert parse_notation("a^1/2 a^1/2") == s([("a", 1)])

    def test_empty_and_empty_brackets(self):
        assert parse_notation("") == s([])
        assert parse_notation("[]") == s([])

    def test_zero_exponent_rejected(self):
        with pytest.raises(NotationError):
            parse_notation("a^0")

    def test_malformed_exponents_rejected(self):
        for bad in ("a^", "a^.", "a^1.", "a^.5", "a^1/", "a^/2", "a^1.5.2", "a^1/2/3", "a^1.5/2"):
            with pytest.raises(NotationError):
                parse_notation(bad)

    def test_reserved_characters_rejected(self):
        for bad in ("a^2^3", "a]b", "a[b]"):
            with pytest.raises(NotationError):
                parse_notation(bad)

    def test_digit_symbols(self):
        assert parse_notation("5^2 3") == s([("5", 2), ("3", 1)])


class TestFormatNotation:
    def test_fraction_style(self):
        assert format_notation(s([("a", F(3, 2))])) == "a^3/2"

    def test_decimal_style(self):
        assert format_notation(s([("a", F(3, 2))]), "decimal-if-exact") == "a^1.5"

    def test_decimal_falls_back_for_repeating(self):
        assert format_notation(s([("a", F(1, 3))]), "decimal-if-exact") == "a^1/3"

    def test_unit_exponents_omitted(self):
        assert format_notation(s([("a", 1), ("b", 1)])) == "ab"

    def test_empty(self):
        assert format_notation(s([])) == ""

    def test_digit_symbol_after_exponent_is_spaced(self):
        p = s([("a", F(3, 2)), ("5", 1)])
        text = format_notation(p)
        assert parse_notation(text) == p

    def test_unknown_style_rejected(self):
        with pytest.raises(ValueError):
            format_notation(s([]), "scientific")

    @given(exp_strings(alphabet="ab5", max_num=12, max_den=8))
    def test_round_trip_fraction(self, p):
        assert parse_notation(format_notation(p, "fraction")) == p

    @given(exp_strings(alphabet="ab5", max_num=12, max_den=8))
    def test_round_trip_decimal(self, p):
        assert parse_notation(format_notation(p, "decimal-if-exact")) == p


class TestCostFile:
    def test_parse_and_complete(self):
        text = """
        # weights
        ins a 1
        del a 1
        ins b 2
        del b 1/2
        sub a b 3/2
        """
        m = parse_cost_model(text)
        assert m.ins("b") == 2
        assert m.sub("a", "b") == F(3, 2)
        # the reverse pair was absent: completed as del(b) + ins(a)
        assert m.sub("b", "a") == F(3, 2)

    def test_completion_is_triangle_safe(self):
        text = "ins a 1\ndel a 1\nins b 1\ndel b 1\nins c 4\ndel c 1/4\n"
        m = parse_cost_model(text)
        assert validate(m, "abc").ok

    def test_duplicate_entry_rejected(self):
        with pytest.raises(CostFileError):
            parse_cost_model("ins a 1\nins a 2\n")

    def test_malformed_line_rejected(self):
        with pytest.raises(CostFileError):
            parse_cost_model("weight a 1\n")
        with pytest.raises(CostFileError):
            parse_cost_model("ins a\n")
        with pytest.raises(CostFileError):
            parse_cost_model("ins ab 1\n")
        with pytest.raises(CostFileError):
            parse_cost_model("ins a -1\n")


class TestDocuments:
    def test_parse(self):
        text = "# words\nbeat\t[b^1i^1.9t^1]\nbead\t[b^1i^3.5d^1]\n"
        entries = parse_document(text)
        assert [ident for ident, _ in entries] == ["beat", "bead"]
        assert entries[0][1] == parse_notation("b^1i^1.9t^1")

    def test_duplicate_ids_rejected(self):
        with pytest.raises(DocumentError):
            parse_document("x\ta\nx\tb\n")

    def test_missing_tab_rejected(self):
        with pytest.raises(DocumentError):
            parse_document("just-an-id\n")

    def test_bad_notation_names_the_line(self):
        with pytest.raises(DocumentError) as err:
            parse_document("ok\ta\nbroken\ta^0\n")
        assert "line 2" in str(err.value)


class TestSymbolMap:
    def test_longest_token_first(self):
        mapping = parse_symbol_map("tʃ\tC\nt\tt\nʃ\tS\n")
        assert apply_symbol_map("tʃat", mapping) == "Cat"

    def test_map_feeds_notation(self):
        mapping = parse_symbol_map("aʊ\tW\n")
        assert parse_notation(apply_symbol_map("aʊ^1.5b", mapping)) == s([("W", F(3, 2)), ("b", 1)])


class TestCommands:
    def test_dist_exact(self, capsys):
        assert main(["dist", "a b^2.5 c", "c b^1.5 d", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "3"

    def test_dist_reports_approximation(self, capsys):
        assert main(["dist", "b i^1.9 t", "b i^3.5 d"]) == 0
        assert capsys.readouterr().out.strip() == "13/5 ≈ 2.6"

    def test_dist_identity(self, capsys):
        assert main(["dist", "a", "a", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_dist_oracle_cross_check(self, capsys):
        assert main(["dist", "a b^2.5 c", "c b^1.5 d", "--oracle"]) == 0

    def test_dist_script(self, capsys):
        assert main(["dist", "a^2", "a^1/2 b", "--script", "--exact"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "3/2"
        assert all(line.split()[0] in ("ins", "del", "sub") for line in out[1:])

    def test_dist_script_needs_expanded(self, capsys):
        assert main(["dist", "a", "b", "--script", "--backend", "run-block"]) == 1

    def test_dist_parse_error_exit_code(self, capsys):
        assert main(["dist", "a^0", "b"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_dist_run_block_backend(self, capsys):
        assert main(["dist", "a^10000", "a^9999 b", "--backend", "run-block", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_dist_guard_breach_is_an_error(self, capsys):
        assert main(["dist", "a^2000", "b^2000", "--guard", "1000"]) == 1
        assert "guard" in capsys.readouterr().err.lower()

    def test_dist_with_cost_file(self, tmp_path, capsys):
        costs = tmp_path / "m.costs"
        costs.write_text("ins a 2\ndel a 2\nins b 1\ndel b 1\nsub a b 3/2\nsub b a 3/2\n")
        assert main(["dist", "a", "b", "--costs", str(costs), "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "3/2"

    def test_oracle_command(self, capsys):
        assert main(["oracle", "a b^2.5 c", "c b^1.5 d", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "3"

    def test_oracle_guard(self, capsys):
        assert main(["oracle", "ababab", "ababab"]) == 1
        assert main(["oracle", "ababab", "ababab", "--guard", "6"]) == 0

    def test_pairwise_tsv(self, tmp_path, capsys):
        doc = tmp_path / "words.tsv"
        doc.write_text(
            "beat\t[b^1i^1.9t^1]\nbead\t[b^1i^3.5d^1]\nfort\t[f^1o^1.7t^1]\nfault\t[f^1o^2.5l^1t^1]\n"
        )
        assert main(["pairwise", str(doc)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split("\t") == ["", "beat", "bead", "fort", "fault"]
        matrix = {row.split("\t")[0]: row.split("\t")[1:] for row in lines[1:]}
        assert matrix["beat"][1] == "13/5"
        assert matrix["fort"][3] == "9/5"
        assert all(matrix[k][i] == "0" for i, k in enumerate(["beat", "bead", "fort", "fault"]))
        # unit costs: the matrix is symmetric
        ids = ["beat", "bead", "fort", "fault"]
        for i, a in enumerate(ids):
            for j, b in enumerate(ids):
                assert matrix[a][j] == matrix[b][i]

    def test_pairwise_structured(self, tmp_path, capsys):
        doc = tmp_path / "two.tsv"
        doc.write_text("x\ta^2\ny\tab\n")
        assert main(["pairwise", str(doc), "--format", "structured"]) == 0
        out = capsys.readouterr().out
        assert "x" in out and "y" in out and "1" in out

    def test_pairwise_empty_document(self, tmp_path, capsys):
        doc = tmp_path / "empty.tsv"
        doc.write_text("# nothing here\n")
        assert main(["pairwise", str(doc)]) == 0

    def test_pairwise_duplicate_ids(self, tmp_path, capsys):
        doc = tmp_path / "dup.tsv"
        doc.write_text("x\ta\nx\tb\n")
        assert main(["pairwise", str(doc)]) == 1

    def test_validate_costs_valid(self, tmp_path, capsys):
        costs = tmp_path / "unit.costs"
        costs.write_text("ins a 1\ndel a 1\nins b 1\ndel b 1\n")
        assert main(["validate-costs", "--costs", str(costs)]) == 0
        assert capsys.readouterr().out.strip() == "valid"

    def test_validate_costs_triangle_violation(self, tmp_path, capsys):
        costs = tmp_path / "bad.costs"
        costs.write_text("ins a 1\ndel a 1\nins b 1\ndel b 1\nsub a b 5\nsub b a 1\n")
        assert main(["validate-costs", "--costs", str(costs)]) == 1
        out = capsys.readouterr().out
        assert "a→λ→b" in out

    def test_validate_costs_incomplete_alphabet(self, tmp_path, capsys):
        costs = tmp_path / "partial.costs"
        costs.write_text("ins a 1\ndel a 1\n")
        assert main(["validate-costs", "--costs", str(costs), "--alphabet", "ab"]) == 1
        assert "incomplete" in capsys.readouterr().out

    def test_canon(self, capsys):
        assert main(["canon", "a^2.8a^1.3b^2"]) == 0
        assert capsys.readouterr().out.strip() == "a^41/10b^2"

    def test_canon_decimal_style(self, capsys):
        assert main(["canon", "a^2.8a^1.3b^2", "--style", "decimal-if-exact"]) == 0
        assert capsys.readouterr().out.strip() == "a^4.1b^2"

    def test_symbol_map_option(self, tmp_path, capsys):
        mapping = tmp_path / "phones.map"
        mapping.write_text("tʃ\tC\n")
        assert main(["dist", "tʃ^2", "tʃ", "--symbol-map", str(mapping), "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "1"
