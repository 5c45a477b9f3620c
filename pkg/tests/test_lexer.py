"""Tokenizer behaviour: token shapes, units, offsets, error reporting."""

import pytest

from cadscript.dsl import LexError, tokenize


def kinds(source):
    return [t.kind for t in tokenize(source)]


def texts(source):
    return [t.text for t in tokenize(source)]


class TestBasics:
    def test_box_with_attached_units(self):
        toks = tokenize("box 1m 1m 0.3m")
        assert [(t.kind, t.text) for t in toks] == [
            ("kw", "box"),
            ("num", "1m"),
            ("num", "1m"),
            ("num", "0.3m"),
        ]
        assert [t.value for t in toks[1:]] == [1.0, 1.0, 0.3]
        assert [t.unit for t in toks[1:]] == ["m", "m", "m"]

    def test_empty_source(self):
        assert tokenize("") == []

    def test_whitespace_only(self):
        assert tokenize("   \t ") == []

    def test_keywords_vs_identifiers(self):
        toks = tokenize("union b1 s1 name u1")
        assert [(t.kind, t.text) for t in toks] == [
            ("kw", "union"),
            ("ident", "b1"),
            ("ident", "s1"),
            ("kw", "name"),
            ("ident", "u1"),
        ]

    def test_newlines_are_tokens(self):
        assert kinds("box 1 1 1\nbake b1") == ["kw", "num", "num", "num", "nl", "kw", "ident"]

    def test_comments_dropped(self):
        assert texts("box 1 1 1 # a comment\n") == ["box", "1", "1", "1", "\n"]


class TestNumbers:
    def test_free_standing_unit_is_separate_token(self):
        toks = tokenize("box 100 cm")
        assert [(t.kind, t.text) for t in toks] == [("kw", "box"), ("num", "100"), ("ident", "cm")]
        assert toks[1].unit is None

    def test_attached_cm(self):
        (tok,) = tokenize("100cm")
        assert tok.kind == "num" and tok.value == 100.0 and tok.unit == "cm"

    def test_signs_and_exponents(self):
        values = [t.value for t in tokenize("-1.5 +2 .5 1e3 2.5E-2")]
        assert values == [-1.5, 2.0, 0.5, 1000.0, 0.025]

    def test_date_not_split_into_numbers(self):
        toks = tokenize("date 2026-06-21")
        assert [(t.kind, t.text) for t in toks] == [("kw", "date"), ("date", "2026-06-21")]

    def test_malformed_number(self):
        with pytest.raises(LexError) as exc:
            tokenize("box 1.2.3")
        assert "malformed number" in str(exc.value)

    def test_unknown_unit_suffix_rejected(self):
        with pytest.raises(LexError):
            tokenize("box 3km")


class TestOffsets:
    def test_byte_offsets(self):
        toks = tokenize("box 1 1 0.3 name b1")
        assert [t.offset for t in toks] == [0, 4, 6, 8, 12, 17]
        assert toks[-1].end == 19

    def test_offsets_across_lines(self):
        toks = tokenize("bake b1\nundo")
        assert [(t.text, t.offset) for t in toks] == [
            ("bake", 0),
            ("b1", 5),
            ("\n", 7),
            ("undo", 8),
        ]

    def test_illegal_character_offset(self):
        with pytest.raises(LexError) as exc:
            tokenize("box @")
        assert exc.value.offset == 4
        assert "illegal character" in exc.value.message

    def test_offsets_count_bytes_not_codepoints(self):
        # a two-byte comment character shifts later offsets by two
        with pytest.raises(LexError) as exc:
            tokenize("# é\n@")
        assert exc.value.offset == 5


class TestTotality:
    def test_no_crash_on_control_characters(self):
        for source in ("\x00", "box \x7f", "a\vb"):
            with pytest.raises(LexError):
                tokenize(source)

    def test_long_identifier(self):
        (tok,) = tokenize("x" * 5000)
        assert tok.kind == "ident" and len(tok.text) == 5000
