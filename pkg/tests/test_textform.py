from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from asdlkit import textform
from asdlkit.errors import ConformanceError, TextFormError
from asdlkit.grammars import NAMES, load
from asdlkit.values import RandomValues, mk, mk_product


def test_format(ir):
    v = mk(ir, "SEQ", mk(ir, "ASGN", "x", mk(ir, "OP", mk(ir, "ADD"), mk(ir, "ICON", -1),
                                               mk(ir, "RCON", mk_product(ir, "real", [1, 2])))),
           mk(ir, "PRINT", [mk(ir, "ID", "a<b")]))
    text = "(SEQ (ASGN x (OP (ADD) (ICON -1) (RCON (tuple 1 2)))) (PRINT [(ID |a<b|)]))"
    assert textform.format_value(ir, "stm", v) == text
    assert textform.parse_value(ir, "stm", text) == v


def test_attributes_use_keywords_in_any_order(rcc):
    n = mk(rcc, "CNST", 5, suffix=1, size=4)
    assert textform.format_value(rcc, "node", n) == "(CNST :suffix 1 :size 4 5)"
    assert textform.parse_value(rcc, "node", "(CNST :size 4 :suffix 1 5)") == n


@pytest.mark.parametrize("text, ident", [
    ("x", "x"), ("$a.b_1", "$a.b_1"), ("|tuple|", "tuple"), ("|a b\\|c\\\\|", "a b|c\\"),
    ("||", ""), ("|12|", "12"),
])
def test_identifier_quoting(ir, text, ident):
    v = textform.parse_value(ir, "exp", f"(ID {text})")
    assert v.fields[0].text == ident
    assert textform.format_value(ir, "exp", v) == f"(ID {text})"


def test_comments_and_multiple_values(ir):
    text = "; two prints\n(PRINT [])  ; first\n(PRINT [(ICON 2)])\n"
    assert len(textform.parse_values(ir, "stm", text)) == 2
    assert textform.parse_values(ir, "stm", "  ; nothing\n") == []


def test_strings_are_json_literals():
    env = load("rcc")
    v = textform.parse_value(env, "interface", '(Defstring "a\\"\\n\\u00e9")')
    assert v.fields[0].value == 'a"\né'
    assert textform.format_value(env, "interface", v) == '(Defstring "a\\"\\né")'


@pytest.mark.parametrize("text, needle, offset", [
    ("(NOPE)", "'NOPE' is not a constructor of stm", 1),
    ("(PRINT [(ICON x)])", "expected an integer", 14),
    ("(PRINT [(ICON 1)]", "expected ')'", 17),
    ("(PRINT [", "unterminated list", 8),
    ("(ASGN 1 (ICON 1))", "expected an identifier", 6),
    ("(PRINT [] ) (PRINT []) junk", "expected '('", 23),
])
def test_parse_errors_have_offsets(ir, text, needle, offset):
    with pytest.raises(TextFormError) as e:
        textform.parse_values(ir, "stm", text)
    assert needle in e.value.message
    assert e.value.offset == offset


def test_attribute_errors(ir_attrs):
    for text, needle in [("(PRINT [])", "missing attribute(s) lineno"),
                         ("(PRINT :lineno 1 :lineno 2 [])", "given twice"),
                         ("(PRINT :line 1 [])", "no attribute 'line'")]:
        with pytest.raises(TextFormError, match=needle.replace("(", r"\(").replace(")", r"\)")):
            textform.parse_value(ir_attrs, "stm", text)


def test_parse_value_wants_exactly_one(ir):
    with pytest.raises(TextFormError, match="exactly one"):
        textform.parse_value(ir, "stm", "(PRINT []) (PRINT [])")


def test_spans_are_attached(ir):
    with pytest.raises(TextFormError) as e:
        textform.parse_value(ir, "stm", "(PRINT\n  [(ICON y)])")
    assert (e.value.span.line, e.value.span.column) == (2, 10)


def test_parsed_values_are_checked(ir):
    with pytest.raises((TextFormError, ConformanceError)):
        textform.parse_value(ir, "stm", "(SEQ (PRINT []))")


@pytest.mark.parametrize("name", NAMES)
def test_random_round_trip(name):
    env = load(name)
    gen = RandomValues(env, 5)
    for t in env.types:
        for _ in range(30):
            v = gen.value(t)
            assert textform.parse_value(env, t, textform.format_value(env, t, v)) == v


@settings(max_examples=100)
@given(st.text())
def test_any_identifier_round_trips(ir, text):
    v = mk(ir, "ID", text)
    assert textform.parse_value(ir, "exp", textform.format_value(ir, "exp", v)) == v
