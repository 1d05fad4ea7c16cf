from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from asdlkit.errors import AsdlSyntaxError, IllegalCharacter
from asdlkit.grammars import NAMES, grammar_text
from asdlkit.syntax import (ProductBody, RawConstructor, RawField, RawSpec, RawTypeDef,
                            SumBody, parse_spec, pretty_print, tokenize)


def kinds(text: str) -> list[str]:
    return [t.kind for t in tokenize(text)]


def test_token_stream_of_a_one_line_module():
    toks = tokenize("module IR { stm = SEQ(stm, stm) }")
    assert len(toks) == 13
    assert [t.text for t in toks[:-1]] == [
        "module", "IR", "{", "stm", "=", "SEQ", "(", "stm", ",", "stm", ")", "}"]
    assert toks[-2].kind == "}"
    assert toks[-1].kind == "EOF"


def test_words_are_classified_by_initial_case():
    assert kinds("module attributes Foo foo") == ["module", "attributes", "CON", "ID", "EOF"]


def test_spans_are_one_based_with_byte_offsets():
    toks = tokenize("-- é\nmodule M {\n  t = (int)\n}")
    module, name = toks[0], toks[1]
    assert (module.span.line, module.span.column, module.span.offset) == (2, 1, 6)
    assert (name.span.line, name.span.column) == (2, 8)
    t = next(tok for tok in toks if tok.text == "t")
    assert (t.span.line, t.span.column) == (3, 3)


def test_comments_run_to_end_of_line():
    assert kinds("-- all of this { is ignored\nmodule") == ["module", "EOF"]


@pytest.mark.parametrize("text, col", [("module M { t = A# }", 17), ("module M {\n\tt = A@", 7)])
def test_illegal_character_is_located(text, col):
    with pytest.raises(IllegalCharacter) as e:
        tokenize(text)
    assert e.value.span.column == col


def test_parse_sum_and_product():
    spec = parse_spec("module M { t = A(int x, s* ys) | B  s = (identifier, string) }")
    assert spec == RawSpec("M", (
        RawTypeDef("t", SumBody((
            RawConstructor("A", (RawField("int", False, "x"), RawField("s", True, "ys"))),
            RawConstructor("B")))),
        RawTypeDef("s", ProductBody((RawField("identifier"), RawField("string")))),
    ))


def test_attributes_follow_the_constructors():
    spec = parse_spec("module M { t = A | B(int) attributes(int line, int col) }")
    body = spec.definitions[0].body
    assert [a.name for a in body.attributes] == ["line", "col"]
    assert [c.name for c in body.constructors] == ["A", "B"]


def test_empty_module_is_legal():
    assert parse_spec("module Empty { }") == RawSpec("Empty")


@pytest.mark.parametrize("name", NAMES)
def test_bundled_grammars_parse(name):
    spec = parse_spec(grammar_text(name))
    assert spec.definitions


@pytest.mark.parametrize("text, needle, line, col", [
    ("module M { t = A(int?) }", "'?' is not supported", 1, 21),
    ("module M { T = A }", "must start with a lowercase", 1, 12),
    ("module M { t = a }", "must start with an uppercase", 1, 16),
    ("module M { t = A(Int) }", "must start with a lowercase", 1, 18),
    ("module M { t = A(int X) }", "must start with a lowercase", 1, 22),
    ("module M { t = A(int x y) }", "expected ',' or ')'", 1, 24),
    ("module M { t = A(int x,) }", "expected a field type", 1, 24),
    ("module M { t = A", "expected a type definition", 1, 17),
    ("module M { t = }", "expected a constructor", 1, 16),
    ("module M { t = A }\nmodule N { }", "only one module", 2, 1),
    ("module M { } junk", "unexpected text after module", 1, 14),
    ("stm = A", "expected 'module'", 1, 1),
    ("module { }", "expected module name", 1, 8),
])
def test_syntax_errors_report_the_first_problem(text, needle, line, col):
    with pytest.raises(AsdlSyntaxError) as e:
        parse_spec(text)
    assert needle in e.value.message
    assert (e.value.span.line, e.value.span.column) == (line, col)
    assert e.value.diagnostic("x.asdl").startswith(f"x.asdl:{line}:{col}: ")


def test_pretty_print_layout():
    spec = parse_spec("module M { stm = SEQ(stm, stm) | PRINT(exp* es) attributes(int l) "
                      "real = (int, int) }")
    assert pretty_print(spec) == (
        "module M {\n"
        "    stm = SEQ(stm, stm)\n"
        "        | PRINT(exp* es)\n"
        "          attributes(int l)\n"
        "\n"
        "    real = (int, int)\n"
        "}\n")
    assert pretty_print(RawSpec("E")) == "module E {\n}\n"


@pytest.mark.parametrize("name", NAMES)
def test_pretty_print_is_a_fixed_point_on_bundled_grammars(name):
    spec = parse_spec(grammar_text(name))
    text = pretty_print(spec)
    assert parse_spec(text) == spec
    assert pretty_print(parse_spec(text)) == text


# -- property: parse(pretty(spec)) == spec ----------------------------------

lower = st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True).filter(
    lambda s: s not in ("module", "attributes"))
upper = st.from_regex(r"[A-Z][A-Za-z0-9_]{0,6}", fullmatch=True)
fields = st.lists(st.builds(RawField, lower, st.booleans(), st.none() | lower),
                  min_size=1, max_size=4).map(tuple)
ctor = st.builds(RawConstructor, upper, st.just(()) | fields)
sum_body = st.builds(SumBody, st.lists(ctor, min_size=1, max_size=4).map(tuple),
                     st.just(()) | fields)
product_body = st.builds(ProductBody, fields)
specs = st.builds(RawSpec, upper | lower, st.lists(
    st.builds(RawTypeDef, lower, sum_body | product_body), max_size=5).map(tuple))


@given(specs)
def test_parse_inverts_pretty_print(spec):
    assert parse_spec(pretty_print(spec)) == spec
