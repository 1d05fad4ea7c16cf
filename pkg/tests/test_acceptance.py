"""Acceptance criteria 1-9, one test each. Each records its verdict in
``CRITERIA`` so the session summary prints one pass/fail line per criterion."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from asdlkit import load_schema, pickleio, xmlpickle
from asdlkit.codegen import conformance_harness, generate
from asdlkit.grammars import grammar_text, load
from asdlkit.lcc import (METRICS_32, compile, compile_program, example_source, monolithic, pass2,
                         read_program, uid_lint)
from asdlkit.lcc.frontend import compile_unit
from asdlkit.lcc.ir import OP_CODE, P
from asdlkit.lcc.types import basic_type, complete_struct, layout_type, pointer_to, struct_type
from asdlkit.lcc.fuzz import random_program
from asdlkit.values import IntV, RandomValues, SumV

from conftest import CRITERIA, EMITTED_PICKLES, check_golden, record_pickle


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    detail: list[str] = []
    try:
        yield detail
        elapsed = time.perf_counter() - start
        if limit is not None:
            detail.append(f"{elapsed:.2f}s < {limit:g}s")
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException:
        CRITERIA.append((number, title, False, "; ".join(detail)))
        raise
    CRITERIA.append((number, title, True, "; ".join(detail)))


def test_criterion_1_fixture_parsing():
    with criterion(1, "fixture grammars check; rcc has 9 types, node 17, interface 16",
                   limit=1.0) as detail:
        for name in ("IR", "IR_named", "IR_attrs", "rcc"):
            env = load_schema(grammar_text(name))
            assert env.types
        rcc = load_schema(grammar_text("rcc"))
        assert len(rcc.types) == 9
        assert len(rcc.type("node").constructors) == 17
        assert len(rcc.type("interface").constructors) == 16
        detail.append("9/17/16")


def test_criterion_2_enum_classification():
    with criterion(2, "binop is enum-like, item is not"):
        ir, rcc = load("IR"), load("rcc")
        assert ir.type("binop").enum_like
        assert not rcc.type("item").enum_like
        assert not ir.type("stm").enum_like and not ir.type("real").is_sum


def test_criterion_3_wire_round_trip():
    with criterion(3, "500 random values per type round-trip, binary and XML", limit=30.0) \
            as detail:
        total = 0
        for name in ("IR", "rcc"):
            env = load(name)
            for t in env.types:
                for seed in range(500):
                    v = RandomValues(env, seed).value(t)
                    data = pickleio.dumps(env, t, v)
                    assert pickleio.loads(env, t, data) == v
                    text = xmlpickle.write_xml(env, t, v)
                    assert xmlpickle.read_xml(env, t, text) == v
                    assert len(text.encode("utf-8")) >= len(data)
                    total += 1
        detail.append(f"{total} values")


def store_tree(env) -> SumV:
    """ASGN P 4 (ADDRL P 4 42) (Unary INDIR P 4 (ADDRL P 4 37)), with ASGN's
    len/align only if the grammar has them."""
    def node(ctor, *fields):
        return SumV("node", ctor, (IntV(P), IntV(4)), tuple(fields))

    left = node("ADDRL", IntV(42))
    right = node("Unary", IntV(OP_CODE["INDIR"]), node("ADDRL", IntV(37)))
    extra = (IntV(4), IntV(4)) if len(env.constructors["ASGN"].fields) == 4 else ()
    return node("ASGN", left, right, *extra)


def test_criterion_4_store_tree_byte_count():
    with criterion(4, "leftmost store tree: 15 bytes displayed, 17 with len/align") as detail:
        full = load("rcc")
        text = grammar_text("rcc")
        displayed_text = text.replace("ASGN(node left,node right,int len,int align)",
                                      "ASGN(node left,node right)")
        assert displayed_text != text
        displayed = load_schema(displayed_text)
        assert displayed.constructors["ASGN"].tag == full.constructors["ASGN"].tag
        short = pickleio.dumps(displayed, "node", store_tree(displayed))
        long = pickleio.dumps(full, "node", store_tree(full))
        assert len(short) == 15
        assert len(long) == 17
        assert long == short + b"\x08\x08"  # zigzag(4), twice
        detail.append(f"{len(short)} and {len(long)} bytes")


def test_criterion_5_struct_layout():
    with criterion(5, "struct elem under 32-bit metrics: 16/4, offsets 0/4/8/12"):
        m = METRICS_32
        e = struct_type("elem")
        pe = pointer_to(e, m)
        complete_struct(e, [("count", basic_type("int", m)), ("left", pe), ("right", pe),
                            ("word", pointer_to(basic_type("char", m), m))], m)
        lay = layout_type(e, m)
        assert (lay.size, lay.align, lay.offsets) == (16, 4, (0, 4, 8, 12))


def shape(t):
    name = t.op + "FIUPBV"[t.suffix]
    return (name, *[shape(k) for k in t.kids]) if t.kids else name


def test_criterion_6_split_equals_monolithic():
    with criterion(6, "pass2(compile(p)) == monolithic(p) on postinc and 100 random programs",
                   limit=10.0) as detail:
        postinc = example_source("postinc")
        [forest] = compile_unit(postinc).forests
        assert [shape(t) for t in forest] == [
            ("ASGNP", "ADDRLP", ("INDIRP", "ADDRLP")),
            ("ASGNP", "ADDRLP", ("ADDP", ("INDIRP", "ADDRLP"), "CNSTI")),
            ("ASGNI", ("INDIRP", "ADDRLP"), ("CVII", ("INDIRI", "ADDRLP"))),
        ]
        programs = [postinc] + [random_program(seed) for seed in range(100)]
        for i, src in enumerate(programs):
            data = record_pickle(f"criterion6-{i}", compile(src))
            assert pass2(data) == monolithic(src), src
        detail.append(f"{len(programs)} programs")


def test_criterion_7_append_semantics():
    with criterion(7, "an appended second instance leaves pass2 output unchanged"):
        one = record_pickle("criterion7-single", compile(example_source("postinc")))
        two = record_pickle("criterion7-appended", one + compile(example_source("cse")))
        assert pass2(two) == pass2(one)
        assert len(pickleio.read_all(load("rcc"), "program", two)) == 2


def test_criterion_8_codegen_oracle():
    with criterion(8, "generated IR codec byte-matches pickle-io; output is deterministic") \
            as detail:
        ir, rcc = load("IR"), load("rcc")
        gen = RandomValues(ir, 2024)
        types = list(ir.types)
        samples = [(types[i % len(types)], gen.value(types[i % len(types)])) for i in range(200)]
        report = conformance_harness(ir, "python", samples)
        assert report.ok, [str(m) for m in report.mismatches[:3]]
        assert report.checked == 200
        program = compile_program(example_source("postinc"))
        report9 = conformance_harness(rcc, "python", [program, ("node", store_tree(rcc))])
        assert report9.ok, [str(m) for m in report9.mismatches]
        first = generate(ir).files["IR.py"]
        assert generate(load_schema(grammar_text("IR"))).files["IR.py"] == first
        check_golden("IR.py", first)
        detail.append(f"{report.bytes_compared + report9.bytes_compared} bytes compared")


@pytest.mark.run_last
def test_criterion_9_uid_closure():
    with criterion(9, "no dangling or duplicate uids in any emitted pickle") as detail:
        rcc = load("rcc")
        corpus = [(f"criterion9-{seed}", compile(random_program(seed))) for seed in range(20)]
        pickles = EMITTED_PICKLES + corpus
        assert len(pickles) > 20
        programs = 0
        for label, data in pickles:
            for program in pickleio.read_all(rcc, "program", data):
                problems = uid_lint(program)
                assert problems == [], f"{label}: {[str(p) for p in problems]}"
                programs += 1
        assert read_program(pickles[0][1]) is not None
        detail.append(f"{programs} programs in {len(pickles)} pickles")
