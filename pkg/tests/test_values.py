from __future__ import annotations

import pickle

import pytest

from asdlkit.errors import ConformanceError
from asdlkit.grammars import NAMES, load
from asdlkit.values import (IdentifierV, IntV, ListV, ProductV, RandomValues, StringV, SumV,
                            check_value, equal, mk, mk_product, type_heights, validate)


def sample(ir):
    return mk(ir, "SEQ", mk(ir, "ASGN", "x", mk(ir, "ICON", 1)),
              mk(ir, "PRINT", [mk(ir, "ID", "x"),
                               mk(ir, "RCON", mk_product(ir, "real", [3, -14]))]))


def test_constructors_lift_plain_data(ir):
    v = mk(ir, "ASGN", "x", mk(ir, "ICON", 7))
    assert v == SumV("stm", "ASGN", (), (IdentifierV("x"), SumV("exp", "ICON", (), (IntV(7),))))
    assert mk(ir, "PRINT", []).fields == (ListV(),)
    assert not validate(ir, "stm", sample(ir))


def test_attributes_are_passed_by_keyword(ir_attrs):
    v = mk(ir_attrs, "PRINT", [], lineno=3)
    assert v.attrs == (IntV(3),)
    with pytest.raises(ConformanceError, match="missing attribute"):
        mk(ir_attrs, "PRINT", [])


def test_identifiers_are_atoms():
    a, b = IdentifierV("foo"), IdentifierV("foo")
    assert a is b and a != IdentifierV("bar")
    with pytest.raises(AttributeError):
        a.text = "bar"
    assert pickle.loads(pickle.dumps(a)) is a


def test_equality_is_structural(ir):
    assert equal(sample(ir), sample(ir))
    assert sample(ir) is not sample(ir)
    assert not equal(mk(ir, "ICON", 1), mk(ir, "ICON", 2))
    assert StringV("x") != IdentifierV("x")


@pytest.mark.parametrize("value, path, reason", [
    (SumV("stm", "PRINT", (), (IntV(1),)), "stm/PRINT/exp_list1", "expected list of exp"),
    (SumV("stm", "ASGN", (), (StringV("x"), SumV("exp", "ICON", (), (IntV(1),)))),
     "stm/ASGN/identifier1", "expected identifier"),
    (SumV("stm", "NOPE"), "stm", "no constructor 'NOPE'"),
    (SumV("stm", "SEQ", (), ()), "stm/SEQ", "expected 2 fields (stm1, stm2), got 0"),
    (ProductV("real", (IntV(1), IntV(2))), "stm", "expected stm, got ProductV(real)"),
    (SumV("exp", "ICON", (), (IntV(1),)), "stm", "expected stm, got SumV(exp)"),
    (SumV("stm", "PRINT", (), (ListV((SumV("exp", "ICON", (), (IntV(True),)),)),)),
     "stm/PRINT/exp_list1[0]/ICON/int1", "expected int"),
])
def test_violations_carry_the_field_path(ir, value, path, reason):
    [v] = validate(ir, "stm", value)
    assert v.path == path and reason in v.reason
    with pytest.raises(ConformanceError):
        check_value(ir, "stm", value)


def test_all_violations_are_reported(ir):
    bad = SumV("stm", "SEQ", (), (IntV(1), StringV("x")))
    assert [v.path for v in validate(ir, "stm", bad)] == ["stm/SEQ/stm1", "stm/SEQ/stm2"]


def test_type_heights(ir, rcc):
    h = type_heights(ir)
    assert h == {"stm": 1, "exp": 1, "real": 1, "binop": 1}
    env = load("IR")
    assert type_heights(env) == h
    assert type_heights(rcc)["program"] == 1


@pytest.mark.parametrize("name", NAMES)
def test_random_values_conform_and_are_seeded(name):
    env = load(name)
    for t in env.types:
        for seed in range(30):
            v = RandomValues(env, seed).value(t)
            assert not validate(env, t, v)
            assert RandomValues(env, seed).value(t) == v


def test_random_values_reach_deep_and_wide(ir):
    gen = RandomValues(ir, 1)
    vs = [gen.value("stm") for _ in range(300)]
    assert {v.ctor for v in vs} == {"SEQ", "ASGN", "PRINT"}

    def depth(v):
        kids = [f for f in getattr(v, "fields", ()) if isinstance(f, (SumV, ProductV))]
        kids += [i for f in getattr(v, "fields", ()) if isinstance(f, ListV) for i in f.items]
        return 1 + max((depth(k) for k in kids), default=0)

    assert max(depth(v) for v in vs) >= 4


def test_unreachable_type_is_rejected():
    from asdlkit import load_schema
    env = load_schema("module M { t = A(u)  u = B(t) }")
    with pytest.raises(ValueError, match="no value"):
        RandomValues(env).value("t")
