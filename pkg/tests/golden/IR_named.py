# Generated by asdlkit from ASDL module IR. Do not edit.
"""Data types, constructors, readers and writers for module IR."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Union

from asdlkit import runtime as _rt


class IR_stm_kind(enum.IntEnum):
    IR_SEQ_enum = 1
    IR_ASGN_enum = 2
    IR_PRINT_enum = 3


@dataclass(slots=True)
class IR_SEQ_s:
    first: IR_stm
    rest: IR_stm


@dataclass(slots=True)
class IR_ASGN_s:
    id: str
    e: IR_exp


@dataclass(slots=True)
class IR_PRINT_s:
    elist: List[IR_exp]


@dataclass(slots=True)
class IR_stm:
    kind: IR_stm_kind
    v: Union[IR_SEQ_s, IR_ASGN_s, IR_PRINT_s]


class IR_exp_kind(enum.IntEnum):
    IR_OP_enum = 1
    IR_ID_enum = 2
    IR_ICON_enum = 3
    IR_RCON_enum = 4


@dataclass(slots=True)
class IR_OP_s:
    binop1: IR_binop
    exp1: IR_exp
    exp2: IR_exp


@dataclass(slots=True)
class IR_ID_s:
    identifier1: str


@dataclass(slots=True)
class IR_ICON_s:
    int1: int


@dataclass(slots=True)
class IR_RCON_s:
    real1: IR_real


@dataclass(slots=True)
class IR_exp:
    kind: IR_exp_kind
    v: Union[IR_OP_s, IR_ID_s, IR_ICON_s, IR_RCON_s]


@dataclass(slots=True)
class IR_real:
    int1: int
    int2: int


class IR_binop(enum.IntEnum):
    ADD = 1
    SUB = 2
    MUL = 3
    DIV = 4

IR_ADD = IR_binop.ADD
IR_SUB = IR_binop.SUB
IR_MUL = IR_binop.MUL
IR_DIV = IR_binop.DIV


def IR_SEQ(first: IR_stm, rest: IR_stm) -> IR_stm:
    return IR_stm(IR_stm_kind.IR_SEQ_enum, IR_SEQ_s(first, rest))


def IR_ASGN(id: str, e: IR_exp) -> IR_stm:
    return IR_stm(IR_stm_kind.IR_ASGN_enum, IR_ASGN_s(id, e))


def IR_PRINT(elist: List[IR_exp]) -> IR_stm:
    return IR_stm(IR_stm_kind.IR_PRINT_enum, IR_PRINT_s(elist))


def IR_OP(binop1: IR_binop, exp1: IR_exp, exp2: IR_exp) -> IR_exp:
    return IR_exp(IR_exp_kind.IR_OP_enum, IR_OP_s(binop1, exp1, exp2))


def IR_ID(identifier1: str) -> IR_exp:
    return IR_exp(IR_exp_kind.IR_ID_enum, IR_ID_s(identifier1))


def IR_ICON(int1: int) -> IR_exp:
    return IR_exp(IR_exp_kind.IR_ICON_enum, IR_ICON_s(int1))


def IR_RCON(real1: IR_real) -> IR_exp:
    return IR_exp(IR_exp_kind.IR_RCON_enum, IR_RCON_s(real1))


def IR_read_stm(s_: _rt.InStream) -> IR_stm:
    tag_ = _rt.read_uint(s_)
    if not 1 <= tag_ <= 3:
        raise _rt.bad_tag('stm', tag_, s_)
    if tag_ == 1:
        _f0 = IR_read_stm(s_)
        _f1 = IR_read_stm(s_)
        return IR_SEQ(_f0, _f1)
    if tag_ == 2:
        _f0 = _rt.read_identifier(s_)
        _f1 = IR_read_exp(s_)
        return IR_ASGN(_f0, _f1)
    if tag_ == 3:
        _f0 = [IR_read_exp(s_) for _ in range(_rt.read_uint(s_))]
        return IR_PRINT(_f0)


def IR_write_stm(x_: IR_stm, s_: _rt.OutStream) -> None:
    _rt.write_uint(int(x_.kind), s_)
    if x_.kind == 1:
        v_ = x_.v
        IR_write_stm(v_.first, s_)
        IR_write_stm(v_.rest, s_)
    elif x_.kind == 2:
        v_ = x_.v
        _rt.write_identifier(v_.id, s_)
        IR_write_exp(v_.e, s_)
    elif x_.kind == 3:
        v_ = x_.v
        _rt.write_uint(len(v_.elist), s_)
        for e_ in v_.elist:
            IR_write_exp(e_, s_)


def IR_read_exp(s_: _rt.InStream) -> IR_exp:
    tag_ = _rt.read_uint(s_)
    if not 1 <= tag_ <= 4:
        raise _rt.bad_tag('exp', tag_, s_)
    if tag_ == 1:
        _f0 = IR_read_binop(s_)
        _f1 = IR_read_exp(s_)
        _f2 = IR_read_exp(s_)
        return IR_OP(_f0, _f1, _f2)
    if tag_ == 2:
        _f0 = _rt.read_identifier(s_)
        return IR_ID(_f0)
    if tag_ == 3:
        _f0 = _rt.read_int(s_)
        return IR_ICON(_f0)
    if tag_ == 4:
        _f0 = IR_read_real(s_)
        return IR_RCON(_f0)


def IR_write_exp(x_: IR_exp, s_: _rt.OutStream) -> None:
    _rt.write_uint(int(x_.kind), s_)
    if x_.kind == 1:
        v_ = x_.v
        IR_write_binop(v_.binop1, s_)
        IR_write_exp(v_.exp1, s_)
        IR_write_exp(v_.exp2, s_)
    elif x_.kind == 2:
        v_ = x_.v
        _rt.write_identifier(v_.identifier1, s_)
    elif x_.kind == 3:
        v_ = x_.v
        _rt.write_int(v_.int1, s_)
    elif x_.kind == 4:
        v_ = x_.v
        IR_write_real(v_.real1, s_)


def IR_read_real(s_: _rt.InStream) -> IR_real:
    _f0 = _rt.read_int(s_)
    _f1 = _rt.read_int(s_)
    return IR_real(_f0, _f1)


def IR_write_real(x_: IR_real, s_: _rt.OutStream) -> None:
    _rt.write_int(x_.int1, s_)
    _rt.write_int(x_.int2, s_)


def IR_read_binop(s_: _rt.InStream) -> IR_binop:
    tag_ = _rt.read_uint(s_)
    if not 1 <= tag_ <= 4:
        raise _rt.bad_tag('binop', tag_, s_)
    return IR_binop(tag_)


def IR_write_binop(x_: IR_binop, s_: _rt.OutStream) -> None:
    _rt.write_uint(int(x_), s_)
