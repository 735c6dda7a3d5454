"""Abstract syntax of the while-language."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Lit:
    n: int


@dataclass(frozen=True)
class Reg1:
    pass


@dataclass(frozen=True)
class Reg2:
    pass


@dataclass(frozen=True)
class Mem:
    addr: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


Expr = Union[Lit, Reg1, Reg2, Mem, Add]


@dataclass(frozen=True)
class Neq0:
    expr: Expr


@dataclass(frozen=True)
class Eq:
    left: Expr
    right: Expr


Cond = Union[Neq0, Eq]


@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    second: "Stmt"


@dataclass(frozen=True)
class SetReg1:
    expr: Expr


@dataclass(frozen=True)
class SetReg2:
    expr: Expr


@dataclass(frozen=True)
class IncrReg2:
    pass


@dataclass(frozen=True)
class SetMem:
    addr: Expr
    val: Expr


@dataclass(frozen=True)
class While:
    cond: Cond
    body: "Stmt"


Stmt = Union[Skip, Seq, SetReg1, SetReg2, IncrReg2, SetMem, While]


def seq(*stmts) -> Stmt:
    """Right-nested sequence of one or more statements."""
    if not stmts:
        return Skip()
    out = stmts[-1]
    for s in reversed(stmts[:-1]):
        out = Seq(s, out)
    return out


def writes_memory(stmt: Stmt) -> bool:
    if isinstance(stmt, SetMem):
        return True
    if isinstance(stmt, Seq):
        return writes_memory(stmt.first) or writes_memory(stmt.second)
    if isinstance(stmt, While):
        return writes_memory(stmt.body)
    return False
