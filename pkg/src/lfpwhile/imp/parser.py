"""Text syntax for while-programs.

::

    stmt  := simple (";" simple)*
    simple:= "skip" | "incr" "reg2" | assign | "while" cond "{" stmt "}" | "{" stmt "}"
    assign:= ("reg1" | "reg2" | "mem" "[" expr "]") ":=" expr
    cond  := expr "!=" "0" | expr "==" expr
    expr  := atom ("+" atom)*
    atom  := nat | "reg1" | "reg2" | "mem" "[" expr "]" | "(" expr ")"

``;`` nests to the right and ``+`` to the left.  Braces around a bare
statement and parentheses around an expression only group; the printer
emits them only where the nesting would otherwise be lost.  ``#`` starts a
comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Add, Eq, IncrReg2, Lit, Mem, Neq0, Reg1, Reg2, Seq, SetMem, SetReg1, SetReg2, Skip, While,
)

KEYWORDS = {"skip", "incr", "while", "reg1", "reg2", "mem"}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<nat>[0-9]+)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>:=|!=|==|[+;{}\[\]()])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=frozenset()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "kw", "sym", "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "word":
            if m.group() not in KEYWORDS:
                raise ParseError(f"unknown word {m.group()!r}", line, col, KEYWORDS)
            tokens.append(Token("kw", m.group(), line, col))
        elif kind in ("nat", "sym"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_STMT_START = {"skip", "incr", "while", "reg1", "reg2", "mem", "{"}
_EXPR_START = {"<nat>", "reg1", "reg2", "mem", "("}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected):
        t = self.tok
        exp = ", ".join(sorted(expected))
        raise ParseError(f"expected {exp}, found {t.describe()}", t.line, t.column, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "sym") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error({text})
        t = self.tok
        self.i += 1
        return t

    def program(self):
        s = self.stmt()
        if self.tok.kind != "eof":
            self.error({";", "<end of input>"})
        return s

    def stmt(self):
        first = self.simple()
        if self.at(";"):
            self.i += 1
            return Seq(first, self.stmt())
        return first

    def simple(self):
        t = self.tok
        if self.at("skip"):
            self.i += 1
            return Skip()
        if self.at("incr"):
            self.i += 1
            self.expect("reg2")
            return IncrReg2()
        if self.at("while"):
            self.i += 1
            c = self.cond()
            self.expect("{")
            body = self.stmt()
            self.expect("}")
            return While(c, body)
        if self.at("{"):
            self.i += 1
            body = self.stmt()
            self.expect("}")
            return body
        if self.at("reg1") or self.at("reg2"):
            self.i += 1
            self.expect(":=")
            e = self.expr()
            return SetReg1(e) if t.text == "reg1" else SetReg2(e)
        if self.at("mem"):
            self.i += 1
            self.expect("[")
            addr = self.expr()
            self.expect("]")
            self.expect(":=")
            return SetMem(addr, self.expr())
        self.error(_STMT_START)

    def cond(self):
        left = self.expr()
        if self.at("!="):
            self.i += 1
            t = self.tok
            if t.kind != "nat" or int(t.text) != 0:
                self.error({"0"})
            self.i += 1
            return Neq0(left)
        if self.at("=="):
            self.i += 1
            return Eq(left, self.expr())
        self.error({"!=", "==", "+"})

    def expr(self):
        e = self.atom()
        while self.at("+"):
            self.i += 1
            e = Add(e, self.atom())
        return e

    def atom(self):
        t = self.tok
        if t.kind == "nat":
            self.i += 1
            return Lit(int(t.text))
        if self.at("reg1"):
            self.i += 1
            return Reg1()
        if self.at("reg2"):
            self.i += 1
            return Reg2()
        if self.at("mem"):
            self.i += 1
            self.expect("[")
            e = self.expr()
            self.expect("]")
            return Mem(e)
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        self.error(_EXPR_START)


def parse(text: str):
    """Parse a program; raises :class:`ParseError` with a 1-based position."""
    return _Parser(text).program()


def parse_expr(text: str):
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error({"+", "<end of input>"})
    return e


# -- printing ------------------------------------------------------------------


def format_expr(e) -> str:
    if isinstance(e, Lit):
        return str(e.n)
    if isinstance(e, Reg1):
        return "reg1"
    if isinstance(e, Reg2):
        return "reg2"
    if isinstance(e, Mem):
        return f"mem[{format_expr(e.addr)}]"
    if isinstance(e, Add):
        right = format_expr(e.right)
        if isinstance(e.right, Add):
            right = f"({right})"
        return f"{format_expr(e.left)} + {right}"
    raise TypeError(f"not an expression: {e!r}")


def format_cond(c) -> str:
    if isinstance(c, Neq0):
        return f"{format_expr(c.expr)} != 0"
    if isinstance(c, Eq):
        return f"{format_expr(c.left)} == {format_expr(c.right)}"
    raise TypeError(f"not a condition: {c!r}")


def _lines(s, indent: str) -> list[str]:
    if isinstance(s, Seq):
        if isinstance(s.first, Seq):
            head = [indent + "{"] + _lines(s.first, indent + "  ") + [indent + "};"]
        else:
            head = _lines(s.first, indent)
            head[-1] += ";"
        return head + _lines(s.second, indent)
    if isinstance(s, Skip):
        return [indent + "skip"]
    if isinstance(s, IncrReg2):
        return [indent + "incr reg2"]
    if isinstance(s, SetReg1):
        return [f"{indent}reg1 := {format_expr(s.expr)}"]
    if isinstance(s, SetReg2):
        return [f"{indent}reg2 := {format_expr(s.expr)}"]
    if isinstance(s, SetMem):
        return [f"{indent}mem[{format_expr(s.addr)}] := {format_expr(s.val)}"]
    if isinstance(s, While):
        return ([f"{indent}while {format_cond(s.cond)} {{"]
                + _lines(s.body, indent + "  ")
                + [indent + "}"])
    raise TypeError(f"not a statement: {s!r}")


def pretty_print(stmt) -> str:
    """Canonical text of a statement; ``parse(pretty_print(s)) == s``."""
    return "\n".join(_lines(stmt, ""))
