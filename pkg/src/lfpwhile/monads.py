"""Reader and termination-state monads over an arbitrary state type.

A reader computation is a plain callable ``state -> value``.  A program
computation is a callable ``state -> PartialValue[(value, state)]`` where
bottom means the program does not terminate.  Both are ordinary Python
functions, so equality between computations is only ever checked
extensionally on sample states.
"""

from __future__ import annotations

from typing import Any, Callable

from .order import BOTTOM, Defined

TT = ()
"""The unit value returned by statements."""


def ret(a) -> Callable:
    return lambda _s: a


def rbind(m: Callable, f: Callable) -> Callable:
    return lambda s: f(m(s))(s)


def get() -> Callable:
    return _get


def _get(s):
    return s


def reader_to_program(m: Callable) -> Callable:
    return lambda s: Defined((m(s), s))


def bind(m: Callable, f: Callable) -> Callable:
    def run(s):
        r = m(s)
        if r is BOTTOM:
            return BOTTOM
        a, s2 = r.value
        return f(a)(s2)

    return run


def seq(m: Callable, k: Callable) -> Callable:
    """``m;; k``: run ``m``, discard its value, continue with ``k``."""
    return bind(m, lambda _: k)


def put(s) -> Callable:
    return lambda _s: Defined((TT, s))


def diverge(_s) -> Any:
    return BOTTOM


def pret(a) -> Callable:
    """``ret`` already coerced into a program."""
    return reader_to_program(ret(a))
