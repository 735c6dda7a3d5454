"""Denotational semantics of the while-language.

Statements denote program computations over :class:`MachineState`.  A
``while`` loop is the least fixpoint of :func:`while_functional`, obtained
from :mod:`lfpwhile.fixpoint`: :func:`execute` searches for it within a
budget (each loop node gets its own budget), and :func:`run_fuel` evaluates
the fuel-``n`` approximant of a whole program, in which every loop runs
with fuel ``n``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .._report import CheckReport
from ..fixpoint import DEFAULT_BUDGET, Converged, Exhausted, eval_fuel, eval_lfp
from ..monads import TT, bind, pret, reader_to_program, ret, seq
from ..order import BOTTOM, Defined
from .state import MachineState
from .syntax import (
    Add, Eq, IncrReg2, Lit, Mem, Neq0, Reg1, Reg2, Seq, SetMem, SetReg1, SetReg2, Skip, While,
)


def eval_expr(e, s: MachineState) -> int:
    if isinstance(e, Lit):
        return e.n
    if isinstance(e, Reg1):
        return s.reg1
    if isinstance(e, Reg2):
        return s.reg2
    if isinstance(e, Mem):
        return s.read(eval_expr(e.addr, s))
    if isinstance(e, Add):
        return eval_expr(e.left, s) + eval_expr(e.right, s)
    raise TypeError(f"not an expression: {e!r}")


def eval_cond(c, s: MachineState) -> bool:
    if isinstance(c, Neq0):
        return eval_expr(c.expr, s) != 0
    if isinstance(c, Eq):
        return eval_expr(c.left, s) == eval_expr(c.right, s)
    raise TypeError(f"not a condition: {c!r}")


# -- primitives in the shallow style ---------------------------------------


def read_reg1(s: MachineState) -> int:
    return s.reg1


def read_reg2(s: MachineState) -> int:
    return s.reg2


def read_addr(addr: int) -> Callable:
    return lambda s: s.read(addr)


def write_reg1(v: int) -> Callable:
    return lambda s: Defined((TT, s.with_regs(reg1=v)))


def write_reg2(v: int) -> Callable:
    return lambda s: Defined((TT, s.with_regs(reg2=v)))


def write_addr(addr: int, v: int) -> Callable:
    return lambda s: Defined((TT, s.write(addr, v)))


def incr_reg2(s: MachineState):
    return Defined((TT, s.with_regs(reg2=s.reg2 + 1)))


def _lift(reader: Callable, k: Callable) -> Callable:
    """Run a reader, then the program it selects."""
    return bind(reader_to_program(reader), k)


# -- while as a least fixpoint -------------------------------------------------


def while_functional(W, arg):
    """One unfolding of a loop; ``arg`` is ``(cond, body, state)``.

    ``cond`` is a reader of booleans, ``body`` a program; ``W`` approximates
    the loop on the same ``(cond, body)`` at any state.
    """
    cond, body, s = arg

    def step(c):
        if c:
            return bind(body, lambda _: lambda s2: W((cond, body, s2)))
        return reader_to_program(ret(TT))

    return bind(reader_to_program(cond), step)(s)


def cond_reader(c) -> Callable:
    if callable(c):
        return c
    return lambda s: eval_cond(c, s)


def while_fuel(fuel: int, cond, body, s: MachineState):
    """The fuel-``fuel`` approximant of a loop at ``s``.

    ``cond`` may be a reader or a :class:`Cond`; ``body`` a program or a
    statement (whose own loops then also run with ``fuel``).
    """
    if not callable(body):
        body = fuel_program(body, fuel)
    return eval_fuel(while_functional, fuel, (cond_reader(cond), body, s))


def _compile(stmt, loop: Callable) -> Callable:
    """Program of ``stmt``; ``loop(cond_reader, body_program)`` interprets loops."""
    if isinstance(stmt, Skip):
        return pret(TT)
    if isinstance(stmt, Seq):
        return seq(_compile(stmt.first, loop), _compile(stmt.second, loop))
    if isinstance(stmt, SetReg1):
        e = stmt.expr
        return _lift(lambda s: eval_expr(e, s), write_reg1)
    if isinstance(stmt, SetReg2):
        e = stmt.expr
        return _lift(lambda s: eval_expr(e, s), write_reg2)
    if isinstance(stmt, IncrReg2):
        return incr_reg2
    if isinstance(stmt, SetMem):
        a, v = stmt.addr, stmt.val
        return _lift(lambda s: (eval_expr(a, s), eval_expr(v, s)), lambda av: write_addr(*av))
    if isinstance(stmt, While):
        return loop(cond_reader(stmt.cond), _compile(stmt.body, loop))
    raise TypeError(f"not a statement: {stmt!r}")


def compile_program(stmt, budget: int = DEFAULT_BUDGET, meter: Optional[list] = None) -> Callable:
    """Program of ``stmt`` with every loop searched for within ``budget``.

    A loop that exhausts its budget yields bottom.  When ``meter`` is a list,
    the minimal fuel of every converged loop evaluation is appended to it.
    """
    return _compile(stmt, lambda c, b: loop_program(c, b, budget, meter))


def loop_program(cond: Callable, body: Callable, budget: int, meter: Optional[list] = None) -> Callable:
    """The loop of a condition reader and a body program, searched within ``budget``."""

    def run(s):
        out = eval_lfp(while_functional, budget, (cond, body, s))
        if isinstance(out, Exhausted):
            return BOTTOM
        if meter is not None:
            meter.append(out.fuel_used)
        return Defined(out.value)

    return run


def fuel_program(stmt, fuel: int) -> Callable:
    """Program of ``stmt`` with every loop replaced by its fuel-``fuel`` approximant."""

    def loop(c, b):
        return lambda s: eval_fuel(while_functional, fuel, (c, b, s))

    return _compile(stmt, loop)


def run_fuel(stmt, fuel: int, s: MachineState):
    """Fuel-``fuel`` approximant of a whole program; bottom at fuel 0."""
    if fuel <= 0:
        return BOTTOM
    return fuel_program(stmt, fuel)(s)


def run_metered(build: Callable[[list], Callable], budget: int, s: MachineState):
    """Run ``build(meter)`` at ``s`` and report it as an evaluation outcome.

    The fuel reported is the largest minimal fuel among the loops evaluated,
    and 1 for loop-free runs: the least uniform fuel at which
    :func:`run_fuel` is defined.
    """
    meter: list = []
    r = build(meter)(s)
    if r is BOTTOM:
        return Exhausted(budget)
    return Converged(r.value, max(meter, default=1))


def execute(stmt, budget: int = DEFAULT_BUDGET, s: Optional[MachineState] = None):
    """Big-step execution; ``Converged(((), final_state), fuel)`` or ``Exhausted(budget)``."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    s = MachineState() if s is None else s
    return run_metered(lambda m: compile_program(stmt, budget, m), budget, s)


def unfold_once(cond, body, budget: int, meter: Optional[list] = None) -> Callable:
    """``if cond then (body;; while cond body) else ret tt`` built from the combinators."""
    c = cond_reader(cond)
    b = compile_program(body, budget, meter)
    loop = compile_program(While(cond, body), budget, meter)

    def branch(v):
        return seq(b, loop) if v else reader_to_program(ret(TT))

    return bind(reader_to_program(c), branch)


# -- laws as executable checks -------------------------------------------------


def check_while_unfold(cond, body, states: Iterable[MachineState], budget: int,
                       unfolding: Callable = unfold_once) -> CheckReport:
    """A loop and its one-step unfolding agree on every sampled state.

    Values and final states must match exactly; reported fuel may differ by
    one (the unfolding consumed by hand).  ``unfolding`` can be swapped to
    plant a wrong unfolding.
    """
    loop = While(cond, body)
    checked = 0
    for s in states:
        checked += 1
        lhs = execute(loop, budget, s)
        rhs = run_metered(lambda m: unfolding(cond, body, budget, m), budget, s)
        same = (
            (isinstance(lhs, Exhausted) and isinstance(rhs, Exhausted) and lhs.budget == rhs.budget)
            or (isinstance(lhs, Converged) and isinstance(rhs, Converged)
                and lhs.value == rhs.value and abs(lhs.fuel_used - rhs.fuel_used) <= 1)
        )
        if not same:
            return CheckReport("while-unfold", False, checked, witness={"state": s, "loop": lhs, "unfolded": rhs})
    return CheckReport("while-unfold", True, checked)


def check_while_iff_fuel(cond, body, states: Iterable[MachineState], budget: int,
                         bottom_bound: Optional[int] = None, executor: Callable = None) -> CheckReport:
    """Execution converges at minimal fuel ``k`` iff the fuel-``k`` approximant does.

    For an exhausted state the approximant at ``budget`` must be bottom, and
    with ``bottom_bound`` so must every approximant up to that bound.
    ``executor`` replaces :func:`execute` to plant a faulty one.
    """
    loop = While(cond, body)
    executor = executor or execute
    checked = 0
    for s in states:
        checked += 1
        out = executor(loop, budget, s)
        if isinstance(out, Converged):
            k = out.fuel_used
            ok = run_fuel(loop, k, s) == Defined(out.value) and run_fuel(loop, k - 1, s) is BOTTOM
        else:
            fuels = [budget] if bottom_bound is None else range(bottom_bound + 1)
            ok = all(run_fuel(loop, n, s) is BOTTOM for n in fuels)
        if not ok:
            return CheckReport("while-iff-fuel", False, checked, witness={"state": s, "outcome": out})
    return CheckReport("while-iff-fuel", True, checked)
