"""Partial-correctness triples checked by running programs on sampled states.

A triple ``{{pre}} prog {{post}}`` holds on a set of states when every state
satisfying ``pre`` either fails to converge within the budget or ends in a
pair ``(value, state')`` satisfying ``post``.  Non-converging states pass
vacuously and are counted separately so coverage is visible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from .fixpoint import DEFAULT_BUDGET
from .imp.semantics import compile_program, cond_reader, loop_program, while_fuel
from .imp.state import MachineState
from .order import BOTTOM

DEFAULT_STATE_CAP = 2_000_000


@dataclass(frozen=True)
class Budgeted:
    """A program that depends on the evaluation budget: ``build(budget) -> program``."""

    build: Callable[[int], Callable]


@dataclass(frozen=True)
class HoareTriple:
    pre: Callable[[MachineState], bool]
    prog: Any  # statement, Budgeted, or program computation
    post: Callable[[Any, MachineState], bool]

    def program(self, budget: int) -> Callable:
        if isinstance(self.prog, Budgeted):
            return self.prog.build(budget)
        if callable(self.prog):
            return self.prog
        return compile_program(self.prog, budget)


@dataclass(frozen=True)
class StateSampler:
    """Deterministic source of machine states.

    ``exhaustive``: registers range over ``0..reg_bound`` and memory over all
    maps from addresses ``1..addr_bound`` to values ``0..val_bound``.
    ``random``: ``count`` states drawn with ``seed`` from the same bounds.
    """

    mode: str = "exhaustive"
    reg_bound: int = 2
    addr_bound: int = 2
    val_bound: int = 2
    count: int = 1000
    seed: int = 0
    cap: int = DEFAULT_STATE_CAP

    def size(self) -> int:
        if self.mode == "random":
            return self.count
        return (self.reg_bound + 1) ** 2 * (self.val_bound + 1) ** self.addr_bound

    def __iter__(self):
        addrs = range(1, self.addr_bound + 1)
        if self.mode == "random":
            rng = random.Random(self.seed)
            for _ in range(self.count):
                mem = {a: rng.randint(0, self.val_bound) for a in addrs}
                yield MachineState(rng.randint(0, self.reg_bound), rng.randint(0, self.reg_bound), mem)
            return
        if self.mode != "exhaustive":
            raise ValueError(f"unknown sampler mode {self.mode!r}")
        if self.size() > self.cap:
            raise ValueError(f"{self.size()} states exceed the enumeration cap {self.cap}")
        regs = range(self.reg_bound + 1)
        for vals in itertools.product(range(self.val_bound + 1), repeat=self.addr_bound):
            mem = dict(zip(addrs, vals))
            for r1 in regs:
                for r2 in regs:
                    yield MachineState(r1, r2, mem)


@dataclass(frozen=True)
class Passed:
    states_checked: int
    converged: int
    exhausted_budget: int
    passed = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class CounterExample:
    state: MachineState
    value: Any
    post_state: MachineState
    passed = False

    def __bool__(self):
        return False


Verdict = Any  # Passed | CounterExample


def check_triple(t: HoareTriple, states: Iterable[MachineState], budget: int = DEFAULT_BUDGET) -> Verdict:
    """Run the triple's program on every state satisfying its precondition."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    prog = t.program(budget)
    relevant = converged = exhausted = 0
    for s in states:
        if not t.pre(s):
            continue
        relevant += 1
        r = prog(s)
        if r is BOTTOM:
            exhausted += 1
            continue
        converged += 1
        a, s2 = r.value
        if not t.post(a, s2):
            return CounterExample(s, a, s2)
    return Passed(relevant, converged, exhausted)


@dataclass(frozen=True)
class RuleReport:
    """Verdicts of the two phases of the loop rule; ``conclusion`` is None when the premise failed."""

    premise: Verdict
    conclusion: Optional[Verdict]

    @property
    def passed(self) -> bool:
        return bool(self.premise) and bool(self.conclusion)

    @property
    def failed_phase(self) -> Optional[int]:
        if not self.premise:
            return 1
        if not self.conclusion:
            return 2
        return None

    def __bool__(self):
        return self.passed


def _body_program(body, budget):
    return body if callable(body) else compile_program(body, budget)


def check_while_rule(cond, body, invariant: Callable, states: Iterable[MachineState],
                     budget: int = DEFAULT_BUDGET) -> RuleReport:
    """Premise ``{{I and cond}} body {{I}}``, then conclusion ``{{I}} while {{not cond and I}}``.

    ``cond`` is a condition AST or a reader; ``body`` a statement or a program.
    """
    states = list(states)
    c = cond_reader(cond)
    premise = check_triple(
        HoareTriple(lambda s: invariant(s) and c(s), _body_program(body, budget), lambda _, s: invariant(s)),
        states, budget,
    )
    if not premise:
        return RuleReport(premise, None)
    loop = Budgeted(lambda b: loop_program(c, _body_program(body, b), b))
    conclusion = check_triple(HoareTriple(invariant, loop, lambda _, s: not c(s) and invariant(s)), states, budget)
    return RuleReport(premise, conclusion)


def check_fuel_triple(fuel: int, cond, body, invariant: Callable,
                      states: Iterable[MachineState]) -> Verdict:
    """``{{I}} while_fuel fuel cond body {{not cond and I}}``."""
    c = cond_reader(cond)
    return check_triple(
        HoareTriple(invariant, lambda s: while_fuel(fuel, c, body, s), lambda _, s: not c(s) and invariant(s)),
        states, 1,
    )
