"""The linked-list length program, a reference oracle, and termination checks.

A list lives in memory as a chain of addresses: the cell at each address
holds the address of the next one, and address 0 ends the list.  The
``length`` program walks the chain with a while loop, counting in ``reg2``.
Whether that walk ends is decided independently by :func:`length_oracle`,
a visited-set walk that also reports where a badly linked list cycles.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._report import CheckReport
from .fixpoint import DEFAULT_BUDGET, Converged
from .hoare import Budgeted, CounterExample, HoareTriple, Passed, RuleReport, check_triple, check_while_rule
from .imp.semantics import (
    compile_program, execute, incr_reg2, loop_program, read_addr, read_reg1, read_reg2, write_reg1, write_reg2,
)
from .imp.state import MachineState
from .imp.syntax import IncrReg2, Lit, Mem, Neq0, Reg1, Seq, SetReg1, SetReg2, While, seq
from .monads import bind, rbind, reader_to_program, ret
from .monads import seq as then

LOOP_COND = Neq0(Reg1())
LOOP_BODY = Seq(IncrReg2(), SetReg1(Mem(Reg1())))
LENGTH_LOOP = While(LOOP_COND, LOOP_BODY)

DEFAULT_MAX_LEN = 8
DEFAULT_ADDR_BOUND = 12


# -- building list states --------------------------------------------------------


def validate_chain(spec: Sequence[int]) -> tuple:
    spec = tuple(spec)
    for a in spec:
        if not isinstance(a, int) or a <= 0:
            raise ValueError(f"chain addresses must be positive, got {a!r}")
    if len(set(spec)) != len(spec):
        raise ValueError(f"chain addresses must be distinct: {spec}")
    return spec


def parse_chain(text: str) -> tuple:
    """``"5,7,9"`` -> ``(5, 7, 9)``; the empty string is the empty list."""
    text = text.strip()
    if not text:
        return ()
    try:
        return validate_chain(int(part) for part in text.split(","))
    except ValueError as e:
        raise ValueError(f"bad chain {text!r}: {e}") from None


def chain_memory(spec: Sequence[int], close_to: Optional[int] = None) -> dict:
    """Memory links of a chain; ``close_to`` relinks the last cell to that address."""
    spec = validate_chain(spec)
    links = dict(zip(spec, spec[1:]))
    if spec:
        links[spec[-1]] = 0 if close_to is None else close_to
    return links


def build_list_state(spec: Sequence[int], reg1_init: int = 0, reg2_init: int = 0) -> MachineState:
    return MachineState(reg1_init, reg2_init, chain_memory(spec))


def head(spec: Sequence[int]) -> int:
    return spec[0] if spec else 0


# -- the program ---------------------------------------------------------------


def length_program_with(addr: int, body):
    """The length program around an arbitrary loop body (used to plant mutations)."""
    return seq(SetReg1(Lit(addr)), SetReg2(Lit(0)), While(LOOP_COND, body))


def length_program(addr: int):
    """``reg1 := addr; reg2 := 0; while reg1 != 0 { incr reg2; reg1 := mem[reg1] }``."""
    return length_program_with(addr, LOOP_BODY)


def length_computation(addr: int, budget: int = DEFAULT_BUDGET, body=LOOP_BODY):
    """The length program as a computation returning the count in ``reg2``."""
    return bind(compile_program(length_program_with(addr, body), budget), lambda _: reader_to_program(read_reg2))


def shallow_length(addr: int, budget: int = DEFAULT_BUDGET):
    """The same program written directly with the monadic primitives."""
    cond = rbind(read_reg1, lambda curr: ret(curr != 0))
    body = then(incr_reg2, bind(reader_to_program(rbind(read_reg1, read_addr)), write_reg1))

    loop = loop_program(cond, body, budget)
    return then(write_reg1(addr), then(write_reg2(0), then(loop, reader_to_program(read_reg2))))


def run_length(addr: int, s: MachineState, budget: int = DEFAULT_BUDGET, body=LOOP_BODY):
    """``Converged((len, final_state), fuel)`` or ``Exhausted(budget)``."""
    out = execute(length_program_with(addr, body), budget, s)
    if isinstance(out, Converged):
        _, final = out.value
        return Converged((final.reg2, final), out.fuel_used)
    return out


# -- the reference side --------------------------------------------------------


@dataclass(frozen=True)
class DefinedLen:
    len: int


@dataclass(frozen=True)
class Cyclic:
    entry: int


def length_oracle(s: MachineState, addr: int):
    """Walk ``addr, mem[addr], ...`` until 0 or a revisited address."""
    seen = set()
    steps = 0
    while addr != 0:
        if addr in seen:
            return Cyclic(addr)
        seen.add(addr)
        addr = s.read(addr)
        steps += 1
    return DefinedLen(steps)


def length_relation(s: MachineState, addr: int, depth_cap: int) -> Optional[int]:
    """The length derivable from the two inductive rules within ``depth_cap`` steps.

    ``length_nil``: address 0 has length 0; ``length_cons``: a nonzero
    address has length ``len + 1`` when its successor has length ``len``.
    """
    if addr == 0:
        return 0
    if depth_cap == 0:
        return None
    rest = length_relation(s, s.read(addr), depth_cap - 1)
    return None if rest is None else rest + 1


def holds_length(s: MachineState, addr: int, n: int) -> bool:
    return length_oracle(s, addr) == DefinedLen(n)


# -- state families --------------------------------------------------------------


def chain_specs(addr_bound: int = DEFAULT_ADDR_BOUND, max_len: int = DEFAULT_MAX_LEN,
                cap: int = 2000, seed: int = 0) -> list:
    """Distinct chains over addresses ``1..addr_bound`` of length at most ``max_len``.

    All of them when there are at most ``cap``; otherwise a deterministic
    sample of ``cap`` chains that contains every length.
    """
    addrs = range(1, addr_bound + 1)
    total = sum(_perm_count(addr_bound, k) for k in range(min(max_len, addr_bound) + 1))
    if total <= cap:
        return [c for k in range(min(max_len, addr_bound) + 1) for c in itertools.permutations(addrs, k)]
    rng = random.Random(seed)
    lengths = range(min(max_len, addr_bound) + 1)
    specs = {()}
    for k in lengths:
        if k:
            specs.add(tuple(rng.sample(addrs, k)))
    while len(specs) < cap:
        k = rng.choice(lengths)
        specs.add(tuple(rng.sample(addrs, k)))
    return sorted(specs, key=lambda c: (len(c), c))


def _perm_count(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def cyclic_variant(spec: Sequence[int], rng: random.Random) -> MachineState:
    """The chain with its last cell linked back onto one of its own addresses."""
    target = rng.choice(spec)
    return MachineState(spec[0], 0, chain_memory(spec, close_to=target))


def mixed_universe(specs: Iterable[Sequence[int]], seed: int = 0) -> list:
    """Well-formed list states plus one cyclic closure of every nonempty chain."""
    rng = random.Random(seed)
    states = []
    for spec in specs:
        states.append(build_list_state(spec, head(spec), 0))
        if spec:
            states.append(cyclic_variant(spec, rng))
    return states


# -- executable checks -----------------------------------------------------------


def check_while_terminates(specs: Iterable[Sequence[int]], n_values: Iterable[int],
                           budget: int = DEFAULT_BUDGET) -> CheckReport:
    """From ``reg1 = head, reg2 = n`` the bare loop ends with ``reg1 = 0, reg2 = n + len``."""
    n_values = list(n_values)
    checked = 0
    for spec in specs:
        mem = chain_memory(spec)
        ln = len(spec)
        for n in n_values:
            checked += 1
            start = MachineState(head(spec), n, mem)
            out = execute(LENGTH_LOOP, budget, start)
            expected = ((), MachineState(0, n + ln, mem))
            if not (isinstance(out, Converged) and out.value == expected):
                return CheckReport("while-terminates", False, checked,
                                   witness={"chain": tuple(spec), "n": n, "outcome": out})
    return CheckReport("while-terminates", True, checked)


def check_length_terminates(specs: Iterable[Sequence[int]], budget: int = DEFAULT_BUDGET,
                            body=LOOP_BODY) -> CheckReport:
    """``length head`` returns the oracle's length with ``reg1 = 0, reg2 = len``, memory untouched."""
    checked = 0
    for spec in specs:
        checked += 1
        s = build_list_state(spec, 0, 0)
        addr = head(spec)
        want = length_oracle(s, addr)
        out = run_length(addr, s, budget, body)
        ok = (isinstance(want, DefinedLen) and isinstance(out, Converged)
              and out.value == (want.len, MachineState(0, want.len, s.memory)))
        if not ok:
            return CheckReport("length-terminates", False, checked,
                               witness={"chain": tuple(spec), "oracle": want, "outcome": out})
    return CheckReport("length-terminates", True, checked)


def _addresses(s: MachineState) -> list:
    return sorted({0, s.reg1} | {a for a, _ in s.memory})


def check_length_correct1(states: Iterable[MachineState], budget: int = DEFAULT_BUDGET):
    """``{{s = s0}} length addr {{Length s0 addr reg2}}`` for every state and address in it."""
    relevant = converged = exhausted = 0
    for s0 in states:
        for addr in _addresses(s0):
            v = check_triple(
                HoareTriple(lambda s, s0=s0: s == s0,
                            length_program(addr),
                            lambda _, s2, s0=s0, addr=addr: holds_length(s0, addr, s2.reg2)),
                [s0], budget)
            if not v:
                return v
            relevant += v.states_checked
            converged += v.converged
            exhausted += v.exhausted_budget
    return Passed(relevant, converged, exhausted)


def check_length_correct2(states: Iterable[MachineState], budget: int = DEFAULT_BUDGET,
                          addr_bound: int = DEFAULT_ADDR_BOUND, max_len: int = DEFAULT_MAX_LEN,
                          offset: int = 0, body=LOOP_BODY):
    """``{{Length s addr len}} length addr {{n = len + offset}}`` for all ``addr``, ``len``.

    ``offset`` and ``body`` exist to plant mutations; the property proper is ``offset = 0``
    with the original loop body.
    """
    states = list(states)
    relevant = converged = exhausted = 0
    for addr in range(addr_bound + 1):
        for ln in range(max_len + 1):
            v = check_triple(
                HoareTriple(lambda s, addr=addr, ln=ln: holds_length(s, addr, ln),
                            Budgeted(lambda b, addr=addr: length_computation(addr, b, body)),
                            lambda n, _s, ln=ln: n == ln + offset),
                states, budget)
            if not v:
                return v
            relevant += v.states_checked
            converged += v.converged
            exhausted += v.exhausted_budget
    return Passed(relevant, converged, exhausted)


def check_length_correct(states: Iterable[MachineState], budget: int = DEFAULT_BUDGET, **kw) -> dict:
    states = list(states)
    return {
        "length_correct1": check_length_correct1(states, budget),
        "length_correct2": check_length_correct2(states, budget, **kw),
    }


def length_invariant(target: int):
    """Loop invariant specialised to the postcondition ``n = target``.

    Holds when the list at ``reg1`` is cyclic (there is no length to speak
    of) or its length plus ``reg2`` equals ``target``.
    """

    def inv(s: MachineState) -> bool:
        r = length_oracle(s, s.reg1)
        return isinstance(r, Cyclic) or r.len + s.reg2 == target

    return inv


def check_length_while_rule(states: Iterable[MachineState], targets: Iterable[int],
                            budget: int = DEFAULT_BUDGET, body=LOOP_BODY,
                            invariant=None) -> RuleReport:
    """The loop rule for the length loop with :func:`length_invariant` per target.

    Returns the first failing report, or the last passing one.
    """
    states = list(states)
    report = None
    for t in targets:
        inv = length_invariant(t) if invariant is None else invariant
        report = check_while_rule(LOOP_COND, body, inv, states, budget)
        if not report:
            return report
    return report


__all__ = [
    "LENGTH_LOOP", "LOOP_BODY", "LOOP_COND", "Cyclic", "DefinedLen", "CounterExample", "Passed",
    "build_list_state", "chain_memory", "chain_specs", "check_length_correct", "check_length_correct1",
    "check_length_correct2", "check_length_terminates", "check_length_while_rule",
    "check_while_terminates", "cyclic_variant", "head", "holds_length", "length_computation",
    "length_invariant", "length_oracle", "length_program", "length_relation", "mixed_universe",
    "parse_chain", "run_length", "shallow_length", "validate_chain",
]
