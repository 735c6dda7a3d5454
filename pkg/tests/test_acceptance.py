"""Acceptance criteria 1-8, one test each, with a PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or under pytest, where
the lines appear in the terminal summary.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lfpwhile import fixpoint as fx  # noqa: E402
from lfpwhile.hoare import CounterExample, Passed, StateSampler  # noqa: E402
from lfpwhile.imp import (  # noqa: E402
    ParseError, While, check_while_iff_fuel, check_while_unfold, parse, pretty_print, while_functional,
)
from lfpwhile.linked_list import (  # noqa: E402
    LENGTH_LOOP, LOOP_BODY, LOOP_COND, chain_specs, check_length_correct, check_length_correct2,
    check_length_terminates, check_length_while_rule, check_while_terminates, mixed_universe,
)
from lfpwhile.suites import (  # noqa: E402
    SAMPLE_LOOPS, check_canonical_form, check_conat_compacts, check_flat_directed_sets,
    check_lifting_uniqueness, check_succ_continuous, cyclic_states, doctored_diamond_report,
    structured_universe, while_test_domain,
)
from lfpwhile import order as od  # noqa: E402
from test_parser import MALFORMED, generated_asts  # noqa: E402

REG_BOUND, ADDR_BOUND, VAL_BOUND = 8, 12, 12
CYCLE_BOUND = 10 * (ADDR_BOUND + 1)
RESULTS = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def universes():
    """The two state universes standing in for the full exhaustive one.

    ``small``: every state with registers in 0..8 and memory over addresses
    1..3 with values 0..3.  ``structured``: registers 0..8 exhaustively over
    memories spanning addresses 1..12 with values 0..12 (chains, cyclic
    chains, arbitrary maps).
    """
    small = list(StateSampler(reg_bound=REG_BOUND, addr_bound=3, val_bound=3))
    structured = structured_universe(REG_BOUND, ADDR_BOUND, VAL_BOUND, memories=20, seed=0)
    return {"small": (small, 10 * 4), "structured": (structured, CYCLE_BOUND)}


# -- 1 ---------------------------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    checked, bad = 0, []
    for uname, (states, budget) in universes().items():
        for name, loop in SAMPLE_LOOPS.items():
            r = check_while_unfold(loop.cond, loop.body, states, budget)
            checked += r.checked
            if not r:
                bad.append((uname, name, r.witness))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    return record(1, "while_unfold", ok,
                  f"{checked} loop/state pairs, {len(bad)} violations, {elapsed:.1f}s (target < 30s)"
                  + (f"; first: {bad[0]}" if bad else ""))


# -- 2 ---------------------------------------------------------------------------------------


def criterion_2():
    start = time.perf_counter()
    checked, bad = 0, []
    us = universes()
    for uname, (states, budget) in us.items():
        for name, loop in SAMPLE_LOOPS.items():
            r = check_while_iff_fuel(loop.cond, loop.body, states, budget)
            checked += r.checked
            if not r:
                bad.append((uname, name, r.witness))
    cyclic = cyclic_states(us["structured"][0], cap=40) + cyclic_states(us["small"][0], cap=40)
    r = check_while_iff_fuel(LOOP_COND, LOOP_BODY, cyclic, CYCLE_BOUND, bottom_bound=CYCLE_BOUND)
    if not r:
        bad.append(("cyclic", "length", r.witness))
    elapsed = time.perf_counter() - start
    return record(2, "while_iff_while_fuel", not bad,
                  f"{checked} loop/state pairs, {len(cyclic)} cyclic states bottom for all fuels <= {CYCLE_BOUND}, "
                  f"{len(bad)} violations, {elapsed:.1f}s" + (f"; first: {bad[0]}" if bad else ""))


# -- 3, 4 ----------------------------------------------------------------------------------------


def specs():
    return chain_specs(ADDR_BOUND, 8, 2000, 0)


def criterion_3():
    start = time.perf_counter()
    r = check_length_terminates(specs(), fx.DEFAULT_BUDGET)
    elapsed = time.perf_counter() - start
    return record(3, "length_terminates", bool(r) and elapsed < 60,
                  f"{r.checked} chains, {elapsed:.1f}s (target < 60s)" + ("" if r else f"; witness {r.witness}"))


def criterion_4():
    r = check_while_terminates(specs(), [0, 1, 5, 13], fx.DEFAULT_BUDGET)
    return record(4, "while_terminates", bool(r),
                  f"{r.checked} chain/n pairs" + ("" if r else f"; witness {r.witness}"))


# -- 5 ---------------------------------------------------------------------------------------------


def criterion_5():
    states = mixed_universe(specs()[:300], seed=0)
    budget = CYCLE_BOUND
    notes, ok = [], True
    res = check_length_correct(states, budget, addr_bound=ADDR_BOUND, max_len=8)
    for name, v in res.items():
        good = isinstance(v, Passed)
        ok &= good
        notes.append(f"{name} {'passed' if good else 'FAILED'}"
                     + (f" ({v.converged} converged, {v.exhausted_budget} exhausted)" if good else ""))
    ok &= res["length_correct1"].exhausted_budget > 0

    rule_states = mixed_universe(specs()[:200], seed=0)
    rule = check_length_while_rule(rule_states, range(12), budget)
    ok &= bool(rule)
    notes.append(f"while rule {'passed' if rule else 'FAILED'}")

    mutations = {
        "post n = len+1": check_length_correct2(states, budget, ADDR_BOUND, 8, offset=1),
        "invariant reg2 = 0": check_length_while_rule(rule_states, [0], budget, invariant=lambda s: s.reg2 == 0),
        "body without incr reg2": check_length_while_rule(rule_states, range(12), budget,
                                                          body=parse("reg1 := mem[reg1]")),
    }
    caught = []
    for name, v in mutations.items():
        if isinstance(v, CounterExample) or (not isinstance(v, Passed) and not v):
            caught.append(name)
    ok &= len(caught) == 3
    notes.append(f"{len(caught)}/3 mutations caught")
    return record(5, "Hoare suite", ok, "; ".join(notes))


# -- 6 ---------------------------------------------------------------------------------------------


def criterion_6():
    A3 = [0, 1, 2]
    wa, wb = while_test_domain()
    functionals = {"countdown": (fx.countdown, A3, A3), "constant": (fx.constant, A3, A3),
                   "while": (while_functional, wa, wb)}
    failures = []
    for name, (F, A, B) in functionals.items():
        assert len(A) == len(B) == 3
        for r in (fx.check_fuel_monotone(F, 8, A),
                  fx.check_functional_monotone(F, A, B, "exhaustive"),
                  fx.check_continuity_preservation(F, A, B, 3),
                  fx.check_lfp_laws(F, A)):
            if not r:
                failures.append(f"{r.property}[{name}]")
    bad = [fx.check_fuel_monotone(fx.not_monotone, 8, A3),
           fx.check_functional_monotone(fx.not_monotone, A3, A3, "exhaustive"),
           fx.check_continuity_preservation(fx.not_monotone, A3, A3, 3)]
    rejected = all(not r and r.witness is not None for r in bad)
    return record(6, "fixpoint-engine laws", not failures and rejected,
                  f"4 laws x 3 functionals, failures: {failures or 'none'}; "
                  f"non-monotone functional rejected with witness: {rejected}")


# -- 7 ---------------------------------------------------------------------------------------------


def criterion_7():
    parts = {
        "directed sets on flat |carrier| <= 4": check_flat_directed_sets(4),
        "conat compacts up to 16": check_conat_compacts(16),
        "flat algebraic": od.check_algebraic(od.FlatDomain(["a", "b"])),
        "conat algebraic (probe 10)": od.check_algebraic(od.CONAT, probe=10),
        "doctored control rejected": not doctored_diamond_report(),
        "lift uniqueness |B| <= 3, thresholds <= 6": check_lifting_uniqueness(3, 6),
        "canonical form |B| <= 3, N <= 6": check_canonical_form(3, 6),
        "succ_conat continuous": check_succ_continuous(16),
    }
    failed = [k for k, v in parts.items() if not v]
    return record(7, "order lab", not failed, f"{len(parts)} checks, failed: {failed or 'none'}")


# -- 8 ---------------------------------------------------------------------------------------------


LENGTH_TEXT = """
reg2 := 0;
while reg1 != 0 {
  incr reg2;
  reg1 := mem[reg1]
}
"""


def criterion_8():
    asts = generated_asts(1000, seed=0, max_depth=6)
    round_trip = sum(parse(pretty_print(a)) == a for a in asts)
    from lfpwhile.imp import Lit, Seq, SetReg2
    length_ok = parse(LENGTH_TEXT) == Seq(SetReg2(Lit(0)), LENGTH_LOOP) and LENGTH_LOOP == While(LOOP_COND, LOOP_BODY)
    positioned = 0
    for text, line, col in MALFORMED[:10]:
        try:
            parse(text)
        except ParseError as e:
            positioned += (e.line, e.column) == (line, col)
    ok = round_trip == 1000 and length_ok and positioned == 10
    return record(8, "parser", ok,
                  f"round trip {round_trip}/1000, length text {'ok' if length_ok else 'WRONG'}, "
                  f"positioned errors {positioned}/10")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    random.seed(0)
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
