"""Named property suites run by the command line.

Each suite returns a list of :class:`CheckReport`.  With ``mutate=True`` a
suite runs known-bad variants instead (a wrong functional, a broken bind, a
false postcondition, ...) so that the checkers can be seen to fail.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import fixpoint as fx
from . import order as od
from ._report import CheckReport
from .hoare import CounterExample
from .fixpoint import Converged
from .imp import (
    MachineState, parse, check_while_iff_fuel, check_while_unfold, compile_program,
    execute, read_reg1, read_reg2, write_reg1, incr_reg2, while_functional,
)
from .imp.semantics import unfold_once
from .linked_list import (
    LENGTH_LOOP, LOOP_BODY, LOOP_COND, Cyclic, chain_memory, chain_specs, check_length_correct,
    check_length_correct2, check_length_terminates, check_length_while_rule, check_while_terminates,
    length_oracle, mixed_universe,
)
from .monads import TT, bind, diverge, get, put, rbind, reader_to_program, ret, seq
from .order import BOTTOM, Defined


@dataclass(frozen=True)
class RunConfig:
    budget: int = fx.DEFAULT_BUDGET
    reg_bound: int = 8
    addr_bound: int = 12
    val_bound: int = 12
    seed: int = 0
    memories: int = 12
    max_len: int = 8
    spec_cap: int = 2000

    def __post_init__(self):
        for name in ("budget", "reg_bound", "addr_bound", "val_bound", "memories", "spec_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


SAMPLE_LOOPS = {
    "length": LENGTH_LOOP,
    "walk-to-last": parse("while mem[reg1] != 0 { reg1 := mem[reg1]; incr reg2 }"),
    "nested-walk": parse(
        "while reg1 != 0 { reg2 := reg1; while reg2 != 0 { reg2 := mem[reg2] }; reg1 := mem[reg1] }"
    ),
    "accumulate": parse("while reg2 != 0 { mem[reg1] := mem[reg1] + reg2; reg2 := mem[reg2] }"),
}


# -- state universes -------------------------------------------------------------


def structured_memories(addr_bound: int, val_bound: int, count: int, seed: int = 0) -> list:
    """Deterministic memories: well-formed chains, cyclic chains and arbitrary maps, in turn."""
    rng = random.Random(seed)
    addrs = list(range(1, addr_bound + 1))
    out = [{}]
    while len(out) < count:
        kind = len(out) % 3
        k = rng.randint(1, addr_bound)
        spec = rng.sample(addrs, k)
        if kind == 0:
            out.append(chain_memory(spec))
        elif kind == 1:
            out.append(chain_memory(spec, close_to=rng.choice(spec)))
        else:
            out.append({a: rng.randint(0, val_bound) for a in rng.sample(addrs, k)})
    return out


def structured_universe(reg_bound: int, addr_bound: int, val_bound: int, memories: int, seed: int = 0) -> list:
    """Every register pair in ``0..reg_bound`` over each structured memory."""
    regs = range(reg_bound + 1)
    return [MachineState(r1, r2, m)
            for m in structured_memories(addr_bound, val_bound, memories, seed)
            for r1 in regs for r2 in regs]


# -- order lab -------------------------------------------------------------------


def _pv_values(B):
    return [BOTTOM] + [Defined(b) for b in B]


def check_flat_directed_sets(max_carrier: int = 4) -> CheckReport:
    checked = 0
    for n in range(max_carrier + 1):
        dom = od.FlatDomain(range(n))
        expected = {frozenset([x]) for x in dom.elements} | {frozenset([BOTTOM, a]) for a in dom.carrier}
        checked += 1
        got = od.enumerate_directed(dom)
        if got != expected:
            return CheckReport("flat-directed-sets", False, checked, witness={"carrier": n, "got": got})
    return CheckReport("flat-directed-sets", True, checked)


def check_conat_compacts(probe: int = 16) -> CheckReport:
    for n in range(probe + 1):
        if not od.is_compact(od.CONAT, od.Conat(n), probe):
            return CheckReport("conat-compacts", False, n + 1, witness=od.Conat(n))
    if od.is_compact(od.CONAT, od.INFINITY, probe):
        return CheckReport("conat-compacts", False, probe + 2, witness=od.INFINITY)
    return CheckReport("conat-compacts", True, probe + 2)


def diamond() -> od.FinitePPO:
    """``bot < a, b < top``: a four-element lattice."""
    return od.FinitePPO(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "top"), ("a", "top"), ("b", "top")],
        "bot",
    )


def doctored_diamond_report() -> CheckReport:
    """Algebraicity of the diamond when its top is declared non-compact."""
    return od.check_algebraic(diamond(), compacts={"bot", "a", "b"})


def check_canonical_form(max_b: int = 3, max_n: int = 6) -> CheckReport:
    """Every monotone table on ``0..N`` is the restriction of exactly one monotone sequence."""
    checked = 0
    for nb in range(1, max_b + 1):
        B = list(range(nb))
        for N in range(max_n + 1):
            candidates = [od.NEVER_DEFINED] + [od.threshold(k, b) for k in range(N + 1) for b in B]
            restrictions = [tuple(c.at(i) for i in range(N + 1)) for c in candidates]
            for table in itertools.product(_pv_values(B), repeat=N + 1):
                if not all(od.flat_leq(x, y) for x, y in zip(table, table[1:])):
                    continue
                checked += 1
                matches = [c for c, r in zip(candidates, restrictions) if r == table]
                if len(matches) != 1 or od.MonotoneSeq.from_table(table) != matches[0]:
                    return CheckReport("canonical-form", False, checked, witness=table)
    return CheckReport("canonical-form", True, checked)


def check_lifting_uniqueness(max_b: int = 3, max_threshold: int = 6) -> CheckReport:
    """Among all extensions to infinity of a monotone sequence, only the lift is continuous."""
    checked = 0
    for nb in range(1, max_b + 1):
        B = list(range(nb))
        seqs = [od.NEVER_DEFINED] + [od.threshold(k, b) for k in range(max_threshold + 1) for b in B]
        for sq in seqs:
            lifted = od.lift_monotone(sq)
            probe = (sq.threshold or 0) + 1
            for at_inf in _pv_values(B):
                checked += 1
                cand = od.ContinuousExt(sq, at_inf)
                if od.check_continuous(cand, probe) != (cand == lifted):
                    return CheckReport("lifting-uniqueness", False, checked, witness=cand)
    return CheckReport("lifting-uniqueness", True, checked)


def check_succ_continuous(max_probe: int = 16) -> CheckReport:
    for n in range(1, max_probe + 1):
        if not od.check_continuous(od.succ_conat, n):
            return CheckReport("succ-continuous", False, n, witness=n)
    return CheckReport("succ-continuous", True, max_probe)


def suite_order_lab(cfg: RunConfig, mutate: bool = False) -> list:
    if mutate:
        r = doctored_diamond_report()
        return [CheckReport("algebraic[doctored-diamond]", r.passed, r.checked, r.witness, r.detail)]
    flat_ab = od.check_algebraic(od.FlatDomain(["a", "b"]))
    conat = od.check_algebraic(od.CONAT, probe=10)
    doctored = doctored_diamond_report()
    emb = [od.check_embedding(od.canonical_nat_embedding(16)),
           od.check_embedding(od.flat_identity_embedding(od.FlatDomain(["a", "b", "c"])))]
    return [
        check_flat_directed_sets(),
        check_conat_compacts(16),
        CheckReport("algebraic[flat]", flat_ab.passed, flat_ab.checked, flat_ab.witness),
        CheckReport("algebraic[conat]", conat.passed, conat.checked, conat.witness),
        CheckReport("doctored-control-rejected", not doctored.passed, doctored.checked,
                    None if not doctored.passed else "doctored structure was accepted"),
        check_canonical_form(),
        check_lifting_uniqueness(),
        check_succ_continuous(),
        CheckReport("embeddings", all(emb), sum(e.checked for e in emb)),
    ]


# -- fixpoint laws ---------------------------------------------------------------


def while_test_domain():
    """A three-argument closed domain for the loop functional.

    ``while reg1 != 0 { reg1 := mem[reg1] }`` over memory ``{1: 2}`` with
    ``reg1`` in ``0..2``; the body maps 1 to 2 and 2 to 0.
    """
    loop = parse("while reg1 != 0 { reg1 := mem[reg1] }")
    c = lambda s: s.reg1 != 0  # noqa: E731
    b = compile_program(loop.body, 10)
    states = [MachineState(r, 0, {1: 2}) for r in range(3)]
    A = [(c, b, s) for s in states]
    B = [(TT, s) for s in states]
    return A, B


def reference_functionals():
    A3 = [0, 1, 2]
    wa, wb = while_test_domain()
    return {
        "countdown": (fx.countdown, A3, A3),
        "constant": (fx.constant, A3, A3),
        "while": (while_functional, wa, wb),
    }


def _laws_for(name, F, A, B, threshold_bound=3) -> list:
    reports = [
        fx.check_fuel_monotone(F, 8, A),
        fx.check_functional_monotone(F, A, B, "exhaustive"),
        fx.check_continuity_preservation(F, A, B, threshold_bound),
        fx.check_lfp_laws(F, A),
    ]
    for r in reports:
        r.property = f"{r.property}[{name}]"
    return reports


def suite_fixpoint_laws(cfg: RunConfig, mutate: bool = False) -> list:
    A3 = [0, 1, 2]
    if mutate:
        return _laws_for("not-monotone", fx.not_monotone, A3, A3)[:3]
    out = []
    for name, (F, A, B) in reference_functionals().items():
        out.extend(_laws_for(name, F, A, B))
    bad = [fx.check_fuel_monotone(fx.not_monotone, 8, A3),
           fx.check_functional_monotone(fx.not_monotone, A3, A3, "exhaustive"),
           fx.check_continuity_preservation(fx.not_monotone, A3, A3, 3)]
    out.append(CheckReport("not-monotone-rejected", not any(bad), sum(r.checked for r in bad),
                           witness=None if not any(bad) else "planted functional accepted",
                           extra={"witnesses": [repr(r.witness) for r in bad]}))
    return out


# -- monad laws ------------------------------------------------------------------


def _bind_dropping_state(m, f):
    """A planted wrong bind that forgets state changes made by ``m``."""
    def run(s):
        r = m(s)
        if r is BOTTOM:
            return BOTTOM
        return f(r.value[0])(s)
    return run


def check_monad_laws(states, bind_=bind) -> list:
    """Monad laws for both monads, the coercion homomorphism and put/get, extensionally."""
    states = list(states)
    values = [0, 1, 5]
    readers = [ret(3), get(), read_reg1, lambda s: s.reg1 + s.reg2]
    reader_fns = [lambda a: ret(a), lambda a: read_reg2, lambda a: (lambda s: (a, s.reg1))]
    progs = [incr_reg2, write_reg1(4), diverge, reader_to_program(read_reg1),
             seq(incr_reg2, incr_reg2), put(MachineState(1, 1, {1: 1}))]
    prog_fns = [lambda a: reader_to_program(ret(a)), lambda a: incr_reg2,
                lambda a: diverge if a == 1 else write_reg1(2),
                lambda a: bind_(incr_reg2, lambda _: reader_to_program(read_reg2))]
    pret = lambda a: reader_to_program(ret(a))  # noqa: E731

    def ext_eq(m1, m2):
        return all(m1(s) == m2(s) for s in states)

    laws = {
        "reader-left-identity": all(ext_eq(rbind(ret(a), f), f(a)) for a in values for f in reader_fns),
        "reader-right-identity": all(ext_eq(rbind(m, ret), m) for m in readers),
        "reader-associativity": all(
            ext_eq(rbind(rbind(m, f), g), rbind(m, lambda x, f=f, g=g: rbind(f(x), g)))
            for m in readers for f in reader_fns for g in reader_fns),
        "program-left-identity": all(ext_eq(bind_(pret(a), f), f(a)) for a in values for f in prog_fns),
        "program-right-identity": all(ext_eq(bind_(m, pret), m) for m in progs),
        "program-associativity": all(
            ext_eq(bind_(bind_(m, f), g), bind_(m, lambda x, f=f, g=g: bind_(f(x), g)))
            for m in progs for f in prog_fns for g in prog_fns),
        "coercion-homomorphism": all(
            ext_eq(reader_to_program(rbind(m, f)),
                   bind_(reader_to_program(m), lambda a, f=f: reader_to_program(f(a))))
            for m in readers for f in reader_fns),
        "put-get": all(
            ext_eq(bind_(put(s1), lambda _: reader_to_program(get())),
                   bind_(put(s1), lambda _, s1=s1: reader_to_program(ret(s1))))
            and ext_eq(bind_(put(s1), lambda _: reader_to_program(get())),
                       lambda _s, s1=s1: Defined((s1, s1)))
            for s1 in states[:5]),
    }
    return [CheckReport(name, ok, len(states)) for name, ok in laws.items()]


def suite_monad_laws(cfg: RunConfig, mutate: bool = False) -> list:
    rng = random.Random(cfg.seed)
    states = [MachineState(rng.randint(0, cfg.reg_bound), rng.randint(0, cfg.reg_bound),
                           {a: rng.randint(0, cfg.val_bound) for a in range(1, 4)})
              for _ in range(20)]
    reports = check_monad_laws(states, _bind_dropping_state if mutate else bind)
    return [r for r in reports if not r.passed] if mutate else reports


# -- loop laws -----------------------------------------------------------------------


def _universe(cfg: RunConfig):
    return structured_universe(cfg.reg_bound, cfg.addr_bound, cfg.val_bound, cfg.memories, cfg.seed)


def _skip_body_unfolding(cond, body, budget, meter=None):
    """A planted wrong unfolding that forgets to run the body once."""
    return unfold_once(cond, parse("skip"), budget, meter)


def suite_while_unfold(cfg: RunConfig, mutate: bool = False) -> list:
    states = _universe(cfg)
    budget = min(cfg.budget, 10 * (cfg.addr_bound + 1))
    out = []
    for name, loop in SAMPLE_LOOPS.items():
        if mutate:
            r = check_while_unfold(loop.cond, loop.body, states, budget, unfolding=_skip_body_unfolding)
        else:
            r = check_while_unfold(loop.cond, loop.body, states, budget)
        r.property = f"while-unfold[{name}]"
        out.append(r)
    return out


def _late_executor(loop, budget, s):
    """A planted executor that over-reports the fuel it used."""
    out = execute(loop, budget, s)
    return Converged(out.value, out.fuel_used + 1) if isinstance(out, Converged) else out


def cyclic_states(states, cap: int = 50) -> list:
    """States whose list at ``reg1`` is certified cyclic by the oracle."""
    return [s for s in states if isinstance(length_oracle(s, s.reg1), Cyclic)][:cap]


def suite_while_iff_fuel(cfg: RunConfig, mutate: bool = False) -> list:
    states = _universe(cfg)
    budget = min(cfg.budget, 10 * (cfg.addr_bound + 1))
    out = []
    for name, loop in SAMPLE_LOOPS.items():
        r = check_while_iff_fuel(loop.cond, loop.body, states, budget,
                                 executor=_late_executor if mutate else None)
        r.property = f"while-iff-fuel[{name}]"
        out.append(r)
    if not mutate:
        bound = 10 * (cfg.addr_bound + 1)
        cyc = cyclic_states(states, cap=10)
        r = check_while_iff_fuel(LOOP_COND, LOOP_BODY, cyc, bound, bottom_bound=bound)
        r.property = "while-iff-fuel[cyclic-all-fuels]"
        out.append(r)
    return out


# -- the length example -------------------------------------------------------------------


def _specs(cfg: RunConfig):
    return chain_specs(cfg.addr_bound, cfg.max_len, cfg.spec_cap, cfg.seed)


def _verdict_report(name, v) -> CheckReport:
    if isinstance(v, CounterExample):
        return CheckReport(name, False, 0, witness=v)
    return CheckReport(name, True, v.states_checked,
                       extra={"converged": v.converged, "exhausted_budget": v.exhausted_budget})


def suite_hoare_length(cfg: RunConfig, mutate: bool = False) -> list:
    specs = _specs(cfg)[:300]
    states = mixed_universe(specs, cfg.seed)
    budget = min(cfg.budget, 10 * (cfg.addr_bound + 1))
    if mutate:
        v = check_length_correct2(states, budget, cfg.addr_bound, cfg.max_len, offset=1)
        return [_verdict_report("length_correct2[post n = len+1]", v)]
    res = check_length_correct(states, budget, addr_bound=cfg.addr_bound, max_len=cfg.max_len)
    return [_verdict_report(k, v) for k, v in res.items()]


def suite_length_terminates(cfg: RunConfig, mutate: bool = False) -> list:
    specs = _specs(cfg)
    if mutate:
        return [check_length_terminates(specs, cfg.budget, body=parse("reg1 := mem[reg1]"))]
    return [check_length_terminates(specs, cfg.budget),
            check_while_terminates(specs, [0, 1, 5, 13], cfg.budget)]


def _rule_report(name, r) -> CheckReport:
    if r.passed:
        return CheckReport(name, True, r.premise.states_checked + r.conclusion.states_checked)
    bad = r.premise if r.failed_phase == 1 else r.conclusion
    return CheckReport(name, False, 0, witness=bad, detail=f"phase {r.failed_phase} failed")


def suite_while_rule(cfg: RunConfig, mutate: bool = False) -> list:
    states = mixed_universe(_specs(cfg)[:200], cfg.seed)
    # registers moved off the list head so the invariant is exercised mid-walk
    states += [s.with_regs(reg2=n) for s in states[:100] for n in (1, 3)]
    budget = min(cfg.budget, 10 * (cfg.addr_bound + 1))
    targets = range(cfg.max_len + 4)
    if mutate:
        return [
            _rule_report("while-rule[invariant reg2 = 0]",
                         check_length_while_rule(states, [0], budget, invariant=lambda s: s.reg2 == 0)),
            _rule_report("while-rule[body without incr reg2]",
                         check_length_while_rule(states, targets, budget, body=parse("reg1 := mem[reg1]"))),
        ]
    return [_rule_report("while-rule[length invariant]", check_length_while_rule(states, targets, budget))]


SUITES = {
    "order-lab": suite_order_lab,
    "fixpoint-laws": suite_fixpoint_laws,
    "monad-laws": suite_monad_laws,
    "while-unfold": suite_while_unfold,
    "while-iff-fuel": suite_while_iff_fuel,
    "hoare-length": suite_hoare_length,
    "length-terminates": suite_length_terminates,
    "while-rule": suite_while_rule,
}


def run_suite(name: str, cfg: RunConfig = RunConfig(), mutate: bool = False) -> list:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(cfg, mutate)
