import pytest

from lfpwhile.hoare import (
    Budgeted, CounterExample, HoareTriple, Passed, StateSampler, check_fuel_triple, check_triple,
    check_while_rule,
)
from lfpwhile.imp import Eq, Lit, MachineState, Neq0, Reg1, parse
from lfpwhile.linked_list import (
    LOOP_BODY, LOOP_COND, build_list_state, chain_specs, holds_length, length_computation,
    length_invariant, mixed_universe,
)


def list_states():
    return mixed_universe(chain_specs(4, 4), seed=0)


def test_sampler_exhaustive_size_and_order():
    sampler = StateSampler(reg_bound=1, addr_bound=2, val_bound=1)
    states = list(sampler)
    assert len(states) == sampler.size() == 16
    assert len(set(states)) == 16
    assert states[0] == MachineState()


def test_sampler_random_is_seeded():
    a = list(StateSampler("random", count=20, seed=3))
    assert a == list(StateSampler("random", count=20, seed=3))
    assert a != list(StateSampler("random", count=20, seed=4))


def test_sampler_refuses_beyond_cap():
    with pytest.raises(ValueError):
        list(StateSampler(reg_bound=8, addr_bound=12, val_bound=12))


def length2_triple(offset=0):
    # {Length s 5 2} length 5 {n = 2 + offset}
    return HoareTriple(lambda s: holds_length(s, 5, 2),
                       Budgeted(lambda b: length_computation(5, b)),
                       lambda n, _s: n == 2 + offset)


def test_length_correct2_instance_passes_and_mutation_fails():
    states = list_states() + [build_list_state([5, 7])]
    v = check_triple(length2_triple(), states, 100)
    assert isinstance(v, Passed) and v.converged >= 1
    bad = check_triple(length2_triple(1), states, 100)
    assert isinstance(bad, CounterExample)
    assert bad.value == 2 and bad.state.read(5) == 7


def test_vacuous_precondition():
    v = check_triple(HoareTriple(lambda s: False, parse("skip"), lambda a, s: False), list_states(), 5)
    assert v == Passed(0, 0, 0)


def test_nonconverging_states_pass_and_are_counted():
    t = HoareTriple(lambda s: True, parse("while reg1 != 0 { skip }"), lambda a, s: False)
    v = check_triple(t, [MachineState(1), MachineState(2)], 20)
    assert v == Passed(2, 0, 2)


def test_while_rule_with_length_invariant():
    states = list_states()
    for target in range(6):
        assert check_while_rule(LOOP_COND, LOOP_BODY, length_invariant(target), states, 60)


def test_while_rule_wrong_invariant_fails_premise():
    r = check_while_rule(LOOP_COND, LOOP_BODY, lambda s: s.reg2 == 0, list_states(), 60)
    assert not r and r.failed_phase == 1
    assert r.conclusion is None


def test_while_rule_trivial_case():
    never = Eq(Lit(0), Lit(1))
    assert check_while_rule(never, parse("skip"), lambda s: True, list_states(), 5)


def test_fuel_triple():
    inv = length_invariant(2)
    states = [build_list_state([5, 7], 5)]
    assert check_fuel_triple(0, LOOP_COND, LOOP_BODY, inv, states) == Passed(1, 0, 1)
    assert check_fuel_triple(3, LOOP_COND, LOOP_BODY, inv, states) == Passed(1, 1, 0)
    # fuel equal to the chain length starves the loop: vacuous pass
    assert check_fuel_triple(2, LOOP_COND, LOOP_BODY, inv, states) == Passed(1, 0, 1)


def test_fuel_triple_wrong_invariant():
    states = [build_list_state([5, 7], 5)]
    v = check_fuel_triple(5, Neq0(Reg1()), LOOP_BODY, lambda s: s.reg2 <= 1, states)
    assert isinstance(v, CounterExample)
