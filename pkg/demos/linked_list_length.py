"""Measuring a linked list in memory, and what happens when it loops.

    python3 demos/linked_list_length.py
"""

from pathlib import Path

from lfpwhile.imp import MachineState, parse, run_fuel
from lfpwhile.linked_list import build_list_state, length_oracle, mixed_universe, chain_specs, run_length
from lfpwhile.linked_list import check_length_correct, check_length_while_rule

program = parse((Path(__file__).parent / "length.imp").read_text())

s = build_list_state([5, 7, 9], reg1_init=5)
print("state:", s)
print("length:", run_length(5, s, budget=100))
print("fuel scan of the loop:")
for n in range(6):
    print(f"  {n}: {run_fuel(program, n, s)}")

cyclic = MachineState(4, 0, {4: 6, 6: 4})
print("\ncyclic state:", cyclic)
print("oracle:", length_oracle(cyclic, 4))
print("length:", run_length(4, cyclic, budget=200))

states = mixed_universe(chain_specs(6, 4, cap=300), seed=0)
print(f"\nchecking the correctness triples on {len(states)} states")
for name, verdict in check_length_correct(states, 70, addr_bound=6, max_len=4).items():
    print(f"  {name}: {verdict}")
print("  loop rule:", bool(check_length_while_rule(states, range(6), 70)))
