"""Approximants of a recursive definition, and the least fixpoint they reach.

    python3 demos/fuel_and_fixpoints.py
"""

from lfpwhile.fixpoint import eval_fuel, eval_lfp, iterate_bottom
from lfpwhile.order import BOTTOM, Defined


def collatz_steps(f, n):
    """Steps for n to reach 1 by the Collatz rule, written against an approximation f."""
    if n == 1:
        return Defined(0)
    r = f(n // 2 if n % 2 == 0 else 3 * n + 1)
    return BOTTOM if r is BOTTOM else Defined(r.value + 1)


print("fuel-n approximants at 6:")
for n in range(11):
    print(f"  fuel {n:2}: {eval_fuel(collatz_steps, n, 6)}")

print("\nleast fixpoint at 6, 27 and 97:")
for a in (6, 27, 97):
    print(f"  {a:3}: {eval_lfp(collatz_steps, 500, a)}")

print("\na budget that is too small is reported, not guessed:")
print(" ", eval_lfp(collatz_steps, 50, 27))

print("\nbottom iterated three times over 1..8:")
for a, v in iterate_bottom(collatz_steps, 3, range(1, 9)).items():
    print(f"  {a}: {v}")
