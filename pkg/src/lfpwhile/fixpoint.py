"""Least fixpoints of functionals through fuel-indexed approximants.

A functional ``F(f, a)`` receives an approximation ``f`` (a callable from
arguments to partial values) and an argument ``a``.  The approximant with
fuel ``n`` is bottom at ``n = 0`` and ``F`` applied to the ``n - 1``
approximant otherwise; its limit as fuel goes to infinity is the least
fixpoint of ``F`` when ``F`` is monotone and preserves continuity.  Both
requirements are checked here on finite sub-domains, never assumed.

Functionals must be pure and must not swallow ``BaseException``: evaluation
suspends a functional by raising from inside the approximation it was given,
evaluates the missing approximant, and replays the functional.  Arguments
must be hashable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

from ._report import CheckReport
from .order import (
    BOTTOM,
    Defined,
    MonotoneSeq,
    NEVER_DEFINED,
    PartialValue,
    check_continuous,
    flat_leq,
    is_defined,
)

DEFAULT_BUDGET = 10_000
DEFAULT_FUNCTION_BOUND = 4096

Functional = Callable[[Callable[[Any], PartialValue], Any], PartialValue]


@dataclass(frozen=True)
class Converged:
    value: Any
    fuel_used: int

    def as_partial(self) -> PartialValue:
        return Defined(self.value)


@dataclass(frozen=True)
class Exhausted:
    """No fuel up to ``budget`` produced a value.

    This over-approximates divergence: a larger budget may still converge.
    """

    budget: int

    def as_partial(self) -> PartialValue:
        return BOTTOM


EvalOutcome = Any  # Converged | Exhausted


class _Pending(BaseException):
    """Raised through a functional when it asks for an approximant not yet computed."""

    def __init__(self, key):
        self.key = key


def _evaluate(F: Functional, fuel: int, a: Hashable, memo: dict) -> tuple[PartialValue, int]:
    """Approximant ``fuel`` at ``a``; also returns the lowest level at which F ran.

    ``memo`` maps ``(level, argument)`` to computed approximant values and may
    be shared between calls on the same functional.
    """
    if fuel <= 0:
        return BOTTOM, 0
    lowest = fuel
    stack = [(fuel, a)]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        level, x = key
        below = level - 1

        def approx(y, _below=below):
            if _below == 0:
                return BOTTOM
            k = (_below, y)
            try:
                return memo[k]
            except KeyError:
                raise _Pending(k) from None

        try:
            result = F(approx, x)
        except _Pending as p:
            stack.append(p.key)
            continue
        memo[key] = result
        lowest = min(lowest, level)
        stack.pop()
    return memo[(fuel, a)], lowest


def eval_fuel(F: Functional, fuel: int, a: Hashable) -> PartialValue:
    """The fuel-``fuel`` approximant of the least fixpoint of ``F`` at ``a``."""
    if fuel < 0:
        raise ValueError("fuel must be a natural number")
    return _evaluate(F, fuel, a, {})[0]


def eval_lfp(F: Functional, budget: int = DEFAULT_BUDGET, a: Hashable = None) -> EvalOutcome:
    """Budgeted least fixpoint of ``F`` at ``a`` with the minimal defining fuel.

    The approximant at ``budget`` is evaluated once.  The depth of its call
    tree bounds the minimal fuel from above; when the approximant one level
    lower is already bottom that bound is exact, otherwise (functionals that
    ignore some of their recursive answers) a bisection over smaller fuels
    finds it, relying on fuel-monotonicity.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    memo: dict = {}
    value, lowest = _evaluate(F, budget, a, memo)
    if value is BOTTOM:
        return Exhausted(budget)
    depth = budget - lowest + 1
    hi = depth
    lo = 0  # approximant at lo is bottom
    if depth > 1 and _evaluate(F, depth - 1, a, memo)[0] is not BOTTOM:
        hi = depth - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _evaluate(F, mid, a, memo)[0] is BOTTOM:
                lo = mid
            else:
                hi = mid
    return Converged(value.value, hi)


def iterate_bottom(F: Functional, n: int, domain_sample: Iterable[Hashable]) -> dict:
    """The graph of ``F`` iterated ``n`` times from the everywhere-bottom function.

    Built by plain ``n``-fold application with per-level caches, independently
    of :func:`eval_fuel`; recursion depth grows with ``n``, so keep ``n`` small.
    """

    def bottom(_x):
        return BOTTOM

    f = bottom
    for _ in range(n):
        f = _cached(lambda x, prev=f: F(prev, x))
    return {a: f(a) for a in domain_sample}


def _cached(fn):
    cache: dict = {}

    def wrapper(x):
        try:
            return cache[x]
        except KeyError:
            cache[x] = r = fn(x)
            return r

    return wrapper


# -- checkers ------------------------------------------------------------------


def check_fuel_monotone(F: Functional, fuel_bound: int, domain_sample: Iterable[Hashable]) -> CheckReport:
    """All approximants up to ``fuel_bound`` increase with fuel in the flat order."""
    checked = 0
    for a in domain_sample:
        memo: dict = {}
        values = [_evaluate(F, n, a, memo)[0] for n in range(fuel_bound + 1)]
        for n, m in itertools.combinations(range(fuel_bound + 1), 2):
            checked += 1
            if not flat_leq(values[n], values[m]):
                return CheckReport("fuel-monotone", False, checked,
                                   witness={"arg": a, "fuel": n, "larger_fuel": m,
                                            "values": (values[n], values[m])})
    return CheckReport("fuel-monotone", True, checked)


class _TableFunction:
    """A total map on a finite domain, used as an approximation argument."""

    def __init__(self, table: dict):
        self.table = table

    def __call__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise ValueError(f"functional queried {x!r}, outside the finite domain") from None

    def __repr__(self) -> str:
        return f"{{{', '.join(f'{k!r}: {v!r}' for k, v in self.table.items())}}}"


def _partial_values(finite_B: Sequence) -> list:
    return [BOTTOM] + [Defined(b) for b in finite_B]


def all_functions(finite_A: Sequence, finite_B: Sequence) -> Iterable[dict]:
    """Every total map from ``finite_A`` to partial values over ``finite_B``."""
    values = _partial_values(finite_B)
    for combo in itertools.product(values, repeat=len(finite_A)):
        yield dict(zip(finite_A, combo))


def _below_pairs_exhaustive(finite_A, finite_B):
    """Pairs ``f <= f'`` (pointwise), enumerated coordinate by coordinate."""
    choices = [(BOTTOM, BOTTOM)]
    for b in finite_B:
        choices.append((BOTTOM, Defined(b)))
        choices.append((Defined(b), Defined(b)))
    for combo in itertools.product(choices, repeat=len(finite_A)):
        yield ({a: c[0] for a, c in zip(finite_A, combo)},
               {a: c[1] for a, c in zip(finite_A, combo)})


def _below_pairs_sampled(finite_A, finite_B, count, seed):
    rng = random.Random(seed)
    values = _partial_values(finite_B)
    for _ in range(count):
        lo = {a: rng.choice(values) for a in finite_A}
        hi = {a: (v if v is not BOTTOM or rng.random() < 0.5 else Defined(rng.choice(finite_B)))
              for a, v in lo.items()}
        yield lo, hi


def check_functional_monotone(
    F: Functional,
    finite_A: Sequence,
    finite_B: Sequence,
    mode: str = "exhaustive",
    count: int = 1000,
    seed: int = 0,
    bound: int = DEFAULT_FUNCTION_BOUND,
) -> CheckReport:
    """``f <= f'`` pointwise implies ``F f a <= F f' a`` for every ``a``.

    ``mode`` is ``"exhaustive"`` (every pair of maps, refused when there are
    more than ``bound`` maps) or ``"sampled"`` (``count`` random pairs).
    """
    finite_A, finite_B = list(finite_A), list(finite_B)
    if mode == "exhaustive":
        n_functions = (len(finite_B) + 1) ** len(finite_A)
        if n_functions > bound:
            raise ValueError(f"{n_functions} candidate functions exceed the bound {bound}")
        pairs = _below_pairs_exhaustive(finite_A, finite_B)
    elif mode == "sampled":
        pairs = _below_pairs_sampled(finite_A, finite_B, count, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = 0
    for lo, hi in pairs:
        f_lo, f_hi = _TableFunction(lo), _TableFunction(hi)
        for a in finite_A:
            checked += 1
            r_lo, r_hi = F(f_lo, a), F(f_hi, a)
            if not flat_leq(r_lo, r_hi):
                return CheckReport("functional-monotone", False, checked,
                                   witness={"f": f_lo, "f_prime": f_hi, "arg": a,
                                            "results": (r_lo, r_hi)})
    return CheckReport("functional-monotone", True, checked)


def _seq_choices(finite_B, threshold_bound):
    return [NEVER_DEFINED] + [MonotoneSeq(k, b) for k in range(threshold_bound + 1) for b in finite_B]


def check_continuity_preservation(
    F: Functional,
    finite_A: Sequence,
    finite_B: Sequence,
    threshold_bound: int,
    bound: int = DEFAULT_FUNCTION_BOUND,
    count: int = 1000,
    seed: int = 0,
) -> CheckReport:
    """Continuity of ``n -> g n a`` for all ``a`` implies continuity of ``n -> F (g n) a'``.

    Families ``g`` assign a monotone sequence (threshold at most
    ``threshold_bound``) to every argument; ``g`` at infinity is the pointwise
    lub.  Families are enumerated when there are at most ``bound`` of them,
    otherwise ``count`` are sampled with ``seed``.
    """
    finite_A, finite_B = list(finite_A), list(finite_B)
    choices = _seq_choices(finite_B, threshold_bound)
    n_families = len(choices) ** len(finite_A)
    if n_families <= bound:
        families: Iterable = itertools.product(choices, repeat=len(finite_A))
    else:
        rng = random.Random(seed)
        families = ([rng.choice(choices) for _ in finite_A] for _ in range(count))
    probe = threshold_bound + 1
    checked = 0
    for fam in families:
        seqs = dict(zip(finite_A, fam))
        levels = [_TableFunction({a: s.at(n) for a, s in seqs.items()}) for n in range(probe + 1)]
        limit = _TableFunction({a: (BOTTOM if s.threshold is None else Defined(s.value))
                                for a, s in seqs.items()})
        for a in finite_A:
            checked += 1
            table = [F(g, a) for g in levels]
            at_inf = F(limit, a)
            if not check_continuous((table, at_inf), probe):
                return CheckReport("continuity-preservation", False, checked,
                                   witness={"family": seqs, "arg": a,
                                            "finite_values": table, "at_infinity": at_inf})
    return CheckReport("continuity-preservation", True, checked)


def check_lfp_laws(F: Functional, domain_sample: Sequence[Hashable], n_max: int = 8,
                   budget: int = 64, window: int = 16) -> CheckReport:
    """The least-fixpoint properties on a sample of arguments.

    * the fixpoint equation restated on approximants: a result converging at
      fuel ``k`` equals ``F`` applied to the ``k - 1`` approximant;
    * every iterate from bottom lies below the converged value, and equals
      the approximant with the same fuel;
    * a converged value stays put for ``window`` further fuel levels;
    * an exhausted budget means every approximant up to it is bottom.
    """
    checked = 0

    def fail(what, witness):
        return CheckReport("lfp-laws", False, checked, witness=witness, detail=what)

    iterates = [iterate_bottom(F, n, domain_sample) for n in range(n_max + 1)]
    for a in domain_sample:
        out = eval_lfp(F, budget, a)
        for n in range(n_max + 1):
            checked += 1
            it = iterates[n][a]
            if it != eval_fuel(F, n, a):
                return fail("iterate differs from approximant", (a, n))
            if isinstance(out, Converged) and not flat_leq(it, out.as_partial()):
                return fail("iterate not below the least fixpoint", (a, n))
        if isinstance(out, Converged):
            k = out.fuel_used
            prev = lambda y: eval_fuel(F, k - 1, y)  # noqa: E731
            if F(prev, a) != Defined(out.value):
                return fail("fixpoint equation fails", a)
            if eval_fuel(F, k - 1, a) is not BOTTOM:
                return fail("reported fuel is not minimal", (a, k))
            for m in range(k, k + window + 1):
                checked += 1
                if eval_fuel(F, m, a) != Defined(out.value):
                    return fail("converged value is not stable", (a, m))
        else:
            if eval_fuel(F, budget, a) is not BOTTOM:
                return fail("exhausted budget but approximant is defined", a)
    return CheckReport("lfp-laws", True, checked)


# -- reference functionals -----------------------------------------------------


def countdown(f, n):
    """``n = 0`` yields 0, otherwise recurse on ``n - 1``."""
    return Defined(0) if n == 0 else f(n - 1)


def looping(f, a):
    return f(a)


def constant(f, a):
    return Defined(a)


def not_monotone(f, a):
    """Defined exactly where the approximation is not; a planted bad functional."""
    return BOTTOM if is_defined(f(a)) else Defined(a)
