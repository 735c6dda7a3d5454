"""Executable order theory on finite instances.

Pointed partial orders are given by explicit element sets and order
relations, so every notion here (directed set, lub, compactness,
algebraicity, continuity) is decided by enumeration.  The one infinite CPO
that matters for fuel, the naturals extended with infinity, gets a
dedicated representation whose directed sets are described by
:data:`ALL_NATURALS` or a finite set of :class:`Conat` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from ._report import CheckReport

DEFAULT_ENUMERATION_BOUND = 12


# -- flat-lifted values ------------------------------------------------------


class _Bottom:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Bottom"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


@dataclass(frozen=True)
class Defined:
    value: Any

    def __repr__(self) -> str:
        return f"Defined({self.value!r})"


PartialValue = Any  # BOTTOM | Defined


def is_defined(x: PartialValue) -> bool:
    return x is not BOTTOM


def flat_leq(x: PartialValue, y: PartialValue) -> bool:
    """The flat order: bottom is below everything, defined values only below themselves."""
    return x is BOTTOM or x == y


def flat_lub(values: Iterable[PartialValue]) -> PartialValue:
    """Least upper bound of a set of partial values.

    Raises ``ValueError`` when two distinct defined values occur, since such a
    set has no upper bound in the flat order.
    """
    result = BOTTOM
    for v in values:
        if v is BOTTOM:
            continue
        if result is BOTTOM:
            result = v
        elif result != v:
            raise ValueError(f"no upper bound for {result!r} and {v!r} in a flat order")
    return result


# -- conat --------------------------------------------------------------------


@dataclass(frozen=True)
class Conat:
    """A natural number or infinity; ``n is None`` encodes infinity."""

    n: Optional[int] = None

    def __post_init__(self):
        if self.n is not None and self.n < 0:
            raise ValueError("conat values are non-negative")

    @property
    def is_finite(self) -> bool:
        return self.n is not None

    def __le__(self, other: "Conat") -> bool:
        if other.n is None:
            return True
        if self.n is None:
            return False
        return self.n <= other.n

    def __lt__(self, other: "Conat") -> bool:
        return self <= other and self != other

    def __repr__(self) -> str:
        return "Infinity" if self.n is None else f"Finite({self.n})"


def finite(n: int) -> Conat:
    return Conat(n)


INFINITY = Conat(None)


class _AllNaturals:
    __slots__ = ()

    def __repr__(self) -> str:
        return "AllNaturals"


ALL_NATURALS = _AllNaturals()


class _ConatCPO:
    __slots__ = ()

    def __repr__(self) -> str:
        return "CONAT"


CONAT = _ConatCPO()


def succ_conat(x: Conat) -> Conat:
    return INFINITY if x.n is None else Conat(x.n + 1)


def _conat_set(descriptor) -> frozenset:
    if descriptor is ALL_NATURALS:
        raise TypeError("AllNaturals is not a finite set")
    items = frozenset(descriptor)
    for x in items:
        if not isinstance(x, Conat):
            raise TypeError(f"{x!r} is not a conat")
    return items


def lub_conat(descriptor) -> Conat:
    """Lub of a directed subset of conat.

    ``descriptor`` is either :data:`ALL_NATURALS` or a finite collection of
    :class:`Conat`.  In a total order every nonempty set is directed; the lub
    is the maximum when one exists and infinity otherwise.
    """
    if descriptor is ALL_NATURALS:
        return INFINITY
    items = _conat_set(descriptor)
    if not items:
        raise ValueError("lub of an empty set is undefined")
    if INFINITY in items:
        return INFINITY
    return Conat(max(x.n for x in items))


def _conat_has_above(descriptor, x: Conat) -> bool:
    """Whether some member of the descriptor lies above ``x``."""
    if descriptor is ALL_NATURALS:
        return x.is_finite
    return any(x <= t for t in descriptor)


def conat_probe_family(probe: int) -> list:
    """Directed conat descriptors used to decide compactness up to ``probe``.

    Contains AllNaturals, every initial segment ``{0..m}`` for ``m <= probe``
    and every set of one or two points drawn from ``{0..probe, infinity}``.
    """
    points = [Conat(i) for i in range(probe + 1)] + [INFINITY]
    family: list = [ALL_NATURALS]
    family.extend(frozenset(Conat(i) for i in range(m + 1)) for m in range(probe + 1))
    family.extend(frozenset(c) for r in (1, 2) for c in combinations(points, r))
    return family


# -- finite pointed partial orders ------------------------------------------


class FinitePPO:
    """A finite pointed partial order given by an explicit ``leq`` relation.

    ``leq`` is a collection of pairs ``(x, y)`` meaning ``x <= y``.  Reflexive
    pairs may be omitted; transitivity is checked, not closed over.
    """

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple], bottom: Hashable):
        self.elements = frozenset(elements)
        rel = set(leq)
        rel.update((x, x) for x in self.elements)
        self.bottom = bottom
        self._leq = frozenset(rel)
        self._validate()

    def _validate(self):
        if self.bottom not in self.elements:
            raise ValueError("bottom must be an element")
        for x, y in self._leq:
            if x not in self.elements or y not in self.elements:
                raise ValueError(f"pair ({x!r}, {y!r}) mentions an unknown element")
            if x != y and (y, x) in self._leq:
                raise ValueError(f"antisymmetry fails on {x!r}, {y!r}")
        for x, y in self._leq:
            for y2, z in self._leq:
                if y == y2 and (x, z) not in self._leq:
                    raise ValueError(f"transitivity fails on {x!r} <= {y!r} <= {z!r}")
        for x in self.elements:
            if (self.bottom, x) not in self._leq:
                raise ValueError(f"bottom is not below {x!r}")

    def le(self, x, y) -> bool:
        return (x, y) in self._leq

    def __repr__(self) -> str:
        return f"FinitePPO({len(self.elements)} elements)"


def chain_ppo(n: int) -> FinitePPO:
    """The chain ``0 <= 1 <= ... <= n-1``."""
    elems = range(n)
    return FinitePPO(elems, [(i, j) for i in elems for j in elems if i <= j], 0)


class FlatDomain:
    """The flat PPO of a finite carrier; bottom is :data:`BOTTOM`."""

    def __init__(self, carrier: Iterable[Hashable]):
        self.carrier = frozenset(carrier)
        if BOTTOM in self.carrier:
            raise ValueError("the carrier must not contain bottom")
        self.elements = self.carrier | {BOTTOM}
        self.bottom = BOTTOM

    def le(self, x, y) -> bool:
        return x is BOTTOM or x == y

    def to_ppo(self) -> FinitePPO:
        pairs = [(BOTTOM, a) for a in self.carrier]
        return FinitePPO(self.elements, pairs, BOTTOM)

    def __repr__(self) -> str:
        return f"FlatDomain({sorted(map(repr, self.carrier))})"


def _check_members(ppo, subset) -> frozenset:
    subset = frozenset(subset)
    stray = subset - ppo.elements
    if stray:
        raise ValueError(f"elements outside the order: {sorted(map(repr, stray))}")
    return subset


def is_directed(ppo, subset: Iterable) -> bool:
    """Nonempty, and every pair has an upper bound inside ``subset``."""
    subset = _check_members(ppo, subset)
    if not subset:
        return False
    return all(
        any(ppo.le(x, z) and ppo.le(y, z) for z in subset)
        for x, y in combinations(subset, 2)
    )


def _powerset(items: Sequence) -> Iterable[frozenset]:
    return (frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1)))


def enumerate_directed(ppo, bound: int = DEFAULT_ENUMERATION_BOUND) -> set:
    """All directed subsets of a finite PPO (exhaustive, so size-bounded)."""
    if len(ppo.elements) > bound:
        raise ValueError(f"{len(ppo.elements)} elements exceed the enumeration bound {bound}")
    items = sorted(ppo.elements, key=repr)
    return {s for s in _powerset(items) if is_directed(ppo, s)}


def lub(ppo, subset: Iterable):
    """Least upper bound in a finite PPO; ``ValueError`` if there is none."""
    subset = _check_members(ppo, subset)
    uppers = [z for z in ppo.elements if all(ppo.le(x, z) for x in subset)]
    least = [u for u in uppers if all(ppo.le(u, v) for v in uppers)]
    if not least:
        raise ValueError(f"no least upper bound for {sorted(map(repr, subset))}")
    return least[0]


def lub_flat(domain: FlatDomain, subset: Iterable):
    subset = _check_members(domain, subset)
    if not is_directed(domain, subset):
        raise ValueError(f"{sorted(map(repr, subset))} is not directed in a flat domain")
    return flat_lub(subset)


def is_compact(cpo, element, probe: int = 16, bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """Decide compactness by checking every directed set the instance offers.

    For :data:`CONAT` the directed sets examined are :func:`conat_probe_family`;
    for finite orders they are all directed subsets.
    """
    if cpo is CONAT:
        if not isinstance(element, Conat):
            raise ValueError(f"{element!r} is not a conat")
        return all(
            _conat_has_above(t, element)
            for t in conat_probe_family(probe)
            if element <= lub_conat(t)
        )
    if element not in cpo.elements:
        raise ValueError(f"{element!r} is not an element")
    for t in enumerate_directed(cpo, bound):
        if cpo.le(element, lub(cpo, t)) and not any(cpo.le(element, x) for x in t):
            return False
    return True


def check_algebraic(cpo, probe: int = 10, compacts: Optional[Iterable] = None) -> CheckReport:
    """Check that each element is the lub of the directed set of compacts below it.

    ``compacts`` overrides the computed compactness table of a finite order;
    it exists to build negative controls.  For :data:`CONAT` the finite
    elements ``0..probe`` and infinity are examined.
    """
    checked = 0
    if cpo is CONAT:
        for n in range(probe + 1):
            below = frozenset(Conat(m) for m in range(n + 1) if is_compact(CONAT, Conat(m), probe))
            checked += 1
            if not below or lub_conat(below) != Conat(n):
                return CheckReport("algebraic", False, checked, witness=Conat(n))
        # the compacts below infinity are all the naturals
        if is_compact(CONAT, INFINITY, probe) or lub_conat(ALL_NATURALS) != INFINITY:
            return CheckReport("algebraic", False, checked + 1, witness=INFINITY)
        return CheckReport("algebraic", True, checked + 1)

    table = frozenset(compacts) if compacts is not None else frozenset(
        x for x in cpo.elements if is_compact(cpo, x)
    )
    for s in sorted(cpo.elements, key=repr):
        checked += 1
        below = frozenset(c for c in table if cpo.le(c, s))
        if not is_directed(cpo, below):
            return CheckReport("algebraic", False, checked, witness=s,
                               detail="compacts below the element are not directed")
        if lub(cpo, below) != s:
            return CheckReport("algebraic", False, checked, witness=s,
                               detail="element is not the lub of the compacts below it")
    return CheckReport("algebraic", True, checked)


# -- monotone sequences and their continuous extensions ---------------------


@dataclass(frozen=True)
class MonotoneSeq:
    """Canonical form of a monotone map from the naturals into a flat domain.

    ``threshold is None`` is the everywhere-bottom map; otherwise the map is
    bottom below ``threshold`` and ``Defined(value)`` from it onwards.
    """

    threshold: Optional[int] = None
    value: Any = None

    def at(self, n: int) -> PartialValue:
        if self.threshold is None or n < self.threshold:
            return BOTTOM
        return Defined(self.value)

    @classmethod
    def from_table(cls, table: Sequence[PartialValue]) -> "MonotoneSeq":
        """Recover the canonical form of a finite monotone table.

        A table that is bottom everywhere is read as never defined, i.e. it is
        assumed to have stabilized within its length.
        """
        for a, b in zip(table, table[1:]):
            if not flat_leq(a, b):
                raise ValueError(f"table is not monotone: {a!r} then {b!r}")
        for k, v in enumerate(table):
            if v is not BOTTOM:
                return cls(k, v.value)
        return NEVER_DEFINED


NEVER_DEFINED = MonotoneSeq()


def threshold(k: int, value) -> MonotoneSeq:
    if k < 0:
        raise ValueError("threshold must be a natural number")
    return MonotoneSeq(k, value)


@dataclass(frozen=True)
class ContinuousExt:
    on_finite: MonotoneSeq
    at_infinity: PartialValue

    def at(self, x) -> PartialValue:
        if isinstance(x, int):
            return self.on_finite.at(x)
        return self.at_infinity if x.n is None else self.on_finite.at(x.n)


def lift_monotone(seq: MonotoneSeq) -> ContinuousExt:
    """Extend a monotone sequence continuously to conat.

    The value at infinity is the lub of the image, which for a flat codomain
    is the eventual value or bottom.
    """
    limit = BOTTOM if seq.threshold is None else Defined(seq.value)
    return ContinuousExt(seq, limit)


def _as_table(f, probe: Optional[int]):
    if isinstance(f, ContinuousExt):
        n = probe if probe is not None else (f.on_finite.threshold or 0) + 1
        return [f.on_finite.at(i) for i in range(n + 1)], f.at_infinity
    if isinstance(f, tuple) and len(f) == 2 and not callable(f[0]):
        table, inf = f
        table = list(table)
        if probe is not None:
            table = table[: probe + 1]
        return table, inf
    if callable(f):
        n = 16 if probe is None else probe
        return [f(Conat(i)) for i in range(n + 1)], f(INFINITY)
    raise TypeError(f"cannot read {f!r} as a function on conat")


def check_continuous(f, probe: Optional[int] = None) -> bool:
    """Decide continuity of a function from conat from a finite probe.

    ``f`` is a :class:`ContinuousExt`, a pair ``(table, value_at_infinity)``
    with ``table[n]`` the value at ``n``, or a callable on :class:`Conat`.
    The codomain is either flat (partial values) or conat.  The check is
    monotonicity on ``0..probe`` plus agreement of the value at infinity with
    the lub of the image, where the image is assumed to have stabilized by
    the end of the probe unless it is still moving there (then, for a conat
    codomain, its lub is infinity).
    """
    if probe is not None and probe < 1:
        raise ValueError("probe must be at least 1")
    table, inf = _as_table(f, probe)
    if not table:
        raise ValueError("empty table")
    if isinstance(inf, Conat):
        if not all(a <= b for a, b in zip(table, table[1:])):
            return False
        if not all(x <= inf for x in table):
            return False
        still_moving = len(table) > 1 and table[-1] != table[-2]
        limit = INFINITY if (still_moving or not table[-1].is_finite) else table[-1]
        return inf == limit
    if not all(flat_leq(a, b) for a, b in zip(table, table[1:])):
        return False
    return inf == flat_lub(table)


# -- embeddings ----------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """An injection of a finite PPO onto the compacts of an algebraic CPO.

    ``target`` is :data:`CONAT` or a finite order; for conat only the image of
    the (finite) source is compared with the compacts up to ``probe``.
    """

    source: FinitePPO
    target: Any
    inject: Callable
    probe: int = 16

    def uninject(self, t):
        for s in self.source.elements:
            if self.inject(s) == t:
                return s
        return self.source.bottom


def _target_le(target, x, y) -> bool:
    return x <= y if target is CONAT else target.le(x, y)


def check_embedding(emb: Embedding) -> CheckReport:
    src, tgt = emb.source, emb.target
    image = {s: emb.inject(s) for s in src.elements}
    tgt_bottom = Conat(0) if tgt is CONAT else tgt.bottom

    def fail(detail, witness=None):
        return CheckReport("embedding", False, len(image), witness=witness, detail=detail)

    if len(set(image.values())) != len(image):
        return fail("inject is not injective")
    if image[src.bottom] != tgt_bottom:
        return fail("inject does not preserve bottom", src.bottom)
    for x in src.elements:
        for y in src.elements:
            if src.le(x, y) and not _target_le(tgt, image[x], image[y]):
                return fail("inject is not monotone", (x, y))
    if tgt is CONAT:
        universe = [Conat(i) for i in range(emb.probe + 1)] + [INFINITY]
        compacts = {c for c in universe if is_compact(CONAT, c, emb.probe)}
        # a finite source can only cover an initial segment of the conat compacts
        horizon = max(c.n for c in image.values())
        compacts = {c for c in compacts if c.n <= horizon}
    else:
        compacts = {c for c in tgt.elements if is_compact(tgt, c)}
    if set(image.values()) != compacts:
        return fail("image differs from the compacts of the target")
    for s in src.elements:
        if emb.uninject(image[s]) != s:
            return fail("uninject is not a left inverse", s)
    return CheckReport("embedding", True, len(image))


def canonical_nat_embedding(probe: int = 16) -> Embedding:
    """The naturals ``0..probe`` included into conat by ``finite``."""
    return Embedding(chain_ppo(probe + 1), CONAT, Conat, probe)


def flat_identity_embedding(domain: FlatDomain) -> Embedding:
    ppo = domain.to_ppo()
    return Embedding(ppo, ppo, lambda x: x)
