import itertools

import pytest
from hypothesis import given, strategies as st

from lfpwhile import order as od
from lfpwhile.order import BOTTOM, CONAT, INFINITY, Defined, finite


def powerset_nonempty(xs):
    xs = list(xs)
    for r in range(1, len(xs) + 1):
        for c in itertools.combinations(xs, r):
            yield frozenset(c)


def brute_directed(ppo, subset):
    # every pair has an upper bound inside the subset
    return bool(subset) and all(
        any(ppo.le(x, z) and ppo.le(y, z) for z in subset) for x in subset for y in subset
    )


# -- partial values ---------------------------------------------------------------


def test_flat_order_basics():
    a = Defined("a")
    assert od.flat_leq(BOTTOM, a)
    assert od.flat_leq(a, a)
    assert not od.flat_leq(a, BOTTOM)
    assert not od.flat_leq(a, Defined("b"))
    assert od.flat_lub([BOTTOM, a, BOTTOM]) == a
    assert od.flat_lub([BOTTOM]) is BOTTOM


def test_flat_lub_rejects_incompatible():
    with pytest.raises(ValueError):
        od.flat_lub([Defined(1), Defined(2)])


# -- directed sets ----------------------------------------------------------------------


def test_is_directed_examples():
    dom = od.FlatDomain(["a", "b"])
    assert od.is_directed(dom, {BOTTOM, "a"})
    assert not od.is_directed(dom, {"a", "b"})
    assert not od.is_directed(dom, set())


def test_is_directed_rejects_foreign_element():
    with pytest.raises(ValueError):
        od.is_directed(od.FlatDomain(["a"]), {"z"})


def test_enumerate_directed_examples():
    assert od.enumerate_directed(od.FlatDomain(["a"])) == {
        frozenset([BOTTOM]), frozenset(["a"]), frozenset([BOTTOM, "a"])
    }
    assert od.enumerate_directed(od.FlatDomain([])) == {frozenset([BOTTOM])}
    chain = od.chain_ppo(3)
    assert od.enumerate_directed(chain) == set(powerset_nonempty(chain.elements))
    assert len(od.enumerate_directed(chain)) == 7


def test_enumerate_directed_refuses_large_carrier():
    with pytest.raises(ValueError):
        od.enumerate_directed(od.FlatDomain(range(20)), bound=12)


@pytest.mark.parametrize("n", range(5))
def test_flat_directed_sets_are_singletons_and_bottom_pairs(n):
    dom = od.FlatDomain(range(n))
    expected = {frozenset([x]) for x in dom.elements} | {frozenset([BOTTOM, a]) for a in range(n)}
    assert od.enumerate_directed(dom) == expected


def test_enumerate_directed_matches_brute_force_on_diamond():
    from lfpwhile.suites import diamond
    d = diamond()
    expected = {s for s in powerset_nonempty(d.elements) if brute_directed(d, s)}
    assert od.enumerate_directed(d) == expected


# -- lubs ----------------------------------------------------------------------------


def test_lub_flat_examples():
    dom = od.FlatDomain(["a", "b"])
    assert od.lub_flat(dom, {BOTTOM}) is BOTTOM
    assert od.lub_flat(dom, {BOTTOM, "a"}) == "a"
    assert od.lub_flat(dom, {"a"}) == "a"
    with pytest.raises(ValueError):
        od.lub_flat(dom, {"a", "b"})


def test_lub_conat_examples():
    assert od.lub_conat({finite(1), finite(5)}) == finite(5)
    assert od.lub_conat(od.ALL_NATURALS) == INFINITY
    assert od.lub_conat({INFINITY}) == INFINITY
    with pytest.raises(ValueError):
        od.lub_conat(set())


def test_conat_order():
    assert finite(3) <= finite(4) <= INFINITY
    assert not INFINITY <= finite(10**9)
    with pytest.raises(ValueError):
        finite(-1)


# -- compactness, algebraicity ---------------------------------------------------------------


def test_compact_examples():
    assert od.is_compact(CONAT, finite(3))
    assert not od.is_compact(CONAT, INFINITY)
    dom = od.FlatDomain(["a", "b"])
    assert all(od.is_compact(dom, x) for x in dom.elements)


def test_conat_compacts_are_the_finites():
    assert all(od.is_compact(CONAT, finite(n), 16) for n in range(17))


def test_algebraic_examples():
    assert od.check_algebraic(od.FlatDomain(["a", "b"]))
    assert od.check_algebraic(CONAT, probe=10)


def test_doctored_diamond_is_not_algebraic():
    from lfpwhile.suites import diamond, doctored_diamond_report
    assert od.check_algebraic(diamond())
    r = doctored_diamond_report()
    assert not r
    assert r.witness == "top"


# -- monotone sequences and their lifts ------------------------------------------------------------


def test_succ_conat():
    assert od.succ_conat(finite(3)) == finite(4)
    assert od.succ_conat(INFINITY) == INFINITY
    assert od.succ_conat(finite(0)) == finite(1)
    assert od.check_continuous(od.succ_conat, 16)


def test_lift_examples():
    assert od.lift_monotone(od.NEVER_DEFINED).at(INFINITY) is BOTTOM
    f = od.lift_monotone(od.threshold(2, "b"))
    assert f.at(finite(1)) is BOTTOM
    assert f.at(finite(5)) == Defined("b")
    assert f.at(INFINITY) == Defined("b")
    g = od.lift_monotone(od.threshold(0, "b"))
    assert all(g.at(finite(n)) == Defined("b") for n in range(5))
    assert g.at(INFINITY) == Defined("b")


def test_check_continuous_examples():
    assert od.check_continuous(od.lift_monotone(od.threshold(2, "b")), 5)
    assert not od.check_continuous(([BOTTOM] * 6, Defined("b")))
    assert not od.check_continuous(([BOTTOM, Defined("b"), BOTTOM], Defined("b")))


def monotone_tables(B, N):
    for t in itertools.product([BOTTOM] + [Defined(b) for b in B], repeat=N + 1):
        if all(od.flat_leq(x, y) for x, y in zip(t, t[1:])):
            yield t


def test_canonical_form_exhaustive():
    from lfpwhile.suites import check_canonical_form
    r = check_canonical_form(3, 6)
    assert r, r.witness
    # sanity on the count: for |B|=1, N=2 the monotone tables are the 4 threshold shapes
    assert len(list(monotone_tables([0], 2))) == 4


def test_lifting_uniqueness_exhaustive():
    from lfpwhile.suites import check_lifting_uniqueness
    assert check_lifting_uniqueness(3, 6)


@given(st.integers(0, 20), st.integers(0, 3), st.integers(0, 30))
def test_threshold_sequence_is_monotone(k, b, n):
    s = od.threshold(k, b)
    assert od.flat_leq(s.at(n), s.at(n + 1))
    assert s.at(n) == (Defined(b) if n >= k else BOTTOM)


@given(st.lists(st.sampled_from([BOTTOM, Defined(0), Defined(1)]), min_size=1, max_size=8))
def test_from_table_reproduces_monotone_tables(table):
    monotone = all(od.flat_leq(x, y) for x, y in zip(table, table[1:]))
    if not monotone:
        with pytest.raises(ValueError):
            od.MonotoneSeq.from_table(table)
        return
    s = od.MonotoneSeq.from_table(table)
    assert [s.at(i) for i in range(len(table))] == list(table)


# -- embeddings --------------------------------------------------------------------------------


def test_embeddings():
    assert od.check_embedding(od.canonical_nat_embedding(16))
    assert od.check_embedding(od.flat_identity_embedding(od.FlatDomain(["a", "b", "c"])))


def test_non_injective_map_is_not_an_embedding():
    dom = od.FlatDomain(["a", "b"])
    bad = od.Embedding(dom, dom, lambda x: BOTTOM if x is BOTTOM else "a")
    assert not od.check_embedding(bad)
