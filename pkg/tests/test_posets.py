"""Poset construction, chains, extensions, retractions, isomorphism search."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poscat import (
    CycleError,
    MonotoneMap,
    NotSplitMonoError,
    PosetError,
    chains,
    count_monotone_maps,
    find_isomorphism,
    intersection_of_extensions,
    isomorphisms,
    linear_extensions,
    make_poset,
    monotone_maps,
    ordinal_poset,
    product_poset,
    split_retraction,
)
from poscat.corpus import all_posets

from helpers import singleton, three_chain, two_antichain, two_chain, v_poset


def test_make_poset_closure():
    p = make_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")
    assert not p.leq("c", "a")
    assert p.leq("a", "a")


def test_make_poset_antichain():
    p = make_poset(["a", "b"], [])
    assert not p.leq("a", "b") and not p.leq("b", "a")


def test_make_poset_cycle_error_reports_cycle():
    with pytest.raises(CycleError) as err:
        make_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(err.value.cycle) == {"a", "b"}
    with pytest.raises(CycleError):
        make_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_make_poset_rejects_duplicates_and_unknowns():
    with pytest.raises(PosetError):
        make_poset(["a", "a"], [])
    with pytest.raises(PosetError):
        make_poset(["a"], [("a", "z")])


def test_chains_two_chain():
    assert chains(two_chain(), 1) == [("0", "0"), ("0", "1"), ("1", "1")]


def test_chains_singleton():
    for n in range(4):
        assert len(chains(singleton(), n)) == 1


def test_chains_antichain():
    assert chains(two_antichain(), 1) == [("a", "a"), ("b", "b")]


def brute_chains(poset, n, strict=False):
    out = []
    for t in itertools.product(poset.elements, repeat=n + 1):
        ok = all(poset.leq(a, b) for a, b in zip(t, t[1:]))
        if strict:
            ok = ok and all(a != b for a, b in zip(t, t[1:]))
        if ok:
            out.append(t)
    return sorted(out)


def test_chains_against_brute_force():
    for poset in all_posets(4):
        for n in range(4):
            assert sorted(chains(poset, n)) == brute_chains(poset, n)
            assert sorted(chains(poset, n, strict=True)) == brute_chains(poset, n, strict=True)


def test_chain_count_equals_monotone_map_count():
    # chains of length n are the monotone maps out of the (n+1)-chain
    for poset in all_posets(4):
        for n in range(3):
            assert len(chains(poset, n)) == count_monotone_maps(ordinal_poset(n), poset)


def test_linear_extensions_counts():
    assert len(linear_extensions(two_antichain())) == 2
    assert len(linear_extensions(three_chain())) == 1
    exts = linear_extensions(v_poset())
    assert [e.sorted_by_order() for e in exts] == [("a", "b", "c"), ("b", "a", "c")]


def test_linear_extensions_are_extensions():
    p = v_poset()
    for ext in linear_extensions(p):
        assert ext.is_total
        for x in p.elements:
            for y in p.elements:
                if p.leq(x, y):
                    assert ext.leq(x, y)


def test_intersection_of_extensions_small():
    for p in (two_antichain(), three_chain(), v_poset()):
        assert intersection_of_extensions(p).up_rows == p.up_rows


def test_split_retraction_paper_example():
    src = make_poset(["x0", "x1"], [("x0", "x1")])
    tgt = ordinal_poset(3)
    f = MonotoneMap(src, tgt, ("1", "3"))
    g = split_retraction(f)
    assert tuple(g(t) for t in ("0", "1", "2", "3")) == ("x0", "x0", "x0", "x1")


def test_split_retraction_identity_and_face():
    p = ordinal_poset(2)
    assert split_retraction(MonotoneMap.identity(p)).values == p.elements
    f = MonotoneMap(ordinal_poset(1), ordinal_poset(2), ("0", "2"))
    g = split_retraction(f)
    assert tuple(g(t) for t in ("0", "1", "2")) == ("0", "0", "1")


def test_split_retraction_is_left_inverse():
    # all injective monotone maps between small chains
    for n in range(3):
        for m in range(n, 4):
            src, tgt = ordinal_poset(n), ordinal_poset(m)
            for f in monotone_maps(src, tgt):
                if not f.is_injective:
                    continue
                g = split_retraction(f)
                assert all(g(f(x)) == x for x in src.elements)


def test_split_retraction_preconditions():
    with pytest.raises(NotSplitMonoError):
        split_retraction(MonotoneMap(ordinal_poset(1), ordinal_poset(0), ("0", "0")))
    v = v_poset()
    with pytest.raises(NotSplitMonoError):
        split_retraction(MonotoneMap.identity(v))


def test_find_isomorphism_examples():
    p = two_chain()
    q = make_poset(["lo", "hi"], [("lo", "hi")])
    iso = find_isomorphism(p, q)
    assert iso is not None and iso("0") == "lo" and iso("1") == "hi"
    assert find_isomorphism(p, two_antichain()) is None
    relabeled = make_poset(["x", "y", "z"], [("x", "z"), ("y", "z")])
    assert len(isomorphisms(v_poset(), relabeled)) == 2
    assert find_isomorphism(v_poset(), relabeled) is not None


def test_find_isomorphism_symmetry():
    posets = all_posets(4)
    for p in posets:
        for q in posets:
            assert (find_isomorphism(p, q) is None) == (find_isomorphism(q, p) is None)


def test_isomorphism_is_order_isomorphism():
    iso = find_isomorphism(v_poset(), make_poset(["x", "y", "z"], [("x", "z"), ("y", "z")]))
    assert iso.is_order_isomorphism()
    assert iso.inverse().is_order_isomorphism()


def test_product_poset():
    p = product_poset(two_chain(), two_antichain())
    assert p.n == 4
    assert p.leq("0,a", "1,a") and not p.leq("0,a", "1,b")


def test_monotone_map_validation():
    with pytest.raises(PosetError):
        MonotoneMap(two_chain(), two_chain(), ("1", "0"))


def test_height():
    assert three_chain().height == 2
    assert two_antichain().height == 0
    assert v_poset().height == 1


@st.composite
def small_posets(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                pairs.append((str(i), str(j)))
    return make_poset([str(i) for i in range(n)], pairs)


@settings(max_examples=60, deadline=None)
@given(small_posets())
def test_intersection_property_randomized(p):
    assert intersection_of_extensions(p).up_rows == p.up_rows


@settings(max_examples=40, deadline=None)
@given(small_posets(), st.integers(min_value=0, max_value=2))
def test_chains_brute_force_randomized(p, n):
    assert sorted(chains(p, n)) == brute_chains(p, n)
