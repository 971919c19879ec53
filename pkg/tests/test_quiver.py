from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clustertilt.quiver import (QuiverError, QuiverGraph, exchange_matrix, quiver_isomorphic,
                                quiver_mutation, sink_reflection)


def q(vs, arrows):
    return QuiverGraph.build(vs, arrows)


def test_mutation_linear_a3():  # [DERIVED: FZ rule by hand]
    m = quiver_mutation(q("123", [("1", "2"), ("2", "3")]), "2")
    assert m.counts() == Counter({("2", "1"): 1, ("3", "2"): 1, ("1", "3"): 1})


def test_mutation_cancels_two_cycles():  # [DERIVED: by hand]
    cyc = q("123", [("1", "2"), ("2", "3"), ("3", "1")])
    m = quiver_mutation(cyc, "2")
    assert m.counts() == Counter({("2", "1"): 1, ("3", "2"): 1})


def test_sink_reflection():
    r = sink_reflection(q("12", [("1", "2")]), "2")
    assert r.counts() == Counter({("2", "1"): 1})
    with pytest.raises(QuiverError):
        sink_reflection(q("12", [("1", "2")]), "1")


def test_isomorphism():
    a = q("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    b = q("xyz", [("y", "x"), ("x", "z"), ("z", "y")])
    phi = quiver_isomorphic(a, b)
    assert phi is not None
    for (s, t), m in a.arrows:
        assert b.mult(phi[s], phi[t]) == m
    assert quiver_isomorphic(a, q("xyz", [("x", "y"), ("y", "z")])) is None


arrow_lists = st.lists(st.tuples(st.sampled_from("abcde"), st.sampled_from("abcde")).filter(
    lambda a: a[0] != a[1]), max_size=8)


def _no_two_cycles(arrows):
    c = Counter(arrows)
    return all(not c[(t, s)] for s, t in c)


@settings(max_examples=100, deadline=None)
@given(arrow_lists.filter(_no_two_cycles), st.sampled_from("abcde"))
def test_mutation_involutive(arrows, k):
    g = q("abcde", arrows)
    assert quiver_mutation(quiver_mutation(g, k), k) == g


@settings(max_examples=100, deadline=None)
@given(arrow_lists.filter(_no_two_cycles), st.permutations("vwxyz"))
def test_isomorphic_to_relabelling(arrows, perm):
    g = q("abcde", arrows)
    h = g.relabel(dict(zip("abcde", perm)))
    assert quiver_isomorphic(g, h) is not None
    b = exchange_matrix(g)
    assert all(b[(i, j)] == -b[(j, i)] for i in "abcde" for j in "abcde")


def test_text_roundtrip():
    g = q("abc", [("a", "b"), ("a", "b"), ("c", "b")])
    assert QuiverGraph.from_text(g.to_text()) == g
    assert g.n_arrows == 3 and g.sinks() == ["b"]
