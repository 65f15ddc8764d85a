"""Exact maximum independent set by branch and bound."""

from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddplanar.generators import family57, gc_fullerene, platonic, prism
from oddplanar.independence import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    brute_force_independence,
    map_independence_number,
    maximum_independent_set,
    node_budget,
)
from oracles import independence_number, random_cubic_map


def _adjacency(g: nx.Graph) -> list[list[int]]:
    return [sorted(g[v]) for v in range(g.number_of_nodes())]


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 16), p=st.floats(0.05, 0.8), seed=st.integers(0, 10**6))
def test_random_graphs_against_clique_oracle(n, p, seed):
    g = nx.gnp_random_graph(n, p, seed=seed)
    adj = _adjacency(g)
    res = maximum_independent_set(adj)
    comp_clique, _ = nx.max_weight_clique(nx.complement(g), weight=None)
    assert res.size == len(comp_clique) == brute_force_independence(adj)
    assert len(res.vertices) == res.size
    assert not any(g.has_edge(u, v) for u in res.vertices for v in res.vertices)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(0, 10))
def test_cubic_maps_with_face_bound(seed, steps):
    rng = random.Random(seed)
    m = random_cubic_map(rng, steps, prism(rng.randint(3, 7)))
    res = map_independence_number(m)
    assert res.size == independence_number(m)


@pytest.mark.parametrize("name, alpha", [("tetrahedron", 1), ("icosahedron", 3), ("dodecahedron", 8)])
def test_platonic(name, alpha):
    assert map_independence_number(platonic(name)).size == alpha


def test_c60():
    res = map_independence_number(gc_fullerene(1, 1))
    assert res.size == 24


def test_family57_k1():
    m = family57(1).graph
    assert map_independence_number(m).size == 24


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        map_independence_number(platonic("dodecahedron"), budget=1)


def test_too_large_for_exact():
    with pytest.raises(BudgetExceeded, match="120"):
        map_independence_number(gc_fullerene(2, 1))


def test_env_budget(monkeypatch):
    monkeypatch.delenv("ODDPLANAR_BB_BUDGET", raising=False)
    assert node_budget() == DEFAULT_BUDGET
    monkeypatch.setenv("ODDPLANAR_BB_BUDGET", "1")
    assert node_budget() == 1
    with pytest.raises(BudgetExceeded):
        map_independence_number(gc_fullerene(1, 1))


@pytest.mark.parametrize("raw", ["lots", "0", "-3"])
def test_invalid_env_budget(monkeypatch, raw):
    monkeypatch.setenv("ODDPLANAR_BB_BUDGET", raw)
    with pytest.raises(ValueError):
        node_budget()


def test_initial_incumbent():
    m = platonic("dodecahedron")
    first = map_independence_number(m)
    again = map_independence_number(m, initial=first.vertices)
    assert again.size == 8 and again.nodes <= first.nodes


def test_initial_must_be_independent():
    m = platonic("dodecahedron")
    with pytest.raises(ValueError):
        map_independence_number(m, initial=m.edges[0])


def test_empty_graph():
    assert maximum_independent_set([]).size == 0
