import random
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))
from oracles import random_ported  # noqa: E402

from andyn.errors import InvalidPorts, PortArityMismatch, UnknownSymbol
from andyn.graphs import (
    Digraph,
    GadgetFamily,
    PortedGraph,
    brute_force_isomorphic,
    delta,
    disjoint_union,
    glue,
    graph_from_dict,
    graph_to_dict,
    isomorphic,
    out_degree_exactly,
)


def edge(a, b):
    return PortedGraph(Digraph((a, b), frozenset({(a, b)})), (a,), (b,))


def cycle(n, tag="c"):
    return Digraph(tuple(f"{tag}{i}" for i in range(n)),
                   frozenset((f"{tag}{i}", f"{tag}{(i + 1) % n}") for i in range(n)))


def test_glue_two_edges_gives_primed_path():
    g = glue(edge("v1", "v2"), edge("u1", "u2"))
    assert g.graph.vertices == ("v1", "v2", "u2'")
    assert g.graph.edges == {("v1", "v2"), ("v2", "u2'")}
    assert (g.primary_ports, g.secondary_ports) == (("v1",), ("u2'",))


def test_glue_renames_on_collision():
    g = glue(edge("a", "b"), edge("a", "b"))
    assert set(g.graph.vertices) == {"a", "b", "b'"}
    g3 = glue(g, edge("a", "b"))
    assert len(g3) == 4 and g3.secondary_ports == ("b''",)


def test_glue_arity_mismatch():
    k2 = PortedGraph(Digraph(("x", "y")), ("x", "y"), ("y", "x"))
    with pytest.raises(PortArityMismatch):
        glue(edge("a", "b"), k2)


def test_ports_validated():
    with pytest.raises(InvalidPorts):
        PortedGraph(Digraph(("a", "b")), ("a",), ("a", "b"))
    with pytest.raises(InvalidPorts):
        PortedGraph(Digraph(("a",)), ("z",), ("a",))
    with pytest.raises(InvalidPorts):
        PortedGraph(Digraph(("a", "b")), ("a", "a"), ("a", "b"))
    with pytest.raises(ValueError):
        Digraph(("a",), frozenset({("a", "b")}))


def test_delta_examples():
    fam = GadgetFamily(1, {"1": edge("p", "q")})
    assert delta(fam, "1") == fam["1"]
    path = delta(fam, "111")
    assert isomorphic(path.graph, Digraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    with pytest.raises(UnknownSymbol):
        delta(fam, "12")
    with pytest.raises(ValueError):
        delta(fam, "")


def test_delta_mixed_word_size_law():
    rng = random.Random(3)
    fam = GadgetFamily(2, {str(i): random_ported(rng, 2, i + 1) for i in (1, 2, 3)})
    assert len(delta(fam, "213")) == len(fam["2"]) + len(fam["1"]) + len(fam["3"]) - 4


def test_out_degree_examples():
    assert out_degree_exactly(cycle(2), 1)
    assert not out_degree_exactly(Digraph(("a", "b", "c"), frozenset({("a", "b"), ("a", "c")})), 1)
    assert out_degree_exactly(Digraph(("a", "b", "c")), 0)


def test_isomorphism_examples():
    g = cycle(3)
    assert isomorphic(g, g)
    loops = Digraph(("a", "b"), frozenset({("a", "a"), ("b", "b")}))
    assert not isomorphic(cycle(2), loops)
    assert isomorphic(cycle(3), cycle(3, "z"))
    assert not isomorphic(cycle(3), cycle(4))


def test_disjoint_union():
    u = disjoint_union(cycle(2), cycle(2))
    assert len(u) == 4 and len(u.edges) == 4
    assert isomorphic(u, Digraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)]))


def test_dict_round_trip():
    g = glue(edge("a", "b"), edge("c", "d"))
    assert graph_from_dict(graph_to_dict(g)) == g


@st.composite
def small_digraphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    return Digraph.from_edges(n, edges)


@settings(max_examples=150, deadline=None)
@given(small_digraphs(), st.randoms(use_true_random=False))
def test_isomorphic_agrees_with_brute_force(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    assert isomorphic(g, h) and brute_force_isomorphic(g, h)
    # perturb one edge: both oracles must agree either way
    u, v = rnd.choice(g.vertices), rnd.choice(g.vertices)
    h2 = Digraph(h.vertices, h.edges ^ {(u, v)})
    assert isomorphic(g, h2) == brute_force_isomorphic(g, h2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_size_law(k, e1, e2, seed):
    rng = random.Random(seed)
    g, h = random_ported(rng, k, e1), random_ported(rng, k, e2)
    glued = glue(g, h)
    assert len(glued) == len(g) + len(h) - k
    assert len(glued.graph.edges) <= len(g.graph.edges) + len(h.graph.edges)
    assert glued.primary_ports == g.primary_ports


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_glue_associative_up_to_isomorphism(seed):
    rng = random.Random(seed)
    k = rng.randint(0, 2)
    a, b, c = (random_ported(rng, k, rng.randint(0, 2)) for _ in range(3))
    assert isomorphic(glue(glue(a, b), c).graph, glue(a, glue(b, c)).graph)
