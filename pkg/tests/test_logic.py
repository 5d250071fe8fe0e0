import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from andyn.errors import FormulaSyntaxError, FreeVariable, SizeBoundExceeded
from andyn.graphs import Digraph
from andyn.logic import (
    CHI_TEXT,
    INJECTIVE_TEXT,
    NONTRIVIAL_SCC_TEXT,
    STRONGLY_CONNECTED_TEXT,
    And,
    Edge,
    Eq,
    Exists,
    ExistsSet,
    Forall,
    ForallSet,
    Implies,
    In,
    Not,
    Or,
    chi,
    ef_equiv,
    ef_game,
    evaluate,
    formula_corpus,
    free_variables,
    has_set_quantifier,
    parse_formula,
    random_formula,
    rank,
    to_text,
)


def naive(f, g, env=None):
    """Direct recursive semantics over vertex names and Python sets."""
    env = env or {}
    V = g.vertices
    if isinstance(f, Edge):
        return (env[f.x], env[f.y]) in g.edges
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, In):
        return env[f.x] in env[f.s]
    if isinstance(f, Not):
        return not naive(f.body, g, env)
    if isinstance(f, And):
        return naive(f.left, g, env) and naive(f.right, g, env)
    if isinstance(f, Or):
        return naive(f.left, g, env) or naive(f.right, g, env)
    if isinstance(f, Implies):
        return (not naive(f.left, g, env)) or naive(f.right, g, env)
    subsets = [frozenset(c) for r in range(len(V) + 1) for c in itertools.combinations(V, r)]
    dom = V if isinstance(f, (Exists, Forall)) else subsets
    vals = (naive(f.body, g, {**env, f.var: d}) for d in dom)
    return any(vals) if isinstance(f, (Exists, ExistsSet)) else all(vals)


def cyc(n):
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


LOOP = Digraph.from_edges(1, [(0, 0)])
PATH2 = Digraph.from_edges(2, [(0, 1)])


def test_parse_examples():
    assert parse_formula("exists x. x -> x") == Exists("x", Edge("x", "x"))
    f = parse_formula(CHI_TEXT)
    assert isinstance(f, Forall) and isinstance(f.body, Exists)
    assert parse_formula("existsS X. exists x. x in X") == ExistsSet("X", Exists("x", In("x", "X")))


def test_precedence_and_associativity():
    f = parse_formula("forall x. !x -> x & x = x | x -> x => x = x => x -> x")
    body = f.body
    assert isinstance(body, Implies) and isinstance(body.right, Implies)
    assert isinstance(body.left, Or) and isinstance(body.left.left, And)
    assert isinstance(body.left.left.left, Not)


def test_quantifier_scope_is_maximal():
    f = parse_formula("exists x. x -> x & x = x")
    assert isinstance(f, Exists) and isinstance(f.body, And)


def test_text_round_trip_on_named_formulas():
    for text in (CHI_TEXT, INJECTIVE_TEXT, NONTRIVIAL_SCC_TEXT, STRONGLY_CONNECTED_TEXT,
                 "forall x. !!(x -> x)", "exists x. exists y. x != y"):
        f = parse_formula(text)
        assert parse_formula(to_text(f)) == f


@pytest.mark.parametrize("text", [
    "exists x. x ->", "exists x x -> x", "x -> x )", "exists x. x # x",
    "exists x. exists x. x -> x", "(exists x. x -> x", "",
])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert isinstance(info.value.position, int)


def test_rank_examples():
    assert rank(parse_formula("exists x. x -> x")) == 1
    assert rank(chi()) == 3
    assert rank(parse_formula(INJECTIVE_TEXT)) == 4
    with pytest.raises(FreeVariable):
        rank(Edge("x", "y"))
    assert free_variables(parse_formula("exists x. x -> x")) == set()
    assert has_set_quantifier(parse_formula(STRONGLY_CONNECTED_TEXT))
    assert not has_set_quantifier(chi())


def test_evaluate_examples():
    fp = parse_formula("exists x. x -> x")
    assert evaluate(fp, LOOP) and not evaluate(fp, cyc(2))
    scc = parse_formula(NONTRIVIAL_SCC_TEXT)
    assert evaluate(scc, cyc(2)) and not evaluate(scc, PATH2)
    assert naive(scc, cyc(2)) and not naive(scc, PATH2)
    with pytest.raises(FreeVariable):
        evaluate(Edge("x", "x"), LOOP)


def test_chi_examples():
    assert evaluate(chi(), cyc(2))
    assert not evaluate(chi(), Digraph.from_edges(2, [(0, 0), (0, 1), (1, 1)]))
    assert not evaluate(chi(), PATH2)


def test_strong_connectivity_formula():
    sc = parse_formula(STRONGLY_CONNECTED_TEXT)
    assert evaluate(sc, cyc(4)) and not evaluate(sc, PATH2)
    assert not evaluate(sc, Digraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)]))


@st.composite
def small_digraphs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    return Digraph.from_edges(n, edges)


@settings(max_examples=200, deadline=None)
@given(small_digraphs(), st.integers(0, 10**6))
def test_compiled_evaluator_matches_naive_semantics(g, seed):
    f = random_formula(random.Random(seed), 3)
    assert evaluate(f, g) == naive(f, g)


@settings(max_examples=100, deadline=None)
@given(small_digraphs(), st.integers(0, 10**6))
def test_chi_is_out_degree_one(g, seed):
    assert evaluate(chi(), g) == all(len(g.successors[v]) == 1 for v in g.vertices)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_random_formulas_are_closed_and_round_trip(seed):
    f = random_formula(random.Random(seed), 3)
    assert free_variables(f) == set() and rank(f) <= 3
    assert parse_formula(to_text(f)) == f


def test_ef_examples():
    assert ef_equiv(cyc(3), cyc(3), 2)
    assert not ef_equiv(cyc(2), cyc(3), 2)
    relabeled = Digraph(("b", "c", "a"), frozenset({("b", "c"), ("c", "a"), ("a", "b")}))
    assert ef_equiv(cyc(3), relabeled, 3)
    with pytest.raises(SizeBoundExceeded):
        ef_equiv(cyc(7), cyc(7), 1)
    with pytest.raises(SizeBoundExceeded):
        ef_equiv(cyc(2), cyc(2), 4)


def test_ef_equiv_agrees_with_game_search():
    rng = random.Random(1)
    graphs = [Digraph.from_edges(n, [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.4])
              for n in (1, 2, 2, 3, 3) for _ in range(4)]
    graphs += [cyc(2), cyc(3), LOOP, PATH2]
    for g, h in itertools.combinations(graphs, 2):
        for m in (1, 2):
            assert ef_equiv(g, h, m) == ef_game(g, h, m), (g, h, m)


def test_equivalent_graphs_agree_on_corpus():
    corpus = formula_corpus(8, 1, seed=4)
    g, h = cyc(3), cyc(4)
    assert ef_equiv(g, h, 1)
    assert all(evaluate(f, g) == evaluate(f, h) for f in corpus)


def test_corpus_is_distinct_and_bounded():
    corpus = formula_corpus(50, 2, seed=9)
    assert len({to_text(f) for f in corpus}) == 50
    assert all(rank(f) <= 2 for f in corpus)
    assert ForallSet  # exported constructor


def test_generator_mixes_connectives():
    corpus = formula_corpus(120, 2, seed=0)
    assert any(isinstance(f, (And, Or, Implies, Not)) for f in corpus)
    with pytest.raises(ValueError):
        random_formula(random.Random(0), 0)
