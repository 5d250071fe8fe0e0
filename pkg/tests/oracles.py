"""Independent reference implementations and generators used by the tests."""
from __future__ import annotations

import itertools
import random

from andyn.graphs import Digraph, GadgetFamily, PortedGraph
from andyn.treedec import DecompFamily, TreeDecomp


def functional_canonical(image) -> tuple:
    """Exact isomorphism invariant of a functional digraph.

    Rooted in-trees hanging off cycle vertices get nested-tuple codes; every
    cycle is read at its lexicographically least rotation.
    """
    n = len(image)
    preds = [[] for _ in range(n)]
    for v, w in enumerate(image):
        preds[w].append(v)
    on_cycle = [False] * n
    for start in range(n):
        seen, v = set(), start
        while v not in seen:
            seen.add(v)
            v = image[v]
        u = v
        while True:
            on_cycle[u] = True
            u = image[u]
            if u == v:
                break

    def code(v):
        return tuple(sorted(code(p) for p in preds[v] if not on_cycle[p]))

    cycles, done = [], set()
    for v in range(n):
        if on_cycle[v] and v not in done:
            cyc, u = [], v
            while u not in done:
                done.add(u)
                cyc.append(code(u))
                u = image[u]
            cycles.append(min(tuple(cyc[i:] + cyc[:i]) for i in range(len(cyc))))
    return tuple(sorted(cycles))


def functional_classes(n: int) -> list[tuple[int, ...]]:
    """One representative image per isomorphism class of functions on n points."""
    reps = {}
    for image in itertools.product(range(n), repeat=n):
        reps.setdefault(functional_canonical(image), image)
    return list(reps.values())


def digraph_classes(n: int) -> list[Digraph]:
    """One representative per isomorphism class of digraphs (loops allowed) on n vertices."""
    pairs = [(u, v) for u in range(n) for v in range(n)]
    perms = list(itertools.permutations(range(n)))
    seen, reps = set(), []
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        for p in perms:
            seen.add(sum(1 << (p[u] * n + p[v]) for u, v in edges))
        reps.append(Digraph.from_edges(n, edges))
    return reps


def random_ported(rng: random.Random, k: int, extra: int, p_edge: float = 0.35, tag: str = "") -> PortedGraph:
    verts = [f"{tag}{i}" for i in range(k + extra)]
    edges = {(u, v) for u in verts for v in verts if rng.random() < p_edge}
    p1 = tuple(rng.sample(verts, k))
    p2 = tuple(rng.sample(verts, k))
    return PortedGraph(Digraph(tuple(verts), frozenset(edges)), p1, p2)


def random_paired_member(rng: random.Random, bag: int, max_nodes: int = 5, tag: str = ""):
    """A random graph with a decomposition whose root and leaf bags are its ports.

    Bags evolve from parent to child by replacing positions with fresh
    vertices, so occurrence sets stay connected; edges are drawn inside bags.
    """
    counter = itertools.count()

    def fresh():
        return f"{tag}{next(counter)}"

    nodes = [f"t{i}" for i in range(rng.randint(1, max_nodes))]
    parent, bags = {}, {nodes[0]: tuple(fresh() for _ in range(bag))}
    for i, node in enumerate(nodes[1:], start=1):
        par = nodes[rng.randrange(i)]
        parent[node] = par
        b = list(bags[par])
        for pos in range(bag):
            if rng.random() < 0.4:
                b[pos] = fresh()
        if rng.random() < 0.3:
            rng.shuffle(b)
        bags[node] = tuple(b)
    has_child = set(parent.values())
    leaf = rng.choice([n for n in nodes if n not in has_child])
    verts = sorted({v for b in bags.values() for v in b})
    edges = set()
    for b in bags.values():
        for u in b:
            for v in b:
                if rng.random() < 0.3:
                    edges.add((u, v))
    t = TreeDecomp(tuple(nodes), parent, bags, nodes[0], leaf)
    g = PortedGraph(Digraph(tuple(verts), frozenset(edges)), bags[nodes[0]], bags[leaf])
    return g, t


def random_paired_family(rng: random.Random, members: int = 3):
    bag = rng.randint(1, 3)
    gs, ts = {}, {}
    for i in range(1, members + 1):
        g, t = random_paired_member(rng, bag, tag="")
        gs[str(i)], ts[str(i)] = g, t
    return GadgetFamily(bag, gs), DecompFamily(bag - 1, ts)


def dnf_from_table(table: int, s: int) -> str:
    """Propositional formula text whose truth word has bit i equal to bit i of ``table``."""
    terms = []
    for i in range(1 << s):
        if (table >> i) & 1:
            lits = [f"x{j + 1}" if (i >> j) & 1 else f"!x{j + 1}" for j in range(s)]
            terms.append("(" + " & ".join(lits) + ")")
    if not terms:
        return " & ".join(f"x{j + 1} & !x{j + 1}" for j in range(max(s, 1)))
    return " | ".join(terms)
