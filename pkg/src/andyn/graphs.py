"""Finite digraphs, biboundaried k-graphs, gluing and word gluing.

Vertex identifiers are opaque strings.  Gluing keeps the left operand's
identifiers and renames every non-port vertex of the right operand by
appending primes, so the two operands never collide.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    InvalidPorts,
    PortArityMismatch,
    SizeBoundExceeded,
    UnknownSymbol,
)

ISOMORPHISM_BOUND = 4096


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        edges = frozenset((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        vset = set(verts)
        if len(vset) != len(verts):
            raise ValueError("duplicate vertex identifiers")
        for u, v in edges:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex list")

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}

    def out_neighbors(self, v: str) -> frozenset[str]:
        return self.successors[v]

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhoods as bitmasks over vertex positions."""
        idx = self.index
        masks = [0] * len(self.vertices)
        for u, v in self.edges:
            masks[idx[u]] |= 1 << idx[v]
        return tuple(masks)

    def relabel(self, mapping: Mapping[str, str]) -> "Digraph":
        return Digraph(
            tuple(mapping[v] for v in self.vertices),
            frozenset((mapping[u], mapping[v]) for u, v in self.edges),
        )

    def induced(self, keep: Iterable[str]) -> "Digraph":
        keep = set(keep)
        return Digraph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    @classmethod
    def from_function(cls, image: Sequence[int]) -> "Digraph":
        """Functional digraph i -> image[i] on vertices '0'..'n-1'."""
        n = len(image)
        return cls(tuple(str(i) for i in range(n)), frozenset((str(i), str(image[i])) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(tuple(str(i) for i in range(n)), frozenset((str(u), str(v)) for u, v in edges))


@dataclass(frozen=True)
class PortedGraph:
    """A k-graph: a digraph with primary and secondary port sequences."""

    graph: Digraph
    primary_ports: tuple[str, ...] = ()
    secondary_ports: tuple[str, ...] = ()

    def __post_init__(self):
        p1 = tuple(str(p) for p in self.primary_ports)
        p2 = tuple(str(p) for p in self.secondary_ports)
        object.__setattr__(self, "primary_ports", p1)
        object.__setattr__(self, "secondary_ports", p2)
        if len(p1) != len(p2):
            raise InvalidPorts(f"port lists differ in length ({len(p1)} vs {len(p2)})")
        vset = set(self.graph.vertices)
        for name, ports in (("primary", p1), ("secondary", p2)):
            if len(set(ports)) != len(ports):
                raise InvalidPorts(f"{name} ports are not distinct: {ports}")
            missing = [p for p in ports if p not in vset]
            if missing:
                raise InvalidPorts(f"{name} ports {missing} are not vertices")

    @property
    def k(self) -> int:
        return len(self.primary_ports)

    def __len__(self):
        return len(self.graph)

    @classmethod
    def boundaried(cls, graph: Digraph, ports: Sequence[str]) -> "PortedGraph":
        """A boundaried graph viewed as biboundaried with both port lists equal."""
        return cls(graph, tuple(ports), tuple(ports))

    def relabel(self, mapping: Mapping[str, str]) -> "PortedGraph":
        return PortedGraph(
            self.graph.relabel(mapping),
            tuple(mapping[p] for p in self.primary_ports),
            tuple(mapping[p] for p in self.secondary_ports),
        )


@dataclass(frozen=True)
class GadgetFamily:
    k: int
    members: Mapping[str, PortedGraph] = field(default_factory=dict)

    def __post_init__(self):
        members = {str(key): g for key, g in dict(self.members).items()}
        object.__setattr__(self, "members", members)
        for key, g in members.items():
            if g.k != self.k:
                raise PortArityMismatch(f"member {key!r} has arity {g.k}, family has {self.k}")

    def __getitem__(self, symbol) -> PortedGraph:
        try:
            return self.members[str(symbol)]
        except KeyError:
            raise UnknownSymbol(f"no family member indexed by {symbol!r}") from None


def fresh_suffix(names: Iterable[str], taken: set[str]) -> str:
    """Shortest run of primes that makes every name in ``names`` avoid ``taken``."""
    names = list(names)
    suffix = "'"
    while any(n + suffix in taken for n in names):
        suffix += "'"
    return suffix


def right_renaming(left_vertices: Iterable[str], left_secondary: Sequence[str],
                   right_vertices: Sequence[str], right_primary: Sequence[str]) -> dict[str, str]:
    """Vertex map applied to the right operand of a gluing.

    Shared with tree-decomposition gluing so that both produce the same names.
    """
    ports = dict(zip(right_primary, left_secondary))
    inner = [v for v in right_vertices if v not in ports]
    suffix = fresh_suffix(inner, set(left_vertices))
    mapping = {v: v + suffix for v in inner}
    mapping.update(ports)
    return mapping


def glue(left: PortedGraph, right: PortedGraph) -> PortedGraph:
    """Merge ``left``'s secondary ports positionally with ``right``'s primary ports."""
    if left.k != right.k:
        raise PortArityMismatch(f"cannot glue a {left.k}-graph with a {right.k}-graph")
    mapping = right_renaming(left.graph.vertices, left.secondary_ports,
                             right.graph.vertices, right.primary_ports)
    merged = set(right.primary_ports)
    vertices = left.graph.vertices + tuple(mapping[v] for v in right.graph.vertices if v not in merged)
    edges = left.graph.edges | {(mapping[u], mapping[v]) for u, v in right.graph.edges}
    return PortedGraph(
        Digraph(vertices, frozenset(edges)),
        left.primary_ports,
        tuple(mapping[p] for p in right.secondary_ports),
    )


def delta(family: GadgetFamily, word: Sequence) -> PortedGraph:
    """Left fold of :func:`glue` over the family members named by ``word``."""
    word = list(word)
    if not word:
        raise ValueError("word must be nonempty")
    result = family[word[0]]
    for symbol in word[1:]:
        result = glue(result, family[symbol])
    return result


def disjoint_union(g: Digraph, h: Digraph) -> Digraph:
    return glue(PortedGraph(g), PortedGraph(h)).graph


def out_degree_exactly(g: Digraph, d: int) -> bool:
    return all(len(g.successors[v]) == d for v in g.vertices)


def _to_nx(g: Digraph) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def _degree_profile(g: Digraph):
    indeg = {v: 0 for v in g.vertices}
    for _, v in g.edges:
        indeg[v] += 1
    loops = {u for u, v in g.edges if u == v}
    return sorted((len(g.successors[v]), indeg[v], v in loops) for v in g.vertices)


def isomorphic(g: Digraph, h: Digraph, bound: int = ISOMORPHISM_BOUND) -> bool:
    """Exact digraph isomorphism test (self-loops count as edges)."""
    if len(g) > bound or len(h) > bound:
        raise SizeBoundExceeded(f"isomorphism test limited to {bound} vertices")
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return False
    if _degree_profile(g) != _degree_profile(h):
        return False
    if not g.edges:
        return True
    gx, hx = _to_nx(g), _to_nx(h)
    # vf2pp matches loops only through node labels
    for x, src in ((gx, g), (hx, h)):
        nx.set_node_attributes(x, {v: int((v, v) in src.edges) for v in src.vertices}, "loop")
    return nx.vf2pp_is_isomorphic(gx, hx, node_label="loop")


def brute_force_isomorphic(g: Digraph, h: Digraph) -> bool:
    """Permutation search; only for tiny graphs and as a test oracle."""
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return False
    for perm in itertools.permutations(h.vertices):
        mapping = dict(zip(g.vertices, perm))
        if {(mapping[u], mapping[v]) for u, v in g.edges} == h.edges:
            return True
    return False


def graph_to_dict(g) -> dict:
    if isinstance(g, PortedGraph):
        d = graph_to_dict(g.graph)
        d["primary_ports"] = list(g.primary_ports)
        d["secondary_ports"] = list(g.secondary_ports)
        return d
    return {"vertices": list(g.vertices), "edges": sorted([u, v] for u, v in g.edges)}


def graph_from_dict(d: Mapping) -> PortedGraph:
    g = Digraph(tuple(d["vertices"]), frozenset(tuple(e) for e in d.get("edges", [])))
    return PortedGraph(g, tuple(d.get("primary_ports", ())), tuple(d.get("secondary_ports", ())))
