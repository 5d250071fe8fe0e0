"""Tree-decompositions with ordered bags, and their gluing by bag substitution."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (
    FamilyMismatch,
    InvalidDecomposition,
    InvalidNode,
    InvalidPath,
    UnknownSymbol,
    WidthMismatch,
)
from .graphs import Digraph, GadgetFamily, PortedGraph, delta, fresh_suffix, right_renaming


@dataclass(frozen=True)
class TreeDecomp:
    """Rooted tree of ordered bags.

    The root and the designated leaf play the role of primary and secondary
    ports when decompositions are glued.
    """

    nodes: tuple[str, ...]
    parent: Mapping[str, str]
    bags: Mapping[str, tuple[str, ...]]
    root: str
    leaf: str

    def __post_init__(self):
        nodes = tuple(str(n) for n in self.nodes)
        parent = {str(c): str(p) for c, p in dict(self.parent).items()}
        bags = {str(n): tuple(str(v) for v in b) for n, b in dict(self.bags).items()}
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "root", str(self.root))
        object.__setattr__(self, "leaf", str(self.leaf))

        nset = set(nodes)
        if len(nset) != len(nodes):
            raise InvalidDecomposition("duplicate node identifiers")
        if self.root not in nset or self.leaf not in nset:
            raise InvalidDecomposition("root and leaf must be nodes")
        if self.root in parent:
            raise InvalidDecomposition("the root has no parent")
        if set(parent) != nset - {self.root}:
            raise InvalidDecomposition("every non-root node needs exactly one parent")
        if any(p not in nset for p in parent.values()):
            raise InvalidDecomposition("parent outside the node list")
        for n in nodes:
            seen = set()
            while n != self.root:
                if n in seen:
                    raise InvalidDecomposition("parent map has a cycle")
                seen.add(n)
                n = parent[n]
        if set(bags) != nset:
            raise InvalidDecomposition("every node needs a bag")
        sizes = {len(b) for b in bags.values()}
        if len(sizes) != 1:
            raise InvalidDecomposition(f"bags must all have the same size, got sizes {sorted(sizes)}")
        for n, b in bags.items():
            if len(set(b)) != len(b):
                raise InvalidDecomposition(f"bag of {n!r} repeats a vertex")
        if self.children[self.leaf]:
            raise InvalidDecomposition("the designated leaf has children")

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        kids: dict[str, list[str]] = {n: [] for n in self.nodes}
        for n in self.nodes:
            if n in self.parent:
                kids[self.parent[n]].append(n)
        return {n: tuple(c) for n, c in kids.items()}

    @property
    def k(self) -> int:
        return len(self.bags[self.root]) - 1

    def __len__(self):
        return len(self.nodes)

    def subtree(self, v: str) -> list[str]:
        """Nodes of the subtree rooted at ``v`` in preorder."""
        if v not in self.bags:
            raise InvalidNode(f"{v!r} is not a node")
        out, stack = [], [v]
        while stack:
            n = stack.pop()
            out.append(n)
            stack.extend(reversed(self.children[n]))
        return out

    def path_to(self, v: str) -> list[str]:
        """Root-to-``v`` node sequence."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def leaves(self) -> list[str]:
        return [n for n in self.nodes if not self.children[n]]

    def vertices(self) -> set[str]:
        return {x for b in self.bags.values() for x in b}

    def restrict(self, keep: Sequence[str], root: str, leaf: str) -> "TreeDecomp":
        """The sub-decomposition induced by a connected node set."""
        keep_set = set(keep)
        nodes = tuple(n for n in self.nodes if n in keep_set)
        parent = {n: self.parent[n] for n in nodes if n != root}
        return TreeDecomp(nodes, parent, {n: self.bags[n] for n in nodes}, root, leaf)


@dataclass(frozen=True)
class DecompFamily:
    k: int
    members: Mapping[str, TreeDecomp] = field(default_factory=dict)

    def __post_init__(self):
        members = {str(key): t for key, t in dict(self.members).items()}
        object.__setattr__(self, "members", members)
        for key, t in members.items():
            if t.k != self.k:
                raise WidthMismatch(f"member {key!r} has width {t.k}, family has {self.k}")

    def __getitem__(self, symbol) -> TreeDecomp:
        try:
            return self.members[str(symbol)]
        except KeyError:
            raise UnknownSymbol(f"no family member indexed by {symbol!r}") from None


def width(t: TreeDecomp) -> int:
    return max(len(b) for b in t.bags.values()) - 1


def is_valid_decomposition(t: TreeDecomp, g: Digraph) -> bool:
    covered = set()
    for b in t.bags.values():
        covered.update(b)
    if not set(g.vertices) <= covered:
        return False
    bag_sets = [set(b) for b in t.bags.values()]
    for u, v in g.edges:
        if not any(u in b and v in b for b in bag_sets):
            return False
    # occurrence subtrees: exactly one occurrence node per vertex lacks an
    # occurring parent iff the occurrence set is connected
    tops: dict[str, int] = {}
    for n in t.nodes:
        par = t.parent.get(n)
        par_bag = set(t.bags[par]) if par is not None else set()
        for x in t.bags[n]:
            if x not in par_bag:
                tops[x] = tops.get(x, 0) + 1
    return all(c == 1 for c in tops.values())


def glue_td(left: TreeDecomp, right: TreeDecomp) -> TreeDecomp:
    """Attach ``right``'s root onto ``left``'s designated leaf, substituting bags."""
    if width(left) != width(right) or len(left.bags[left.leaf]) != len(right.bags[right.root]):
        raise WidthMismatch("decompositions of different widths")
    left_vertices = sorted(left.vertices())
    right_vertices = sorted(right.vertices())
    vmap = right_renaming(left_vertices, left.bags[left.leaf], right_vertices, right.bags[right.root])

    inner_nodes = [n for n in right.nodes if n != right.root]
    nsuffix = fresh_suffix(inner_nodes, set(left.nodes))
    nmap = {n: n + nsuffix for n in inner_nodes}
    nmap[right.root] = left.leaf

    nodes = left.nodes + tuple(nmap[n] for n in inner_nodes)
    parent = dict(left.parent)
    for n in inner_nodes:
        parent[nmap[n]] = nmap[right.parent[n]]
    bags = dict(left.bags)
    for n in inner_nodes:
        bags[nmap[n]] = tuple(vmap[x] for x in right.bags[n])
    return TreeDecomp(nodes, parent, bags, left.root, nmap[right.leaf])


def lam(family: DecompFamily, word: Sequence) -> TreeDecomp:
    """Left fold of :func:`glue_td` over the family members named by ``word``."""
    word = list(word)
    if not word:
        raise ValueError("word must be nonempty")
    result = family[word[0]]
    for symbol in word[1:]:
        result = glue_td(result, family[symbol])
    return result


def boundaried_subgraph(t: TreeDecomp, g: Digraph, v: str) -> PortedGraph:
    """Induced subgraph on the bags below ``v``, with ports ``B(v)``."""
    if v not in t.bags:
        raise InvalidNode(f"{v!r} is not a node of the decomposition")
    span = set()
    for n in t.subtree(v):
        span.update(t.bags[n])
    return PortedGraph.boundaried(g.induced(span), t.bags[v])


def n_key(p: PortedGraph):
    """Comparison key for N-difference: vertex set, edge set, ports in order."""
    return frozenset(p.graph.vertices), p.graph.edges, p.primary_ports


def n_length(t: TreeDecomp, g: Digraph, path: Sequence[str]) -> int:
    path = list(path)
    for n in path:
        if n not in t.bags:
            raise InvalidPath(f"{n!r} is not a node")
    for upper, lower in zip(path, path[1:]):
        if t.parent.get(lower) != upper:
            raise InvalidPath(f"{upper!r} -> {lower!r} is not a tree edge")
    return len({n_key(boundaried_subgraph(t, g, n)) for n in path})


def n_size(t: TreeDecomp, g: Digraph) -> int:
    return len({n_key(boundaried_subgraph(t, g, n)) for n in t.nodes})


def remark2_check(gamma: GadgetFamily, tfam: DecompFamily, word: Sequence) -> bool:
    """Is the glued decomposition a decomposition of the glued graph?"""
    if set(gamma.members) != set(tfam.members):
        raise FamilyMismatch("gadget and decomposition families are indexed differently")
    for key, g in gamma.members.items():
        t = tfam.members[key]
        if t.bags[t.root] != g.primary_ports or t.bags[t.leaf] != g.secondary_ports:
            raise FamilyMismatch(f"member {key!r}: root/leaf bags must equal the primary/secondary ports")
    return is_valid_decomposition(lam(tfam, word), delta(gamma, word).graph)


def td_to_dict(t: TreeDecomp) -> dict:
    return {
        "nodes": list(t.nodes),
        "parent": dict(t.parent),
        "bags": {n: list(b) for n, b in t.bags.items()},
        "root": t.root,
        "leaf": t.leaf,
    }


def td_from_dict(d: Mapping) -> TreeDecomp:
    return TreeDecomp(tuple(d["nodes"]), dict(d.get("parent", {})),
                      {n: tuple(b) for n, b in d["bags"].items()}, d["root"], d["leaf"])
