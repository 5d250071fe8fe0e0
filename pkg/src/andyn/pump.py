"""Pump extraction from decomposed models, pump verification, and gadget assembly.

Equivalence of boundaried graphs with respect to a formula is only probed
against a finite family of contexts, so :func:`find_pump` returns candidates
and :func:`verify_pump` is the actual soundness gate.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConditionViolation, PortArityMismatch
from .graphs import Digraph, GadgetFamily, PortedGraph, delta, disjoint_union, glue, out_degree_exactly
from .logic import Formula, chi, evaluate
from .treedec import TreeDecomp, boundaried_subgraph, n_key


@dataclass(frozen=True)
class ContextFamily:
    contexts: tuple[PortedGraph, ...]

    def __post_init__(self):
        object.__setattr__(self, "contexts", tuple(self.contexts))
        if len({h.k for h in self.contexts}) > 1:
            raise PortArityMismatch("contexts must share one port arity")

    @property
    def k(self) -> int | None:
        return self.contexts[0].k if self.contexts else None


def random_contexts(k: int, count: int = 12, extra: int = 2, seed: int = 0) -> ContextFamily:
    """The bare port graph plus ``count`` random k-graphs with up to ``extra`` inner vertices."""
    rng = random.Random(seed)
    ports = tuple(f"c{i}" for i in range(k))
    out = [PortedGraph(Digraph(ports), ports, ports)]
    for _ in range(count):
        verts = ports + tuple(f"d{i}" for i in range(rng.randint(0, extra)))
        edges = {(u, v) for u in verts for v in verts if rng.random() < 0.3}
        out.append(PortedGraph(Digraph(verts, frozenset(edges)), ports, ports))
    return ContextFamily(tuple(out))


def empirical_equiv(g: PortedGraph, h: PortedGraph, psi: Formula, ctx: ContextFamily) -> bool:
    """Do ``g`` and ``h`` agree on ``psi`` after gluing every context on the right?"""
    if g.k != h.k or (ctx.k is not None and ctx.k != g.k):
        raise PortArityMismatch("port arities of graphs and contexts differ")
    return all(evaluate(psi, glue(g, c).graph) == evaluate(psi, glue(h, c).graph) for c in ctx.contexts)


@dataclass(frozen=True)
class PumpTriple:
    g1: PortedGraph
    g2: PortedGraph
    g3: PortedGraph

    def __post_init__(self):
        if not self.g1.k == self.g2.k == self.g3.k:
            raise PortArityMismatch("pump parts must share one port arity")
        if set(self.g1.primary_ports) & set(self.g1.secondary_ports) == set(self.g1.graph.vertices):
            raise ValueError("the pumped part must contain a vertex outside its overlapping ports")

    @property
    def k(self) -> int:
        return self.g1.k

    @property
    def family(self) -> GadgetFamily:
        return GadgetFamily(self.k, {"1": self.g1, "2": self.g2, "3": self.g3})

    def pumped(self, l: int) -> Digraph:
        return delta(self.family, "2" + "1" * l + "3").graph


def _span(t: TreeDecomp, nodes: Iterable[str]) -> set[str]:
    out = set()
    for n in nodes:
        out.update(t.bags[n])
    return out


def split_at(model: Digraph, t: TreeDecomp, v: str, v2: str, tail: str | None = None) -> PumpTriple:
    """Cut the decomposition at ``v`` above ``v2`` into prefix, pumped part and suffix."""
    sv, sv2 = set(t.subtree(v)), set(t.subtree(v2))
    t1 = (sv - sv2) | {v2}
    t2 = (set(t.nodes) - sv) | {v}
    tail = tail if tail is not None else t.subtree(v2)[-1]
    g1 = PortedGraph(model.induced(_span(t, t1)), t.bags[v], t.bags[v2])
    g2 = PortedGraph(model.induced(_span(t, t2)), t.bags[t.root], t.bags[v])
    g3 = PortedGraph(model.induced(_span(t, sv2)), t.bags[v2], t.bags[tail])
    return PumpTriple(g1, g2, g3)


def find_pump(model: Digraph, decomp: TreeDecomp, psi: Formula, ctx: ContextFamily, *,
              deterministic: bool = False, disjoint_ports: bool = False,
              minimize: bool = True) -> PumpTriple | None:
    """Search root-to-leaf paths for N-different, context-equivalent node pairs."""
    if ctx.k is not None and ctx.k != decomp.k + 1:
        raise PortArityMismatch("contexts must have the bag size as arity")
    nval = {n: boundaried_subgraph(decomp, model, n) for n in decomp.nodes}
    keys = {n: n_key(p) for n, p in nval.items()}
    candidates = []
    seen = set()
    for leaf in decomp.leaves():
        path = decomp.path_to(leaf)
        for i, v in enumerate(path):
            for v2 in path[i + 1:]:
                if (v, v2) in seen or keys[v] == keys[v2]:
                    continue
                seen.add((v, v2))
                if disjoint_ports and set(decomp.bags[v]) & set(decomp.bags[v2]):
                    continue
                try:
                    triple = split_at(model, decomp, v, v2, leaf)
                except ValueError:
                    continue  # pumping would not grow the graph
                if not empirical_equiv(nval[v], nval[v2], psi, ctx):
                    continue
                if deterministic and not all(out_degree_exactly(triple.pumped(l), 1) for l in range(3)):
                    continue
                if not minimize:
                    return triple
                candidates.append((len(triple.g1), len(triple.g2), triple))
    if not candidates:
        return None
    return min(candidates, key=lambda c: (c[0], c[1]))[2]


def verify_pump(t: PumpTriple, psi: Formula, l_max: int, require_functional: bool = False) -> bool:
    guard = chi() if require_functional else None
    for l in range(l_max + 1):
        g = t.pumped(l)
        if not evaluate(psi, g):
            return False
        if guard is not None and not evaluate(guard, g):
            return False
    return True


class Saturation(enum.Enum):
    AllModels = "AllModels"
    AllCounterModels = "AllCounterModels"
    Mixed = "Mixed"


def saturation_check(omega: Digraph, psi: Formula, family: Sequence[Digraph]) -> Saturation:
    values = {evaluate(psi, disjoint_union(g, omega)) for g in family}
    if values == {True}:
        return Saturation.AllModels
    if values == {False}:
        return Saturation.AllCounterModels
    return Saturation.Mixed


@dataclass(frozen=True)
class AssembledGadgets:
    g0: PortedGraph
    g1: PortedGraph
    g2: PortedGraph
    g3: PortedGraph
    g4: PortedGraph
    alpha: int
    a: int
    b: int

    @property
    def k(self) -> int:
        return self.g1.k

    @property
    def family(self) -> GadgetFamily:
        return GadgetFamily(self.k, {"0": self.g0, "1": self.g1, "2": self.g2, "3": self.g3, "4": self.g4})


def self_glue(g: PortedGraph, times: int) -> PortedGraph:
    out = g
    for _ in range(times - 1):
        out = glue(out, g)
    return out


def _union_with_ports(g: PortedGraph, extra: Digraph, pads: int) -> PortedGraph:
    taken = set(g.graph.vertices)
    rename = {}
    for v in extra.vertices:
        name = f"w{v}"
        while name in taken:
            name += "'"
        rename[v] = name
        taken.add(name)
    pad_names = []
    i = 0
    while len(pad_names) < pads:
        if f"pad{i}" not in taken:
            pad_names.append(f"pad{i}")
        i += 1
    om = extra.relabel(rename)
    verts = g.graph.vertices + om.vertices + tuple(pad_names)
    edges = g.graph.edges | om.edges | {(p, p) for p in pad_names}
    return PortedGraph(Digraph(verts, frozenset(edges)), g.primary_ports, g.secondary_ports)


def assemble_gadgets(t: PumpTriple, omega: Digraph, q: int | None = None) -> AssembledGadgets:
    """Build G0..G4 from a pump and a saturating graph.

    ``alpha`` is the least power of ``q`` (least positive integer when ``q`` is
    None) such that ``alpha`` glued copies of the pumped part are at least as
    large as ``omega`` plus one copy; G0 is padded with isolated fixed points.
    """
    k = t.k
    a = len(t.g1) - k
    if a < 1:
        raise ConditionViolation("the pumped part adds no vertices")
    target = len(omega) + len(t.g1)
    alpha = 1
    while alpha * a + k < target:
        alpha = alpha * q if q else alpha + 1
    g1 = self_glue(t.g1, alpha)
    g0 = _union_with_ports(t.g1, omega, len(g1) - target)
    out = AssembledGadgets(g0, g1, t.g2, t.g3, t.g1, alpha, a, len(t.g2) + len(t.g3) - k)
    if not conditions_check(out):
        raise ConditionViolation("assembled gadgets violate the port conditions")
    return out


def _overlap(g: PortedGraph) -> frozenset[tuple[int, int]]:
    return frozenset((i, j) for i, p in enumerate(g.primary_ports)
                     for j, r in enumerate(g.secondary_ports) if p == r)


def _port_descriptor(g: PortedGraph, v: str):
    """Out-neighbourhood of ``v`` described through port positions."""
    desc = []
    for w in g.graph.successors[v]:
        pos = tuple(("P1", i) for i, p in enumerate(g.primary_ports) if p == w)
        pos += tuple(("P2", i) for i, p in enumerate(g.secondary_ports) if p == w)
        desc.append(pos or ("inner",))
    return sorted(desc)


def conditions_check(g: AssembledGadgets) -> bool:
    """Equal sizes, equal port overlap short of all of G1, equal overlap neighbourhoods."""
    if len(g.g0) != len(g.g1):
        return False
    ov0, ov1 = _overlap(g.g0), _overlap(g.g1)
    if ov0 != ov1 or len(ov1) >= len(g.g1):
        return False
    for i, _ in ov1:
        if _port_descriptor(g.g0, g.g0.primary_ports[i]) != _port_descriptor(g.g1, g.g1.primary_ports[i]):
            return False
    return True
