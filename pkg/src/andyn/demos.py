"""Built-in gadget families and small reference fixtures used by examples and tests."""
from __future__ import annotations

from dataclasses import dataclass

from .circuits import CircuitBuilder
from .graphs import Digraph, PortedGraph
from .logic import Formula, parse_formula
from .networks import NONDETERMINISTIC, NetworkDescriptor
from .pump import (
    AssembledGadgets,
    ContextFamily,
    PumpTriple,
    assemble_gadgets,
    find_pump,
    random_contexts,
)
from .reduce import SAT, UNSAT, PropFormula, parse_prop
from .treedec import TreeDecomp

FIG1_FORMULA = "(x1 | x2) & (!x1 | !x2) & x3"
NO_FIXED_POINT = "!exists x. x -> x"
HAS_FIXED_POINT = "exists x. x -> x"
HAS_TWO_CYCLE = "exists x. exists y. x != y & x -> y & y -> x"


def fig1_formula() -> PropFormula:
    return parse_prop(FIG1_FORMULA)


def _graph(vertices, edges, p1=(), p2=()) -> PortedGraph:
    return PortedGraph(Digraph(tuple(vertices), frozenset(edges)), tuple(p1), tuple(p2))


EMPTY = _graph((), ())


@dataclass(frozen=True)
class Demo:
    name: str
    gadgets: AssembledGadgets
    psi: str
    kind: str
    mode: str
    orientation: str

    @property
    def formula(self) -> Formula:
        return parse_formula(self.psi)


def fixed_point_demo() -> AssembledGadgets:
    """Each valuation owns two configurations: a path into a loop or a 2-cycle."""
    g0 = _graph(("u", "v"), {("u", "v"), ("v", "v")})
    g1 = _graph(("u", "v"), {("u", "v"), ("v", "u")})
    return AssembledGadgets(g0, g1, EMPTY, EMPTY, g1, alpha=1, a=2, b=0)


def q3_demo() -> AssembledGadgets:
    """Fixed-point gadgets with a prefix of three 3-cycles, so sizes hit powers of 3."""
    g0 = _graph(("u", "v"), {("u", "v"), ("v", "v")})
    g1 = _graph(("u", "v"), {("u", "v"), ("v", "u")})
    verts = tuple(f"c{i}" for i in range(9))
    edges = {(f"c{i}", f"c{3 * (i // 3) + (i + 1) % 3}") for i in range(9)}
    return AssembledGadgets(g0, g1, _graph(verts, edges), EMPTY, g1, alpha=1, a=2, b=9)


def pump_model() -> tuple[Digraph, TreeDecomp]:
    """A path v0 -> ... -> v6 ending in the 2-cycle v6 <-> v7, with its path decomposition."""
    verts = tuple(f"v{i}" for i in range(8))
    edges = {(f"v{i}", f"v{i + 1}") for i in range(7)} | {("v7", "v6")}
    nodes = tuple(f"n{i}" for i in range(7))
    parent = {f"n{i}": f"n{i - 1}" for i in range(1, 7)}
    bags = {f"n{i}": (f"v{i}", f"v{i + 1}") for i in range(7)}
    return Digraph(verts, frozenset(edges)), TreeDecomp(nodes, parent, bags, "n0", "n6")


def pump_contexts(seed: int = 0) -> ContextFamily:
    return random_contexts(2, count=16, extra=2, seed=seed)


def pump_triple(disjoint_ports: bool = False) -> PumpTriple:
    model, decomp = pump_model()
    t = find_pump(model, decomp, parse_formula(NO_FIXED_POINT), pump_contexts(),
                  deterministic=True, disjoint_ports=disjoint_ports)
    if t is None:
        raise RuntimeError("no pump found in the built-in model")
    return t


def pump_demo() -> AssembledGadgets:
    """Gadgets pumped out of :func:`pump_model`; a lone fixed point saturates to false."""
    omega = Digraph(("o",), frozenset({("o", "o")}))
    return assemble_gadgets(pump_triple(disjoint_ports=True), omega, q=2)


def nan_demo() -> AssembledGadgets:
    """Out-branching 1-graphs; a 2-cycle saturates 'has a 2-cycle' to true."""
    g1t = _graph(("p", "u", "w"), {("p", "u"), ("p", "w")}, ("p",), ("u",))
    g2 = _graph(("r",), set(), ("r",), ("r",))
    g3 = _graph(("t", "z"), {("t", "z")}, ("t",), ("z",))
    omega = Digraph(("o1", "o2"), frozenset({("o1", "o2"), ("o2", "o1")}))
    return assemble_gadgets(PumpTriple(g1t, g2, g3), omega, q=2)


def demos() -> dict[str, Demo]:
    return {
        "fixed-point": Demo("fixed-point", fixed_point_demo(), HAS_FIXED_POINT, "an", "boolean", SAT),
        "q3": Demo("q3", q3_demo(), HAS_FIXED_POINT, "an", "q:3", SAT),
        "pump": Demo("pump", pump_demo(), NO_FIXED_POINT, "an", "boolean", UNSAT),
        "nan": Demo("nan", nan_demo(), HAS_TWO_CYCLE, "nan", "boolean", SAT),
    }


def fig2_network(S: PropFormula | None = None) -> NetworkDescriptor:
    """Two 3-state automata: x -> x+1 (mod 9) exists iff S holds on the low three bits of x."""
    S = S or fig1_formula()
    if S.s > 3:
        raise ValueError("this network evaluates S on three bits")
    b = CircuitBuilder(8)
    x, y = b.input_word(0, 4), b.input_word(4, 4)
    succ = b.mux_word(b.eq_const(x, 8), b.const_word(0, 4), b.add(x, b.const_word(1, 4), 4))
    out = b.and_(b.eq(y, succ), S.compile(b, x[:3]))
    return NetworkDescriptor(NONDETERMINISTIC, (3, 3), b.build([out]))


def fig34_fixture() -> tuple[PortedGraph, TreeDecomp, PortedGraph, TreeDecomp]:
    """The two glued 2-graphs used in the gluing examples, with their path decompositions."""
    g = _graph("12345", {("3", "1"), ("1", "2"), ("2", "4"), ("4", "5"), ("5", "4")}, ("1", "3"), ("4", "5"))
    t = TreeDecomp(("a", "b", "c", "d"), {"b": "a", "c": "b", "d": "c"},
                   {"a": ("1", "3"), "b": ("1", "2"), "c": ("2", "4"), "d": ("4", "5")}, "a", "d")
    g2 = _graph(("6", "7", "8", "9", "10", "11"),
                {("7", "6"), ("6", "8"), ("8", "9"), ("9", "10"), ("10", "11"), ("11", "10")},
                ("7", "6"), ("10", "11"))
    t2 = TreeDecomp(("a", "b", "c", "d", "e"), {"b": "a", "c": "b", "d": "c", "e": "d"},
                    {"a": ("7", "6"), "b": ("6", "8"), "c": ("8", "9"), "d": ("9", "10"), "e": ("10", "11")},
                    "a", "e")
    return g, t, g2, t2
