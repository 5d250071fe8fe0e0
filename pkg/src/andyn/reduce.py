"""Compile (gadgets, propositional formula) into a succinct network whose
dynamics is the glued word graph 2 . w . 4^L . 3.

Letter ``w[i]`` is 0 when assignment ``i`` satisfies S (a copy of G0) and 1
otherwise (a copy of G1).  The orientation flag only decides which way the
formula's truth value is read: under ``sat`` the dynamics satisfies psi iff w
contains a 0, under ``unsat`` iff it contains none.

Configuration layout, in index order: all of G2, then one block per
valuation, then the non-primary vertices of G3, then the L padding copies of
G4.  Every block after G2 holds only the non-primary vertices of its gadget,
secondary ports first, because its primary ports are the previous block's
secondary ports.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from . import arith
from .circuits import CircuitBuilder
from .errors import ArithmeticInfeasible, FormulaSyntaxError, ModeViolation, PreconditionViolated
from .graphs import PortedGraph, delta, isomorphic
from .logic import Formula, evaluate
from .networks import DETERMINISTIC, NONDETERMINISTIC, NetworkDescriptor, bit_width, expand_dynamics
from .pump import AssembledGadgets

SAT, UNSAT = "sat", "unsat"
TRUTH_WORD_BOUND = 20


# ------------------------------------------------------------ propositional

@dataclass(frozen=True)
class PVar:
    index: int


@dataclass(frozen=True)
class PConst:
    value: bool


@dataclass(frozen=True)
class PNot:
    body: object


@dataclass(frozen=True)
class PAnd:
    left: object
    right: object


@dataclass(frozen=True)
class POr:
    left: object
    right: object


def _max_var(node) -> int:
    if isinstance(node, PVar):
        return node.index
    if isinstance(node, PConst):
        return 0
    if isinstance(node, PNot):
        return _max_var(node.body)
    return max(_max_var(node.left), _max_var(node.right))


@dataclass(frozen=True)
class PropFormula:
    ast: object
    s: int

    def __post_init__(self):
        if _max_var(self.ast) > self.s:
            raise ValueError(f"formula mentions x{_max_var(self.ast)} but s = {self.s}")

    def value(self, assignment: int) -> bool:
        """Truth value; bit j of ``assignment`` is variable x_{j+1}."""
        return _pvalue(self.ast, assignment)

    def compile(self, b: CircuitBuilder, bits: Sequence[int]) -> int:
        return _pcompile(self.ast, b, bits)

    def __str__(self):
        return _ptext(self.ast)


def _pvalue(node, asg) -> bool:
    if isinstance(node, PVar):
        return bool((asg >> (node.index - 1)) & 1)
    if isinstance(node, PConst):
        return node.value
    if isinstance(node, PNot):
        return not _pvalue(node.body, asg)
    if isinstance(node, PAnd):
        return _pvalue(node.left, asg) and _pvalue(node.right, asg)
    return _pvalue(node.left, asg) or _pvalue(node.right, asg)


def _pcompile(node, b, bits) -> int:
    if isinstance(node, PVar):
        return bits[node.index - 1]
    if isinstance(node, PConst):
        return b.const(node.value)
    if isinstance(node, PNot):
        return b.not_(_pcompile(node.body, b, bits))
    if isinstance(node, PAnd):
        return b.and_(_pcompile(node.left, b, bits), _pcompile(node.right, b, bits))
    return b.or_(_pcompile(node.left, b, bits), _pcompile(node.right, b, bits))


def _ptext(node) -> str:
    if isinstance(node, PVar):
        return f"x{node.index}"
    if isinstance(node, PConst):
        return "true" if node.value else "false"
    if isinstance(node, PNot):
        return "!" + (_ptext(node.body) if isinstance(node.body, (PVar, PConst, PNot)) else f"({_ptext(node.body)})")
    op = " & " if isinstance(node, PAnd) else " | "
    return f"({_ptext(node.left)}{op}{_ptext(node.right)})"


_PTOKEN = re.compile(r"\s*(?:(x(\d+))|(true|false)|([()&|!]))")


def parse_prop(text: str, s: int | None = None) -> PropFormula:
    """Parse ``x1 & !x2 | (x3 & true)``; precedence ``!`` > ``&`` > ``|``."""
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _PTOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        toks.append((m.group(0).strip(), m.start() + len(m.group(0)) - len(m.group(0).lstrip())))
        pos = m.end()
    toks.append(("<end>", len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def disj():
        node = conj()
        while peek() == "|":
            take()
            node = POr(node, conj())
        return node

    def conj():
        node = unary()
        while peek() == "&":
            take()
            node = PAnd(node, unary())
        return node

    def unary():
        tok, at = take()
        if tok == "!":
            return PNot(unary())
        if tok == "(":
            node = disj()
            if take()[0] != ")":
                raise FormulaSyntaxError("expected ')'", toks[i - 1][1])
            return node
        if tok in ("true", "false"):
            return PConst(tok == "true")
        if re.fullmatch(r"x\d+", tok) and int(tok[1:]) >= 1:
            return PVar(int(tok[1:]))
        raise FormulaSyntaxError(f"unexpected {tok!r}", at)

    ast = disj()
    if peek() != "<end>":
        raise FormulaSyntaxError(f"unexpected {peek()!r}", toks[i][1])
    return PropFormula(ast, max(_max_var(ast), s or 0))


def parse_dimacs(text: str) -> PropFormula:
    """CNF in DIMACS format; ``s`` comes from the problem line."""
    s, clauses, current = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            s = int(line.split()[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    ast = PConst(True)
    for clause in clauses:
        c = PConst(False)
        for lit in clause:
            atom = PVar(abs(lit)) if lit > 0 else PNot(PVar(abs(lit)))
            c = atom if c == PConst(False) else POr(c, atom)
        ast = c if ast == PConst(True) else PAnd(ast, c)
    return PropFormula(ast, max(s, _max_var(ast)))


def load_prop(text: str, s: int | None = None) -> PropFormula:
    stripped = [l for l in text.splitlines() if l.strip() and not l.strip().startswith("c")]
    if stripped and stripped[0].strip().startswith("p"):
        return parse_dimacs(text)
    return parse_prop(text, s)


def truth_word(S: PropFormula) -> str:
    if S.s > TRUTH_WORD_BOUND:
        raise PreconditionViolated(f"truth words limited to s <= {TRUTH_WORD_BOUND}")
    return "".join("1" if S.value(i) else "0" for i in range(1 << S.s))


def satisfiable(S: PropFormula) -> bool:
    return "1" in truth_word(S)


def glue_word(S: PropFormula, L: int) -> str:
    """2 . w . 4^L . 3 with w[i] = 0 exactly when assignment i satisfies S."""
    w = "".join("0" if c == "1" else "1" for c in truth_word(S))
    return "2" + w + "4" * L + "3"


# ------------------------------------------------------------------ layout

@dataclass(frozen=True)
class Layout:
    k: int
    g2_size: int
    block_extent: int
    blocks: int
    g3_extent: int
    pad_extent: int
    L: int
    n: int
    alphabet_sizes: tuple[int, ...]
    mode: str

    @property
    def valuation_offset(self) -> int:
        return self.g2_size

    @property
    def g3_offset(self) -> int:
        return self.g2_size + self.blocks * self.block_extent

    @property
    def pad_offset(self) -> int:
        return self.g3_offset + self.g3_extent

    @property
    def total(self) -> int:
        return self.pad_offset + self.L * self.pad_extent

    def regions(self) -> dict[str, tuple[int, int]]:
        return {
            "g2": (0, self.g2_size),
            "valuations": (self.valuation_offset, self.g3_offset),
            "g3": (self.g3_offset, self.pad_offset),
            "padding": (self.pad_offset, self.total),
        }

    def block(self, j: int) -> tuple[int, int]:
        start = self.valuation_offset + j * self.block_extent
        return start, start + self.block_extent

    def to_dict(self) -> dict:
        d = {name: getattr(self, name) for name in (
            "k", "g2_size", "block_extent", "blocks", "g3_extent", "pad_extent", "L", "n", "mode")}
        d["alphabet_sizes"] = list(self.alphabet_sizes)
        d["regions"] = {k: list(v) for k, v in self.regions().items()}
        d["total"] = self.total
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "Layout":
        return cls(d["k"], d["g2_size"], d["block_extent"], d["blocks"], d["g3_extent"],
                   d["pad_extent"], d["L"], d["n"], tuple(d["alphabet_sizes"]), d["mode"])


def region_offsets(g2: int, g1: int, k: int, g3: int, s: int, L: int, g4: int) -> dict[str, tuple[int, int]]:
    """Region boundaries from raw gadget sizes."""
    lay = Layout(k, g2, g1 - k, 1 << s, g3 - k, g4 - k, L, 0, (), "raw")
    return lay.regions()


def parse_mode(mode) -> int:
    """Alphabet size of a mode: ``"boolean"`` is 2, ``"q:<q>"`` or an int is q."""
    if isinstance(mode, int):
        return mode
    if mode == "boolean":
        return 2
    m = re.fullmatch(r"q:(\d+)", str(mode))
    if not m or int(m.group(1)) < 2:
        raise ValueError(f"mode must be 'boolean' or 'q:<q>' with q >= 2, got {mode!r}")
    return int(m.group(1))


def plan_layout(g: AssembledGadgets, S: PropFormula, mode="boolean") -> Layout:
    k, s = g.k, S.s
    try:
        if mode == "boolean":
            q = 2
            L = arith.padding_boolean(g.a, g.b, g.alpha, s)
            n = arith.boolean_automata(g.a, g.b, g.alpha, s)
        else:
            q = parse_mode(mode)
            if g.b < 1:
                raise PreconditionViolated("q-uniform padding needs b >= 1")
            per = arith.periodicity(g.a, g.b, q)
            if per is None:
                raise PreconditionViolated("(a, b, q) has no period, so at most one solution exists")
            L = arith.padding_q(g.a, g.b, q, per[0], g.alpha, s)
            n = arith.q_automata(g.a, g.b, q, per[0], g.alpha, s)
    except PreconditionViolated as exc:
        raise ArithmeticInfeasible(str(exc)) from exc
    lay = Layout(k, len(g.g2), len(g.g1) - k, 1 << s, len(g.g3) - k, len(g.g4) - k, L, n,
                 (q,) * n, "boolean" if mode == "boolean" else f"q:{q}")
    expected = g.a * (g.alpha * (1 << s) + L) + g.b
    if lay.total != expected or lay.total != q ** n:
        raise ArithmeticInfeasible(
            f"layout covers {lay.total} configurations, expected {expected} = {q}^{n}")
    return lay


# ------------------------------------------------------------ compilation

@dataclass(frozen=True)
class ReductionOutput:
    descriptor: NetworkDescriptor
    layout: Layout
    expected_word: str
    orientation: str
    formula: str
    s: int

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor.to_dict(),
            "layout": self.layout.to_dict(),
            "expected_word": self.expected_word,
            "orientation": self.orientation,
            "formula": self.formula,
            "s": self.s,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ReductionOutput":
        return cls(NetworkDescriptor.from_dict(d["descriptor"]), Layout.from_dict(d["layout"]),
                   d["expected_word"], d["orientation"], d["formula"], int(d["s"]))

    @property
    def prop(self) -> PropFormula:
        return parse_prop(self.formula, self.s)


def _local_order(g: PortedGraph, first: bool, check: bool) -> list[str]:
    """Vertices a block owns, secondary ports first."""
    if first:
        owned = list(g.graph.vertices)
    else:
        p1 = set(g.primary_ports)
        if check and p1 & set(g.secondary_ports):
            raise ModeViolation("repeated gadgets need disjoint primary and secondary ports")
        owned = [v for v in g.graph.vertices if v not in p1]
    head = [p for p in g.secondary_ports if p in owned]
    return head + [v for v in owned if v not in head]


@dataclass
class _Slot:
    """A gadget occupying one block, with how to reach its neighbours' bases."""

    gadget: PortedGraph
    first: bool
    prev: tuple[str, int] | None = None   # ("abs", base) or ("rel", base - own base)
    next_gadget: PortedGraph | None = None
    next: tuple[str, int] | None = None
    check: bool = True
    order: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.order = _local_order(self.gadget, self.first, self.check)


def _resolve(base_spec, offset, r):
    kind, base = base_spec
    return ("abs", base + offset) if kind == "abs" else ("rel", base + offset - r)


def _candidates(slot: _Slot) -> list[list[tuple[str, int]]]:
    """Out-neighbour target specs for each owned local position."""
    g = slot.gadget
    rank = {v: i for i, v in enumerate(slot.order)}
    p1 = {p: i for i, p in enumerate(g.primary_ports)}
    out: list[list] = []
    for r, u in enumerate(slot.order):
        specs = []
        for v in g.graph.successors[u]:
            if v in rank:
                specs.append(("rel", rank[v] - r))
            else:
                specs.append(_resolve(slot.prev, p1[v], r))
        # this vertex is secondary port r of its block: edges of the next
        # gadget's primary port r start here
        if slot.next_gadget is not None and r < g.k:
            ng = slot.next_gadget
            nrank = {v: i for i, v in enumerate(_local_order(ng, False, False))}
            np1 = {p: i for i, p in enumerate(ng.primary_ports)}
            for v in ng.graph.successors[ng.primary_ports[r]]:
                if v in np1:
                    specs.append(("rel", np1[v] - r))
                else:
                    specs.append(_resolve(slot.next, nrank[v], r))
        out.append(sorted(set(specs)))
    return out


def _encode_spec(spec, width) -> int:
    kind, val = spec
    return (val % (1 << width)) | ((kind == "abs") << width) | (1 << (width + 1))


class _Compiler:
    def __init__(self, g: AssembledGadgets, S: PropFormula, lay: Layout, kind: str):
        self.g, self.S, self.lay, self.kind = g, S, lay, kind
        self.w = bit_width(lay.total)
        nin = self.w if kind == DETERMINISTIC else 2 * self.w
        self.b = CircuitBuilder(nin)
        self.x = self.b.input_word(0, self.w)
        # each entry: (condition bit, local index word, candidate table)
        self.cases: list[tuple[int, list[int], list[list]]] = []

    def letter_gadget(self, sat: bool) -> PortedGraph:
        return self.g.g0 if sat else self.g.g1

    def add_case(self, cond, key, slot: _Slot):
        cands = _candidates(slot)
        if self.kind == DETERMINISTIC:
            for r, c in enumerate(cands):
                if len(c) != 1:
                    raise ModeViolation(
                        f"deterministic mode needs out-degree one, configuration slot {r} has {len(c)} successors")
        self.cases.append((cond, key, cands))

    def build(self):
        b, lay, g, S = self.b, self.lay, self.g, self.S
        x, w = self.x, self.w
        e, blocks, L, a = lay.block_extent, lay.blocks, lay.L, lay.pad_extent
        last_block_base = lay.valuation_offset + (blocks - 1) * e
        after_blocks = ("abs", lay.pad_offset) if L else ("abs", lay.g3_offset)
        after_blocks_gadget = g.g4 if L else g.g3

        in_g2 = b.lt_const(x, lay.g2_size)
        in_vals = b.and_(b.not_(in_g2), b.lt_const(x, lay.g3_offset))
        in_g3 = b.and_(b.not_(b.lt_const(x, lay.g3_offset)), b.lt_const(x, lay.pad_offset))
        in_pad = b.and_(b.not_(b.lt_const(x, lay.pad_offset)), b.lt_const(x, lay.total))

        def key(word, extent):
            return list(word[:bit_width(extent)])

        # G2 block: the following block holds the gadget of valuation 0
        s0 = S.compile(b, b.const_word(0, max(S.s, 1)))
        for sat in (True, False):
            cond = b.and_(in_g2, s0 if sat else b.not_(s0))
            slot = _Slot(g.g2, True, None, self.letter_gadget(sat), ("abs", lay.valuation_offset), check=False)
            self.add_case(cond, key(x, lay.g2_size), slot)

        # valuation blocks
        off, _ = b.sub(x, b.const_word(lay.valuation_offset, w))
        beta, r = b.divmod_const(off, e)
        bits = list(beta[:S.s])
        cur = S.compile(b, bits)
        beta_next = b.add(beta, b.const_word(1, w), w)
        nxt = S.compile(b, list(beta_next[:S.s]))
        is_first = b.eq_const(beta, 0)
        is_last = b.eq_const(beta, blocks - 1)
        for first, last in product((True, False), repeat=2):
            if blocks == 1 and not (first and last):
                continue
            if blocks > 1 and first and last:
                continue
            prev = ("abs", 0) if first else ("rel", -e)
            pos = b.and_(in_vals, b.and_(is_first if first else b.not_(is_first),
                                         is_last if last else b.not_(is_last)))
            for sat in (True, False):
                cur_cond = b.and_(pos, cur if sat else b.not_(cur))
                if last:
                    slot = _Slot(self.letter_gadget(sat), False, prev, after_blocks_gadget, after_blocks)
                    self.add_case(cur_cond, key(r, e), slot)
                    continue
                for nsat in (True, False):
                    cond = b.and_(cur_cond, nxt if nsat else b.not_(nxt))
                    slot = _Slot(self.letter_gadget(sat), False, prev, self.letter_gadget(nsat), ("rel", e))
                    self.add_case(cond, key(r, e), slot)

        # G3 block, last in the word
        prev3 = ("abs", lay.pad_offset + (L - 1) * a) if L else ("abs", last_block_base)
        off3, _ = b.sub(x, b.const_word(lay.g3_offset, w))
        self.add_case(in_g3, key(off3, max(lay.g3_extent, 1)), _Slot(g.g3, False, prev3, check=False))

        # padding copies of G4
        if L:
            offp, _ = b.sub(x, b.const_word(lay.pad_offset, w))
            p, rp = b.divmod_const(offp, a)
            p_first = b.eq_const(p, 0)
            p_last = b.eq_const(p, L - 1)
            for first, last in product((True, False), repeat=2):
                if L == 1 and not (first and last):
                    continue
                if L > 1 and first and last:
                    continue
                prev = ("abs", last_block_base) if first else ("rel", -a)
                nxt_spec = ("abs", lay.g3_offset) if last else ("rel", a)
                cond = b.and_(in_pad, b.and_(p_first if first else b.not_(p_first),
                                             p_last if last else b.not_(p_last)))
                slot = _Slot(g.g4, False, prev, g.g3 if last else g.g4, nxt_spec)
                self.add_case(cond, key(rp, a), slot)

        return self.emit()

    def emit(self):
        b, w = self.b, self.w
        layers = max((len(c) for _, _, cands in self.cases for c in cands), default=0)
        targets = []
        for layer in range(layers):
            word = b.const_word(0, w + 2)
            for cond, key, cands in self.cases:
                entries = [_encode_spec(c[layer], w) if layer < len(c) else 0 for c in cands]
                word = b.mux_word(cond, b.table(key, entries, w + 2), word)
            val, is_abs, valid = word[:w], word[w], word[w + 1]
            target = b.mux_word(is_abs, val, b.add(self.x, val, w))
            targets.append((valid, target))
        if self.kind == DETERMINISTIC:
            out = targets[0][1] if targets else b.const_word(0, w)
            return b.build(out)
        y = b.input_word(w, w)
        hit = b.any_([b.and_(valid, b.eq(y, t)) for valid, t in targets])
        return b.build([hit])


def compile_reduction(g: AssembledGadgets, S: PropFormula, psi_kind: str = DETERMINISTIC,
                      mode="boolean", orientation: str = SAT) -> ReductionOutput:
    kind = {"an": DETERMINISTIC, "nan": NONDETERMINISTIC}.get(psi_kind, psi_kind)
    if kind not in (DETERMINISTIC, NONDETERMINISTIC):
        raise ValueError(f"unknown network kind {psi_kind!r}")
    if orientation not in (SAT, UNSAT):
        raise ValueError("orientation must be 'sat' or 'unsat'")
    lay = plan_layout(g, S, mode)
    circuit = _Compiler(g, S, lay, kind).build()
    desc = NetworkDescriptor(kind, lay.alphabet_sizes, circuit)
    return ReductionOutput(desc, lay, glue_word(S, lay.L), orientation, str(S), S.s)


@dataclass(frozen=True)
class ReductionReport:
    isomorphic: bool
    psi_matches: bool
    sat_matches: bool
    psi_value: bool
    satisfiable: bool
    word_has_zero: bool
    orientation: str

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.psi_matches and self.sat_matches

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["ok"] = self.ok
        return d


def verify_reduction(out: ReductionOutput, g: AssembledGadgets, psi: Formula) -> ReductionReport:
    dyn = expand_dynamics(out.descriptor)
    expected = delta(g.family, out.expected_word).graph
    iso = isomorphic(dyn, expected)
    has_zero = "0" in out.expected_word
    value = evaluate(psi, dyn)
    want = has_zero if out.orientation == SAT else not has_zero
    sat = satisfiable(out.prop)
    return ReductionReport(iso, value == want, sat == has_zero, value, sat, has_zero, out.orientation)
