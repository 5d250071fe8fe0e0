"""Monadic second-order logic over digraphs: syntax, evaluation, EF games.

Concrete syntax::

    exists x. forall y. (x -> y) & !(x = y) => existsS X. x in X

``->`` is the edge relation and ``=>`` implication.  Precedence, tightest
first: ``!``, ``&``, ``|``, ``=>`` (right associative); a quantifier's scope
extends as far right as possible.  Set variables must be bound by
``existsS``/``forallS`` and only appear on the right of ``in``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .errors import FormulaSyntaxError, FreeVariable, SizeBoundExceeded
from .graphs import Digraph

POINT_BOUND = 1 << 20
SET_BOUND = 20
EF_SIZE_BOUND = 6
EF_ROUND_BOUND = 3


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Edge(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class In(Formula):
    x: str
    s: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsSet(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ForallSet(Formula):
    var: str
    body: Formula


QUANTIFIERS = (Exists, Forall, ExistsSet, ForallSet)
SET_QUANTIFIERS = (ExistsSet, ForallSet)
BINARY = {And: "&", Or: "|", Implies: "=>"}
KEYWORDS = {"exists": Exists, "forall": Forall, "existsS": ExistsSet, "forallS": ForallSet}


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(=>|->|!=|[()&|!.=])|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text: str):
    pos, out = 0, []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        out.append((m.group(1) or m.group(2), start))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.bound: list[tuple[str, str]] = []

    def peek(self):
        return self.toks[self.i][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok, pos

    def name(self):
        tok, pos = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) or tok in KEYWORDS or tok == "in":
            raise FormulaSyntaxError(f"expected a variable, found {tok!r}", pos)
        return tok, pos

    def formula(self):
        left = self.disjunction()
        if self.peek() == "=>":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in KEYWORDS:
            self.take()
            var, pos = self.name()
            if any(v == var for v, _ in self.bound):
                raise FormulaSyntaxError(f"variable {var!r} is bound twice on one path", pos)
            self.take(".")
            kind = "set" if KEYWORDS[tok] in SET_QUANTIFIERS else "point"
            self.bound.append((var, kind))
            body = self.formula()
            self.bound.pop()
            return KEYWORDS[tok](var, body)
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        return self.atom()

    def atom(self):
        x, _ = self.name()
        op, pos = self.take()
        if op not in ("->", "=", "!=", "in"):
            raise FormulaSyntaxError(f"expected '->', '=', '!=' or 'in', found {op!r}", pos)
        y, _ = self.name()
        if op == "->":
            return Edge(x, y)
        if op == "=":
            return Eq(x, y)
        if op == "!=":
            return Not(Eq(x, y))
        return In(x, y)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    tok, pos = p.toks[p.i]
    if tok != "<end>":
        raise FormulaSyntaxError(f"unexpected {tok!r}", pos)
    return f


def to_text(f: Formula) -> str:
    """Pretty-print; ``parse_formula(to_text(f)) == f``."""
    if isinstance(f, Edge):
        return f"{f.x} -> {f.y}"
    if isinstance(f, Eq):
        return f"{f.x} = {f.y}"
    if isinstance(f, In):
        return f"{f.x} in {f.s}"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{f.body.x} != {f.body.y}"
        if isinstance(f.body, Not):
            return "!" + to_text(f.body)
        return f"!({to_text(f.body)})"
    if type(f) in BINARY:
        return f"{_operand(f.left)} {BINARY[type(f)]} {_operand(f.right)}"
    for kw, cls in KEYWORDS.items():
        if type(f) is cls:
            return f"{kw} {f.var}. {to_text(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _operand(f):
    if isinstance(f, (Edge, Eq, In, Not)):
        return to_text(f)
    return f"({to_text(f)})"


# ---------------------------------------------------------- syntax queries

def free_variables(f: Formula, bound=frozenset()) -> set[str]:
    if isinstance(f, (Edge, Eq)):
        return {f.x, f.y} - bound
    if isinstance(f, In):
        return {f.x, f.s} - bound
    if isinstance(f, Not):
        return free_variables(f.body, bound)
    if type(f) in BINARY:
        return free_variables(f.left, bound) | free_variables(f.right, bound)
    return free_variables(f.body, bound | {f.var})


def _check_closed(f: Formula):
    free = free_variables(f)
    if free:
        raise FreeVariable(f"free variables {sorted(free)}")


def _rank(f: Formula) -> int:
    if isinstance(f, (Edge, Eq, In)):
        return 0
    if isinstance(f, Not):
        return _rank(f.body)
    if type(f) in BINARY:
        return max(_rank(f.left), _rank(f.right))
    return 1 + _rank(f.body)


def rank(f: Formula) -> int:
    """Quantifier nesting depth, counting point and set quantifiers alike."""
    _check_closed(f)
    return _rank(f)


def has_set_quantifier(f: Formula) -> bool:
    if isinstance(f, (Edge, Eq, In)):
        return False
    if isinstance(f, Not):
        return has_set_quantifier(f.body)
    if type(f) in BINARY:
        return has_set_quantifier(f.left) or has_set_quantifier(f.right)
    return isinstance(f, SET_QUANTIFIERS) or has_set_quantifier(f.body)


# -------------------------------------------------------------- evaluation

class CompiledFormula:
    """A closed formula turned into nested closures over bitmask graphs."""

    def __init__(self, f: Formula):
        _check_closed(f)
        self.formula = f
        self.uses_sets = has_set_quantifier(f)
        self._ctx = [(), 0]
        self._depth = _rank(f)
        self._fn = self._build(f, {}, 0)

    def _build(self, f, slots, depth) -> Callable[[list], bool]:
        ctx = self._ctx
        if isinstance(f, Edge):
            i, j = slots[f.x], slots[f.y]
            return lambda env: (ctx[0][env[i]] >> env[j]) & 1 == 1
        if isinstance(f, Eq):
            i, j = slots[f.x], slots[f.y]
            return lambda env: env[i] == env[j]
        if isinstance(f, In):
            i, s = slots[f.x], slots[f.s]
            return lambda env: (env[s] >> env[i]) & 1 == 1
        if isinstance(f, Not):
            a = self._build(f.body, slots, depth)
            return lambda env: not a(env)
        if isinstance(f, And):
            a, b = self._build(f.left, slots, depth), self._build(f.right, slots, depth)
            return lambda env: a(env) and b(env)
        if isinstance(f, Or):
            a, b = self._build(f.left, slots, depth), self._build(f.right, slots, depth)
            return lambda env: a(env) or b(env)
        if isinstance(f, Implies):
            a, b = self._build(f.left, slots, depth), self._build(f.right, slots, depth)
            return lambda env: (not a(env)) or b(env)
        body = self._build(f.body, {**slots, f.var: depth}, depth + 1)
        is_set = isinstance(f, SET_QUANTIFIERS)
        universal = isinstance(f, (Forall, ForallSet))

        def quantify(env, slot=depth):
            n = ctx[1]
            for value in range(1 << n if is_set else n):
                env[slot] = value
                if body(env) != universal:
                    return not universal
            return universal

        return quantify

    def __call__(self, g: Digraph) -> bool:
        n = len(g)
        if n > POINT_BOUND:
            raise SizeBoundExceeded(f"vertex quantification limited to {POINT_BOUND} vertices")
        if self.uses_sets and n > SET_BOUND:
            raise SizeBoundExceeded(f"set quantification limited to {SET_BOUND} vertices")
        self._ctx[0], self._ctx[1] = g.out_masks, n
        return self._fn([0] * max(self._depth, 1))


@lru_cache(maxsize=512)
def compile_formula(f: Formula) -> CompiledFormula:
    return CompiledFormula(f)


def evaluate(f: Formula, g: Digraph) -> bool:
    return compile_formula(f)(g)


CHI_TEXT = "forall x. exists y. (x -> y) & (forall z. z != y => !(x -> z))"
FIXED_POINT_TEXT = "exists x. x -> x"
INJECTIVE_TEXT = "forall x. forall y. forall x'. forall y'. (x -> y & x' -> y' & y = y') => x = x'"
NONTRIVIAL_SCC_TEXT = "existsS X. (exists x. x in X) & (forall x. x in X => exists y. y in X & x != y & x -> y)"
STRONGLY_CONNECTED_TEXT = (
    "forallS X. ((exists x. x in X) & (exists y. !(y in X))) "
    "=> exists x. exists y. x in X & !(y in X) & x -> y"
)


def chi() -> Formula:
    """Out-degree exactly one."""
    return parse_formula(CHI_TEXT)


# --------------------------------------------------------- EF games / types

def _check_ef_bounds(g, h, m, size_bound, round_bound):
    if max(len(g), len(h)) > size_bound or m > round_bound:
        raise SizeBoundExceeded(
            f"EF games limited to {size_bound} vertices and {round_bound} rounds")


def _diagram(masks, points, sets):
    return (
        tuple((a == b, (masks[a] >> b) & 1) for a in points for b in points),
        tuple((s >> a) & 1 for a in points for s in sets),
    )


def mso_type(g: Digraph, m: int, points=(), sets=()):
    """Rank-``m`` MSO type of ``g`` with the given distinguished elements.

    Two structures have the same type iff the duplicator wins the ``m``-round
    MSO Ehrenfeucht-Fraisse game from the corresponding positions.
    """
    masks, n = g.out_masks, len(g)
    memo: dict = {}

    def typ(r, pts, sts):
        key = (r, pts, sts)
        if key in memo:
            return memo[key]
        if r == 0:
            out = _diagram(masks, pts, sts)
        else:
            out = frozenset(
                [("p", typ(r - 1, pts + (v,), sts)) for v in range(n)]
                + [("s", typ(r - 1, pts, sts + (s,))) for s in range(1 << n)]
            )
        memo[key] = out
        return out

    return typ(m, tuple(points), tuple(sets))


def ef_equiv(g: Digraph, h: Digraph, m: int, size_bound=EF_SIZE_BOUND,
             round_bound=EF_ROUND_BOUND) -> bool:
    """Does the duplicator win the ``m``-round MSO game on ``g`` and ``h``?"""
    _check_ef_bounds(g, h, m, size_bound, round_bound)
    return mso_type(g, m) == mso_type(h, m)


def ef_game(g: Digraph, h: Digraph, m: int, size_bound=EF_SIZE_BOUND,
            round_bound=EF_ROUND_BOUND) -> bool:
    """Direct game-tree search; exponentially slower than :func:`ef_equiv`."""
    _check_ef_bounds(g, h, m, size_bound, round_bound)
    gm, hm = g.out_masks, h.out_masks
    gn, hn = len(g), len(h)

    def moves(n):
        return [("p", v) for v in range(n)] + [("s", s) for s in range(1 << n)]

    gmoves, hmoves = moves(gn), moves(hn)

    def extend(pts, sts, move):
        kind, val = move
        return (pts + (val,), sts) if kind == "p" else (pts, sts + (val,))

    def duplicator_wins(r, gp, gs, hp, hs):
        if _diagram(gm, gp, gs) != _diagram(hm, hp, hs):
            return False
        if r == 0:
            return True
        for spoil_side in (0, 1):
            for mv in (gmoves if spoil_side == 0 else hmoves):
                answers = hmoves if spoil_side == 0 else gmoves
                ok = False
                for ans in answers:
                    if ans[0] != mv[0]:
                        continue
                    gmv, hmv = (mv, ans) if spoil_side == 0 else (ans, mv)
                    if duplicator_wins(r - 1, *extend(gp, gs, gmv), *extend(hp, hs, hmv)):
                        ok = True
                        break
                if not ok:
                    return False
        return True

    return duplicator_wins(m, (), (), (), ())


# ------------------------------------------------------------ corpora

def random_formula(rng: random.Random, max_rank: int, points=(), sets=(), depth=0,
                   p_set=0.3) -> Formula:
    """A random formula of rank at most ``max_rank`` whose free variables are
    among ``points``/``sets``; closed when both are empty."""
    can_atom = bool(points)
    can_quantify = max_rank > 0
    if not (can_atom or can_quantify):
        raise ValueError("a closed formula of rank 0 has no atoms to build from")
    choice = rng.random()
    if can_atom and (depth > 4 or choice < (0.5 if not can_quantify else 0.3)):
        kinds = ["edge", "eq"] + (["in"] if sets else [])
        kind = rng.choice(kinds)
        if kind == "edge":
            return Edge(rng.choice(points), rng.choice(points))
        if kind == "eq":
            return Eq(rng.choice(points), rng.choice(points))
        return In(rng.choice(points), rng.choice(sets))
    if can_quantify and (depth > 4 or choice < 0.6 or (not can_atom and choice < 0.8)):
        nxt = len(points) + len(sets)
        if points and rng.random() < p_set:
            var = f"X{nxt}"
            cls = rng.choice((ExistsSet, ForallSet))
            body = random_formula(rng, max_rank - 1, points, sets + (var,), depth + 1, p_set)
        else:
            var = f"x{nxt}"
            cls = rng.choice((Exists, Forall))
            body = random_formula(rng, max_rank - 1, points + (var,), sets, depth + 1, p_set)
        return cls(var, body)
    op = rng.choice(("not", "and", "or", "implies"))
    if op == "not":
        return Not(random_formula(rng, max_rank, points, sets, depth + 1, p_set))
    cls = {"and": And, "or": Or, "implies": Implies}[op]
    return cls(random_formula(rng, max_rank, points, sets, depth + 1, p_set),
               random_formula(rng, max_rank, points, sets, depth + 1, p_set))


def formula_corpus(count: int, max_rank: int, seed: int = 0) -> list[Formula]:
    """``count`` distinct closed formulas of rank at most ``max_rank``."""
    rng = random.Random(seed)
    seen: dict[str, Formula] = {}
    attempts = 0
    while len(seen) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("could not generate enough distinct formulas")
        f = random_formula(rng, max_rank)
        seen.setdefault(to_text(f), f)
    return list(seen.values())


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from iter_subformulas(f.body)
    elif type(f) in BINARY:
        yield from iter_subformulas(f.left)
        yield from iter_subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from iter_subformulas(f.body)
