"""Boolean gate circuits and a small word-level builder that lowers to them.

Words are lists of gate ids, least significant bit first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ArityMismatch

OPS = ("AND", "OR", "NOT", "XOR", "CONST0", "CONST1", "INPUT")


@dataclass(frozen=True)
class Gate:
    id: int
    op: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Circuit:
    n_inputs: int
    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        gates = tuple(g if isinstance(g, Gate) else Gate(int(g["id"]), *_parse_op(g)) for g in self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "outputs", tuple(int(o) for o in self.outputs))
        defined = set()
        for g in gates:
            if g.op not in OPS:
                raise ValueError(f"unknown gate op {g.op!r}")
            if g.id in defined:
                raise ValueError(f"gate id {g.id} defined twice")
            if g.op == "INPUT":
                if len(g.args) != 1 or not 0 <= g.args[0] < self.n_inputs:
                    raise ValueError(f"gate {g.id}: INPUT index out of range")
            else:
                want = {"NOT": 1, "CONST0": 0, "CONST1": 0}.get(g.op)
                if want is not None and len(g.args) != want:
                    raise ValueError(f"gate {g.id}: {g.op} takes {want} arguments")
                if want is None and len(g.args) < 1:
                    raise ValueError(f"gate {g.id}: {g.op} needs arguments")
                for a in g.args:
                    if a not in defined:
                        raise ValueError(f"gate {g.id} uses {a} before its definition")
            defined.add(g.id)
        for o in self.outputs:
            if o not in defined:
                raise ValueError(f"output {o} is not a gate")

    def __len__(self):
        return len(self.gates)

    def to_dict(self) -> dict:
        return {
            "inputs": self.n_inputs,
            "gates": [{"id": g.id, "op": g.op, "args": list(g.args)} for g in self.gates],
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "Circuit":
        return cls(int(d["inputs"]), tuple(d["gates"]), tuple(d["outputs"]))


def _parse_op(g: Mapping):
    op = str(g["op"])
    args = tuple(int(a) for a in g.get("args", ()))
    if op.startswith("INPUT(") and op.endswith(")"):
        return "INPUT", (int(op[6:-1]),)
    return op, args


def eval_circuit(c: Circuit, bits: Sequence[int]) -> list[int]:
    if len(bits) != c.n_inputs:
        raise ArityMismatch(f"circuit takes {c.n_inputs} input bits, got {len(bits)}")
    val: dict[int, int] = {}
    for g in c.gates:
        if g.op == "INPUT":
            v = int(bits[g.args[0]]) & 1
        elif g.op == "CONST0":
            v = 0
        elif g.op == "CONST1":
            v = 1
        elif g.op == "NOT":
            v = 1 - val[g.args[0]]
        elif g.op == "AND":
            v = int(all(val[a] for a in g.args))
        elif g.op == "OR":
            v = int(any(val[a] for a in g.args))
        else:
            v = 0
            for a in g.args:
                v ^= val[a]
        val[g.id] = v
    return [val[o] for o in c.outputs]


def eval_batch(c: Circuit, inputs: np.ndarray) -> np.ndarray:
    """Evaluate on many inputs at once; ``inputs`` has shape (n_inputs, N)."""
    inputs = np.asarray(inputs, dtype=bool)
    if inputs.shape[0] != c.n_inputs:
        raise ArityMismatch(f"circuit takes {c.n_inputs} input bits, got {inputs.shape[0]}")
    n = inputs.shape[1]
    zeros, ones = np.zeros(n, dtype=bool), np.ones(n, dtype=bool)
    val: dict[int, np.ndarray] = {}
    for g in c.gates:
        if g.op == "INPUT":
            v = inputs[g.args[0]]
        elif g.op == "CONST0":
            v = zeros
        elif g.op == "CONST1":
            v = ones
        elif g.op == "NOT":
            v = ~val[g.args[0]]
        else:
            fn = {"AND": np.logical_and, "OR": np.logical_or, "XOR": np.logical_xor}[g.op]
            v = val[g.args[0]]
            for a in g.args[1:]:
                v = fn(v, val[a])
        val[g.id] = v
    if not c.outputs:
        return np.zeros((0, n), dtype=bool)
    return np.stack([val[o] for o in c.outputs])


class CircuitBuilder:
    """Hash-consing gate builder with constant folding and word-level helpers."""

    def __init__(self, n_inputs: int):
        self.n_inputs = n_inputs
        self.gates: list[Gate] = []
        self._memo: dict[tuple, int] = {}
        self._neg: dict[int, int] = {}
        self.zero = self._make("CONST0", ())
        self.one = self._make("CONST1", ())
        self._table_memo: dict = {}

    def _make(self, op, args):
        key = (op, args)
        if key in self._memo:
            return self._memo[key]
        gid = len(self.gates)
        self.gates.append(Gate(gid, op, args))
        self._memo[key] = gid
        return gid

    # bit level

    def input(self, k: int) -> int:
        return self._make("INPUT", (k,))

    def const(self, b) -> int:
        return self.one if b else self.zero

    def not_(self, a: int) -> int:
        if a == self.zero:
            return self.one
        if a == self.one:
            return self.zero
        if a in self._neg:
            return self._neg[a]
        g = self._make("NOT", (a,))
        self._neg[g] = a
        self._neg.setdefault(a, g)
        return g

    def and_(self, a: int, b: int) -> int:
        if a == self.zero or b == self.zero:
            return self.zero
        if a == self.one:
            return b
        if b == self.one or a == b:
            return a
        if self._neg.get(a) == b:
            return self.zero
        return self._make("AND", tuple(sorted((a, b))))

    def or_(self, a: int, b: int) -> int:
        if a == self.one or b == self.one:
            return self.one
        if a == self.zero:
            return b
        if b == self.zero or a == b:
            return a
        if self._neg.get(a) == b:
            return self.one
        return self._make("OR", tuple(sorted((a, b))))

    def xor_(self, a: int, b: int) -> int:
        if a == self.zero:
            return b
        if b == self.zero:
            return a
        if a == self.one:
            return self.not_(b)
        if b == self.one:
            return self.not_(a)
        if a == b:
            return self.zero
        if self._neg.get(a) == b:
            return self.one
        return self._make("XOR", tuple(sorted((a, b))))

    def mux(self, sel: int, then: int, other: int) -> int:
        if then == other or sel == self.one:
            return then
        if sel == self.zero:
            return other
        if then == self.one and other == self.zero:
            return sel
        if then == self.zero and other == self.one:
            return self.not_(sel)
        return self.or_(self.and_(sel, then), self.and_(self.not_(sel), other))

    def all_(self, bits: Sequence[int]) -> int:
        out = self.one
        for b in bits:
            out = self.and_(out, b)
        return out

    def any_(self, bits: Sequence[int]) -> int:
        out = self.zero
        for b in bits:
            out = self.or_(out, b)
        return out

    # word level

    def input_word(self, start: int, width: int) -> list[int]:
        return [self.input(start + i) for i in range(width)]

    def const_word(self, value: int, width: int) -> list[int]:
        return [self.const((value >> i) & 1) for i in range(width)]

    def _pad(self, x, width):
        return list(x[:width]) + [self.zero] * (width - len(x))

    def add(self, x, y, width: int | None = None) -> list[int]:
        width = width if width is not None else max(len(x), len(y)) + 1
        x, y = self._pad(x, width), self._pad(y, width)
        out, carry = [], self.zero
        for a, b in zip(x, y):
            t = self.xor_(a, b)
            out.append(self.xor_(t, carry))
            carry = self.or_(self.and_(a, b), self.and_(t, carry))
        return out

    def sub(self, x, y):
        """Two's-complement ``x - y`` at the wider width, plus a borrow bit (x < y)."""
        width = max(len(x), len(y))
        x, y = self._pad(x, width), self._pad(y, width)
        out, borrow = [], self.zero
        for a, b in zip(x, y):
            t = self.xor_(a, b)
            out.append(self.xor_(t, borrow))
            borrow = self.or_(self.and_(self.not_(a), b), self.and_(self.not_(t), borrow))
        return out, borrow

    def lt(self, x, y) -> int:
        return self.sub(x, y)[1]

    def eq(self, x, y) -> int:
        width = max(len(x), len(y))
        x, y = self._pad(x, width), self._pad(y, width)
        return self.all_([self.not_(self.xor_(a, b)) for a, b in zip(x, y)])

    def eq_const(self, x, value: int) -> int:
        if value >> len(x):
            return self.zero
        return self.eq(x, self.const_word(value, len(x)))

    def lt_const(self, x, value: int) -> int:
        if value >> len(x):
            return self.one
        return self.lt(x, self.const_word(value, len(x)))

    def mux_word(self, sel: int, then, other) -> list[int]:
        width = max(len(then), len(other))
        then, other = self._pad(then, width), self._pad(other, width)
        return [self.mux(sel, a, b) for a, b in zip(then, other)]

    def mul_const(self, x, c: int, width: int) -> list[int]:
        acc = self.const_word(0, width)
        shift = 0
        while c >> shift:
            if (c >> shift) & 1:
                acc = self.add(acc, [self.zero] * shift + list(x), width)
            shift += 1
        return acc

    def divmod_const(self, x, d: int):
        """Restoring shift-and-subtract division by the constant ``d >= 1``."""
        if d < 1:
            raise ValueError("divisor must be positive")
        rw = d.bit_length() + 1
        r = self.const_word(0, rw)
        quotient = [self.zero] * len(x)
        dword = self.const_word(d, rw)
        for i in reversed(range(len(x))):
            r = [x[i]] + r[:rw - 1]
            diff, borrow = self.sub(r, dword)
            ge = self.not_(borrow)
            quotient[i] = ge
            r = self.mux_word(ge, diff, r)
        return quotient, r[:d.bit_length()]

    def table(self, key, entries: Sequence[int], width: int, default: int = 0) -> list[int]:
        """Constant lookup ``entries[key]`` (``default`` beyond the end) as a mux tree."""
        size = 1 << len(key)
        ent = tuple(list(entries[:size]) + [default] * max(0, size - len(entries)))
        return self._table(tuple(key), ent, 0, width)

    def _table(self, key, entries, level, width):
        memo_key = (key[level:], entries, width)
        if memo_key in self._table_memo:
            return self._table_memo[memo_key]
        first = entries[0]
        if all(e == first for e in entries):
            out = self.const_word(first, width)
        else:
            lo = self._table(key, entries[0::2], level + 1, width)
            hi = self._table(key, entries[1::2], level + 1, width)
            out = self.mux_word(key[level], hi, lo)
        self._table_memo[memo_key] = out
        return out

    def build(self, outputs: Sequence[int]) -> Circuit:
        """Emit only the gates the outputs depend on, renumbered densely."""
        needed = set()
        stack = list(outputs)
        while stack:
            g = stack.pop()
            if g in needed:
                continue
            needed.add(g)
            stack.extend(self.gates[g].args if self.gates[g].op != "INPUT" else ())
        renum = {}
        gates = []
        for g in self.gates:
            if g.id not in needed:
                continue
            renum[g.id] = len(gates)
            args = g.args if g.op == "INPUT" else tuple(renum[a] for a in g.args)
            gates.append(Gate(len(gates), g.op, args))
        return Circuit(self.n_inputs, tuple(gates), tuple(renum[o] for o in outputs))
