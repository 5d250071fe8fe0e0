"""Circuit-encoded automata networks (deterministic and non-deterministic).

Configurations are indexed in mixed radix with automaton 1 as the least
significant digit, and encoded as little-endian bit strings of
``ceil(log2 |X|)`` bits.  A non-deterministic network's circuit reads the
bits of ``x`` followed by the bits of ``y``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .circuits import Circuit, CircuitBuilder, eval_batch, eval_circuit
from .errors import ArityMismatch, BudgetExceeded, KindMismatch, SizeBoundExceeded, SizeMismatch
from .graphs import Digraph, out_degree_exactly

DETERMINISTIC = "deterministic"
NONDETERMINISTIC = "nondeterministic"
BUDGET_CONSTANT = 64
EXPANSION_BOUND = 1 << 16


def bit_width(size: int) -> int:
    return max(size - 1, 0).bit_length()


def encode(sizes: Sequence[int], digits: Sequence[int]) -> int:
    index, radix = 0, 1
    for q, d in zip(sizes, digits):
        if not 0 <= d < q:
            raise ValueError(f"digit {d} outside alphabet of size {q}")
        index += d * radix
        radix *= q
    return index


def decode(sizes: Sequence[int], index: int) -> tuple[int, ...]:
    digits = []
    for q in sizes:
        index, d = divmod(index, q)
        digits.append(d)
    return tuple(digits)


def to_bits(value: int, width: int) -> list[int]:
    return [(value >> i) & 1 for i in range(width)]


def from_bits(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


@dataclass(frozen=True)
class Configuration:
    index: int
    digits: tuple[int, ...]

    @classmethod
    def from_index(cls, sizes, index) -> "Configuration":
        return cls(index, decode(sizes, index))

    @classmethod
    def from_digits(cls, sizes, digits) -> "Configuration":
        return cls(encode(sizes, digits), tuple(digits))


@dataclass(frozen=True)
class NetworkDescriptor:
    kind: str
    alphabet_sizes: tuple[int, ...]
    circuit: Circuit
    budget_constant: int = BUDGET_CONSTANT

    def __post_init__(self):
        object.__setattr__(self, "alphabet_sizes", tuple(int(q) for q in self.alphabet_sizes))
        if self.kind not in (DETERMINISTIC, NONDETERMINISTIC):
            raise ValueError(f"unknown network kind {self.kind!r}")
        if any(q < 1 for q in self.alphabet_sizes):
            raise ValueError("alphabet sizes must be positive")
        w = self.bits
        if self.kind == DETERMINISTIC:
            if self.circuit.n_inputs != w or len(self.circuit.outputs) != w:
                raise ArityMismatch(f"deterministic circuit needs {w} input and output bits")
        elif self.circuit.n_inputs != 2 * w or len(self.circuit.outputs) != 1:
            raise ArityMismatch(f"non-deterministic circuit needs {2 * w} input bits and 1 output")
        if len(self.circuit) > self.budget:
            raise BudgetExceeded(f"{len(self.circuit)} gates exceed the budget of {self.budget}")

    @property
    def size(self) -> int:
        return math.prod(self.alphabet_sizes)

    @property
    def n(self) -> int:
        return len(self.alphabet_sizes)

    @property
    def bits(self) -> int:
        return bit_width(self.size)

    @property
    def budget(self) -> int:
        x = self.size
        if self.kind == DETERMINISTIC:
            return self.budget_constant * x * max(self.bits, 1)
        return self.budget_constant * x * x

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alphabet_sizes": list(self.alphabet_sizes),
                "circuit": self.circuit.to_dict()}

    @classmethod
    def from_dict(cls, d: Mapping) -> "NetworkDescriptor":
        return cls(d["kind"], tuple(d["alphabet_sizes"]), Circuit.from_dict(d["circuit"]))


def _index(d, x) -> int:
    idx = x.index if isinstance(x, Configuration) else int(x)
    if not 0 <= idx < d.size:
        raise ValueError(f"configuration {idx} outside [0, {d.size})")
    return idx


def step(d: NetworkDescriptor, x):
    """Image of ``x``; circuit output read as a natural number, reduced mod |X|."""
    if d.kind != DETERMINISTIC:
        raise KindMismatch("step needs a deterministic network")
    out = from_bits(eval_circuit(d.circuit, to_bits(_index(d, x), d.bits))) % d.size
    return Configuration.from_index(d.alphabet_sizes, out) if isinstance(x, Configuration) else out


def adjacent(d: NetworkDescriptor, x, y) -> bool:
    if d.kind != NONDETERMINISTIC:
        raise KindMismatch("adjacent needs a non-deterministic network")
    w = d.bits
    return bool(eval_circuit(d.circuit, to_bits(_index(d, x), w) + to_bits(_index(d, y), w))[0])


def _bit_matrix(values: np.ndarray, width: int) -> np.ndarray:
    return ((values[None, :] >> np.arange(width, dtype=np.int64)[:, None]) & 1).astype(bool)


def successor_array(d: NetworkDescriptor) -> np.ndarray:
    """Images of all configurations of a deterministic network."""
    if d.kind != DETERMINISTIC:
        raise KindMismatch("successor_array needs a deterministic network")
    xs = np.arange(d.size, dtype=np.int64)
    out = eval_batch(d.circuit, _bit_matrix(xs, d.bits))
    val = np.zeros(d.size, dtype=object if d.bits > 62 else np.int64)
    for i in range(d.bits):
        val = val + (out[i].astype(np.int64) << i)
    return val % d.size


def adjacency_matrix(d: NetworkDescriptor, chunk: int = 1 << 20) -> np.ndarray:
    if d.kind != NONDETERMINISTIC:
        raise KindMismatch("adjacency_matrix needs a non-deterministic network")
    size, w = d.size, d.bits
    adj = np.zeros((size, size), dtype=bool)
    ys = np.arange(size, dtype=np.int64)
    ybits = _bit_matrix(ys, w)
    rows = max(1, chunk // max(size, 1))
    for start in range(0, size, rows):
        xs = np.arange(start, min(size, start + rows), dtype=np.int64)
        xbits = np.repeat(_bit_matrix(xs, w), size, axis=1)
        inp = np.concatenate([xbits, np.tile(ybits, (1, len(xs)))], axis=0)
        adj[start:start + len(xs)] = eval_batch(d.circuit, inp)[0].reshape(len(xs), size)
    return adj


def expand_dynamics(d: NetworkDescriptor, bound: int = EXPANSION_BOUND) -> Digraph:
    if d.size > bound:
        raise SizeBoundExceeded(f"|X| = {d.size} exceeds the expansion bound {bound}")
    names = tuple(str(i) for i in range(d.size))
    if d.kind == DETERMINISTIC:
        succ = successor_array(d)
        return Digraph(names, frozenset((names[i], names[int(j)]) for i, j in enumerate(succ)))
    xs, ys = np.nonzero(adjacency_matrix(d))
    return Digraph(names, frozenset((names[i], names[j]) for i, j in zip(xs.tolist(), ys.tolist())))


def lookup_table_network(g: Digraph, alphabet_sizes: Sequence[int]) -> NetworkDescriptor:
    """Tabulate ``g`` as a network; vertex i of ``g`` becomes configuration i."""
    sizes = tuple(int(q) for q in alphabet_sizes)
    size = math.prod(sizes)
    if len(g) != size:
        raise SizeMismatch(f"graph has {len(g)} vertices but the alphabets give {size} configurations")
    w = bit_width(size)
    idx = g.index
    if out_degree_exactly(g, 1):
        image = [0] * size
        for u, v in g.edges:
            image[idx[u]] = idx[v]
        b = CircuitBuilder(w)
        out = b.table(b.input_word(0, w), image, w)
        return NetworkDescriptor(DETERMINISTIC, sizes, b.build(out))
    entries = [0] * (1 << (2 * w))
    for u, v in g.edges:
        entries[idx[u] | (idx[v] << w)] = 1
    b = CircuitBuilder(2 * w)
    out = b.table(b.input_word(0, 2 * w), entries, 1)
    return NetworkDescriptor(NONDETERMINISTIC, sizes, b.build(out))
