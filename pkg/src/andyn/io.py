"""JSON file helpers for graphs, decompositions, gadget directories and fixtures."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .graphs import PortedGraph, graph_from_dict, graph_to_dict
from .logic import Formula, parse_formula
from .pump import AssembledGadgets, PumpTriple
from .treedec import TreeDecomp, td_from_dict, td_to_dict

GADGET_NAMES = ("g0", "g1", "g2", "g3", "g4")


def read_json(path) -> object:
    return json.loads(Path(path).read_text())


def write_json(path, obj, pretty: bool = True) -> None:
    Path(path).write_text(json.dumps(obj, indent=2 if pretty else None, sort_keys=True) + "\n")


def load_graph(path) -> PortedGraph:
    return graph_from_dict(read_json(path))


def save_graph(path, g) -> None:
    write_json(path, graph_to_dict(g))


def load_td(path) -> TreeDecomp:
    return td_from_dict(read_json(path))


def save_td(path, t: TreeDecomp) -> None:
    write_json(path, td_to_dict(t))


def read_formula(arg: str) -> Formula:
    """Parse ``arg`` as a file holding a formula, or else as formula text."""
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    return parse_formula(text.strip())


def gadgets_to_dict(g: AssembledGadgets) -> dict:
    d = {name: graph_to_dict(getattr(g, name)) for name in GADGET_NAMES}
    d.update(alpha=g.alpha, a=g.a, b=g.b)
    return d


def gadgets_from_dict(d) -> AssembledGadgets:
    return AssembledGadgets(*(graph_from_dict(d[name]) for name in GADGET_NAMES),
                            alpha=int(d["alpha"]), a=int(d["a"]), b=int(d["b"]))


def save_gadgets(directory, g: AssembledGadgets) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name in GADGET_NAMES:
        save_graph(directory / f"{name}.json", getattr(g, name))
    write_json(directory / "meta.json", {"alpha": g.alpha, "a": g.a, "b": g.b})


def load_gadgets(directory) -> AssembledGadgets:
    directory = Path(directory)
    meta = read_json(directory / "meta.json")
    return AssembledGadgets(*(load_graph(directory / f"{name}.json") for name in GADGET_NAMES),
                            alpha=int(meta["alpha"]), a=int(meta["a"]), b=int(meta["b"]))


def save_triple(directory, t: PumpTriple) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name in ("g1", "g2", "g3"):
        save_graph(directory / f"{name}.json", getattr(t, name))


def load_triple(directory) -> PumpTriple:
    directory = Path(directory)
    return PumpTriple(*(load_graph(directory / f"{name}.json") for name in ("g1", "g2", "g3")))


def data_path(*parts) -> Path:
    """Location of a file shipped inside the package."""
    return Path(str(resources.files("andyn").joinpath("data", *parts)))
