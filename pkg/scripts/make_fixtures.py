"""Regenerate the JSON fixtures shipped in src/andyn/data from the builders in andyn.demos."""
from pathlib import Path

from andyn import io
from andyn.demos import NO_FIXED_POINT, fig1_formula, fig2_network, fig34_fixture, pump_model, pump_triple
from andyn.graphs import PortedGraph
from andyn.reduce import parse_prop

DATA = Path(__file__).resolve().parents[1] / "src" / "andyn" / "data"


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    io.write_json(DATA / "fig2_nan.json", fig2_network(fig1_formula()).to_dict())
    io.write_json(DATA / "fig2_nan_tautology.json",
                  fig2_network(parse_prop("x1 | !x1", 3)).to_dict())

    fig = DATA / "fig34"
    fig.mkdir(exist_ok=True)
    g, t, g2, t2 = fig34_fixture()
    io.save_graph(fig / "G.json", g)
    io.save_td(fig / "T.json", t)
    io.save_graph(fig / "G_prime.json", g2)
    io.save_td(fig / "T_prime.json", t2)

    pump = DATA / "pump_fixture"
    model, decomp = pump_model()
    io.save_triple(pump, pump_triple())
    io.save_graph(pump / "model.json", PortedGraph(model))
    io.save_td(pump / "decomp.json", decomp)
    (pump / "psi.txt").write_text(NO_FIXED_POINT + "\n")
    io.write_json(pump / "expected.json", {"verdict": True, "l_max": 8, "require_functional": True})


if __name__ == "__main__":
    main()
