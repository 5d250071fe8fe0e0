import dataclasses

import pytest

from andyn.demos import FIG1_FORMULA, HAS_FIXED_POINT, demos, fixed_point_demo, q3_demo
from andyn.errors import ArithmeticInfeasible, FormulaSyntaxError, ModeViolation
from andyn.graphs import Digraph, PortedGraph, delta, isomorphic
from andyn.logic import chi, evaluate, parse_formula
from andyn.networks import expand_dynamics
from andyn.pump import AssembledGadgets, PumpTriple, assemble_gadgets
from andyn.reduce import (
    Layout,
    ReductionOutput,
    compile_reduction,
    glue_word,
    load_prop,
    parse_dimacs,
    parse_prop,
    plan_layout,
    region_offsets,
    satisfiable,
    truth_word,
    verify_reduction,
)


def ported(n, edges, p1, p2, tag):
    verts = tuple(f"{tag}{i}" for i in range(n))
    return PortedGraph(Digraph(verts, frozenset((f"{tag}{u}", f"{tag}{v}") for u, v in edges)),
                       tuple(f"{tag}{i}" for i in p1), tuple(f"{tag}{i}" for i in p2))


def abc_gadgets():
    """a=3, b=5, alpha=2 family built from a 4-vertex functional pump part."""
    # secondary ports get their out-edge from the next glued segment
    g1 = ported(4, [(0, 1), (1, 2), (2, 3)], (0,), (3,), "p")
    g2 = ported(3, [(0, 1), (1, 2)], (0,), (2,), "r")
    g3 = ported(3, [(0, 1), (1, 2), (2, 2)], (0,), (2,), "t")
    omega = Digraph(("o",), frozenset({("o", "o")}))
    return assemble_gadgets(PumpTriple(g1, g2, g3), omega, q=2)


def test_truth_word_examples():
    assert truth_word(parse_prop("x1", 1)) == "01"
    assert truth_word(parse_prop("x1 | !x1", 1)) == "11"
    assert truth_word(parse_prop("x1 & x2", 2)) == "0001"
    assert truth_word(parse_prop("true")) == "1"
    assert glue_word(parse_prop("x1 & x2", 2), 3) == "2" + "1110" + "444" + "3"


def test_prop_parsing():
    f = parse_prop("!x1 & (x2 | x3)")
    assert f.s == 3 and satisfiable(f)
    assert parse_prop("x1", 4).s == 4
    assert not satisfiable(parse_prop("x1 & !x1"))
    for bad in ("x1 &", "x0", "(x1", "x1 x2", "y1"):
        with pytest.raises(FormulaSyntaxError):
            parse_prop(bad)
    assert str(parse_prop(FIG1_FORMULA)).count("x") == 5


def test_dimacs():
    text = "c sample\np cnf 3 2\n1 -2 0\n2 3 0\n"
    f = parse_dimacs(text)
    assert f.s == 3
    for i in range(8):
        x1, x2, x3 = i & 1, (i >> 1) & 1, (i >> 2) & 1
        assert f.value(i) == bool((x1 or not x2) and (x2 or x3))
    assert load_prop(text).s == 3
    assert load_prop("x1 | x2").s == 2


def test_region_offsets_example():
    r = region_offsets(3, 4, 1, 3, 1, 2, 4)
    assert list(r.values()) == [(0, 3), (3, 9), (9, 11), (11, 17)]


def test_layout_examples():
    g = abc_gadgets()
    assert (g.a, g.b, g.alpha) == (3, 5, 2)
    lay = plan_layout(g, parse_prop("x1", 1))
    assert (lay.n, lay.total, lay.L) == (7, 128, 37)
    lay0 = plan_layout(fixed_point_demo(), parse_prop("true", 0))
    assert lay0.blocks == 1
    lq = plan_layout(q3_demo(), parse_prop("x1", 1), "q:3")
    assert (lq.total, lq.n, lq.alphabet_sizes) == (81, 4, (3, 3, 3, 3))
    assert Layout.from_dict(lq.to_dict()) == lq


def test_layout_regions_partition():
    lay = plan_layout(abc_gadgets(), parse_prop("x1 & x2", 2))
    spans = list(lay.regions().values())
    assert spans[0][0] == 0 and spans[-1][1] == lay.total
    assert all(a[1] == b[0] for a, b in zip(spans, spans[1:]))


def test_infeasible_modes():
    with pytest.raises(ArithmeticInfeasible):
        plan_layout(q3_demo(), parse_prop("x1", 1), "boolean")  # a + b = 11
    with pytest.raises(ValueError):
        plan_layout(q3_demo(), parse_prop("x1", 1), "q:1")


def test_fixed_point_demo_examples():
    g = fixed_point_demo()
    out = compile_reduction(g, parse_prop(FIG1_FORMULA, 3), "an")
    dyn = expand_dynamics(out.descriptor)
    assert len(dyn) == 16 and evaluate(chi(), dyn)
    assert evaluate(parse_formula(HAS_FIXED_POINT), dyn)
    out_u = compile_reduction(g, parse_prop("x1 & !x1", 3), "an")
    dyn_u = expand_dynamics(out_u.descriptor)
    assert not evaluate(parse_formula(HAS_FIXED_POINT), dyn_u)
    assert verify_reduction(out_u, g, parse_formula(HAS_FIXED_POINT)).ok


def test_q_uniform_compile():
    out = compile_reduction(q3_demo(), parse_prop("x1", 1), "an", "q:3")
    assert out.descriptor.alphabet_sizes == (3, 3, 3, 3)
    assert verify_reduction(out, q3_demo(), parse_formula(HAS_FIXED_POINT)).ok


def test_corrupted_output_is_reported():
    g = fixed_point_demo()
    out = compile_reduction(g, parse_prop("x1 | x2", 2), "an")
    word = out.expected_word
    flipped = word[0] + "".join("1" if c == "0" else "0" if c == "1" else c for c in word[1:])
    rep = verify_reduction(dataclasses.replace(out, expected_word=flipped), g, parse_formula(HAS_FIXED_POINT))
    assert not rep.isomorphic and not rep.ok


def test_overlapping_ports_rejected_in_repeated_gadgets():
    g1 = ported(2, [(0, 1), (1, 1)], (0,), (0,), "u")
    g0 = ported(2, [(0, 0), (1, 1)], (0,), (0,), "v")
    empty = PortedGraph(Digraph(("e",)), ("e",), ("e",))
    fam = AssembledGadgets(g0, g1, empty, empty, g1, alpha=1, a=1, b=1)
    with pytest.raises(ModeViolation):
        compile_reduction(fam, parse_prop("x1", 1), "an")


@pytest.mark.parametrize("name", sorted(demos()))
@pytest.mark.parametrize("s", [1, 2, 3])
def test_round_trip_all_demos(name, s):
    demo = demos()[name]
    S = parse_prop("x1 & x2" if s >= 2 else "x1", s)
    out = compile_reduction(demo.gadgets, S, demo.kind, demo.mode, demo.orientation)
    dyn = expand_dynamics(out.descriptor)
    assert isomorphic(dyn, delta(demo.gadgets.family, out.expected_word).graph)
    assert len(out.expected_word) == 2 ** s + out.layout.L + 2
    if demo.kind == "an":
        assert evaluate(chi(), dyn)
    assert verify_reduction(out, demo.gadgets, demo.formula).ok


def test_hand_built_family_compiles():
    g = abc_gadgets()
    for text in ("x1", "x1 & !x1"):
        out = compile_reduction(g, parse_prop(text, 1), "an")
        assert out.layout.total == 128
        assert verify_reduction(out, g, parse_formula("exists x. exists y. x != y & x -> x & y -> y")).ok


@pytest.mark.parametrize("name", sorted(demos()))
def test_gate_count_grows_moderately(name):
    # from s = 2 on; at s = 1 the fixed-point network has four configurations
    # and folds down to a dozen gates, which makes the first ratio meaningless
    demo = demos()[name]
    counts = []
    for s in range(2, 7):
        S = parse_prop(" | ".join(f"x{i}" for i in range(1, s + 1)), s)
        counts.append(len(compile_reduction(demo.gadgets, S, demo.kind, demo.mode).descriptor.circuit))
    assert all(b <= 4 * a for a, b in zip(counts, counts[1:])), counts


def test_output_dict_round_trip():
    out = compile_reduction(fixed_point_demo(), parse_prop("x1 | x2", 2), "an")
    back = ReductionOutput.from_dict(out.to_dict())
    assert back == out and back.prop.s == 2
