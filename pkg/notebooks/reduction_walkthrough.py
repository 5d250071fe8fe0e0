"""Walk through one SAT reduction end to end.

Compiles a propositional formula into a succinct deterministic network using
the fixed-point gadget family, expands its dynamics and checks that the
dynamics has a fixed point exactly when the formula is satisfiable.
"""
from andyn.demos import FIG1_FORMULA, HAS_FIXED_POINT, fixed_point_demo
from andyn.graphs import delta, isomorphic
from andyn.logic import evaluate, parse_formula
from andyn.networks import expand_dynamics
from andyn.reduce import compile_reduction, parse_prop, satisfiable, verify_reduction

gadgets = fixed_point_demo()
psi = parse_formula(HAS_FIXED_POINT)

for text in (FIG1_FORMULA, "x1 & !x1"):
    S = parse_prop(text, 3)
    out = compile_reduction(gadgets, S, "an")
    dyn = expand_dynamics(out.descriptor)
    print(f"formula       : {text}")
    print(f"satisfiable   : {satisfiable(S)}")
    print(f"word          : {out.expected_word}")
    print(f"automata      : {out.descriptor.n} over sizes {out.descriptor.alphabet_sizes}")
    print(f"gates         : {len(out.descriptor.circuit)}")
    print(f"configurations: {len(dyn)}")
    print(f"glued graph matches dynamics: {isomorphic(dyn, delta(gadgets.family, out.expected_word).graph)}")
    print(f"dynamics has a fixed point : {evaluate(psi, dyn)}")
    print(f"verify report ok           : {verify_reduction(out, gadgets, psi).ok}")
    print()
