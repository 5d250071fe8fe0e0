"""Find a pump in a small model, assemble gadgets from it and use them in a reduction."""
from andyn.demos import NO_FIXED_POINT, pump_contexts, pump_model
from andyn.graphs import Digraph
from andyn.logic import parse_formula
from andyn.pump import assemble_gadgets, conditions_check, find_pump, verify_pump
from andyn.reduce import UNSAT, compile_reduction, parse_prop, verify_reduction

psi = parse_formula(NO_FIXED_POINT)
model, decomp = pump_model()
print(f"model: {len(model)} vertices, decomposition with {len(decomp.nodes)} nodes")

triple = find_pump(model, decomp, psi, pump_contexts(), deterministic=True, disjoint_ports=True)
print("pumped part size:", len(triple.g1), "ports:", triple.g1.primary_ports, triple.g1.secondary_ports)
print("pumped sizes:", [len(triple.pumped(l)) for l in range(5)])
print("verified up to 6 pumps:", verify_pump(triple, psi, 6, require_functional=True))

omega = Digraph(("o",), frozenset({("o", "o")}))
gadgets = assemble_gadgets(triple, omega, q=2)
print(f"alpha={gadgets.alpha} a={gadgets.a} b={gadgets.b} conditions hold: {conditions_check(gadgets)}")

# a lone fixed point forces "no fixed point" to false, so a satisfying
# assignment makes psi fail: the reduction lands in the complement
for text in ("x1 | x2", "x1 & !x1"):
    out = compile_reduction(gadgets, parse_prop(text, 2), "an", orientation=UNSAT)
    print(f"{text!r}: word length {len(out.expected_word)}, verified {verify_reduction(out, gadgets, psi).ok}")
