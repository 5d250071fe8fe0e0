"""Succinct automata networks, MSO checking of their dynamics, and pumping-based SAT reductions."""
from .arith import (
    CoprimeDecomp,
    Emptiness,
    GeomSeq,
    SolutionWitness,
    coprime_power,
    divisibility_emptiness,
    find_solutions,
    geometric_sequence,
    normalize,
    padding_boolean,
    padding_q,
    periodicity,
    totient,
)
from .circuits import Circuit, CircuitBuilder, eval_circuit
from .errors import *  # noqa: F401,F403
from .graphs import (
    Digraph,
    GadgetFamily,
    PortedGraph,
    delta,
    disjoint_union,
    glue,
    isomorphic,
    out_degree_exactly,
)
from .logic import chi, ef_equiv, evaluate, parse_formula, rank
from .networks import (
    Configuration,
    NetworkDescriptor,
    adjacent,
    expand_dynamics,
    lookup_table_network,
    step,
)
from .pump import (
    AssembledGadgets,
    ContextFamily,
    PumpTriple,
    assemble_gadgets,
    conditions_check,
    empirical_equiv,
    find_pump,
    saturation_check,
    verify_pump,
)
from .reduce import (
    Layout,
    PropFormula,
    ReductionOutput,
    compile_reduction,
    parse_prop,
    plan_layout,
    truth_word,
    verify_reduction,
)
from .treedec import (
    DecompFamily,
    TreeDecomp,
    boundaried_subgraph,
    glue_td,
    is_valid_decomposition,
    lam,
    n_length,
    n_size,
    remark2_check,
    width,
)

__version__ = "0.1.0"
