"""Exact-arithmetic toolkit for the 3x+1 dynamics.

Modules: core (step/jump kernel), forms (residue-class calculus and the
form-transition graph), routes (increasing closed-walk search), cycles
(ascendancy sets, cycle equations, cycle detection), verify (statement
checks, batch oneness verifier, flight census), cli (command line).
"""

from .core import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    JcfExpansion,
    SyracuseTrace,
    jcf,
    jcf_closed_form,
    jcf_iter,
    ord2,
    reversal,
    reversal_natural,
    step,
    syracuse_sequence,
)
from .cycles import (
    Ascendant,
    CycleEquationInstance,
    CycleRecord,
    ascendancy_bruteforce,
    ascendancy_closed,
    cycle_equation_n,
    detect_cycle,
    reduce_cycle,
    scan_cycle_equations,
)
from .forms import (
    FORMS,
    FormDecomposition,
    FormEdge,
    OddForm,
    build_form_graph,
    form_graph,
    form_step,
    is_involved,
    odd_form_of,
    ruler_stats,
)
from .routes import (
    CongruenceChain,
    Route,
    Triplet,
    compare_with_catalog,
    enumerate_increasing_routes,
    enumerate_increasing_triplets,
    k0_chain,
    route_witness,
    triplet_is_increasing,
)
from .verify import (
    BatchConfig,
    BatchReport,
    CensusReport,
    VerificationReport,
    batch_verify,
    flight_census,
    verify_statement,
)

__version__ = "0.1.0"
