"""alglogic: a verifiable kernel for the type-free logic of recursive algorithms.

Algorithms are data, deduction is a machine program, and every law the kernel
claims is either executed or certified step by step.
"""

from . import laws, paradox, rules  # noqa: F401  (program registration, suite surface)
from .data import (
    Alg,
    Datum,
    EnumerationLimitError,
    FULL_UNIVERSE,
    Lst,
    Nat,
    Universe,
    alg,
    canonical_compare,
    enumerate_data,
    is_statement,
    lst,
    nat,
    size,
    universe,
)
from .deduction import (
    Certified,
    FuelExhausted,
    ProofScript,
    ProofStep,
    ProvedAtStage,
    StepFailed,
    certify,
    closure_stages,
    deduce_faithful,
    library_rules,
    m_true_check,
    make_library,
    pair_index,
    pair_rank,
)
from .machine import Halted, Machine, OutOfFuel, Process, default_machine
from .rules import RULE_IDS, apply_rule, rule_alg
from .statements import (
    F,
    T,
    TruthVerdict,
    bicond,
    conj,
    conj_list,
    disj,
    evaluate_truth,
    halts,
    implies,
    material,
    neg,
    prove,
    stmt,
    strong_neg,
    turnstile,
)

__version__ = "0.1.0"
