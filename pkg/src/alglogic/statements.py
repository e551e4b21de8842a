"""Statement encodings and bounded truth evaluation.

A statement [alpha, u, v] claims that running alpha on u halts with output v.
The connective encodings are fixed bit-for-bit so rule pattern matching is
well defined:

    A and B        [AND,  [A, B], 1]
    A or B         [OR,   [A, B], 1]
    -A             [S_NEG, A, 1]
    G |-rho B      [DEDUCE, [G, rho, B], 1]
    A =rho=> B     the turnstile with G = [A]
    not-rho A      A =rho=> FALSE-STATEMENT
    prove_rho(A)   TRUE-STATEMENT =rho=> A
    A -> B         -A or B
    halts(A)       -A or A
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import programs
from .data import Alg, Datum, Lst, NAT0, NAT1, alg, is_statement, lst


def T() -> Lst:
    """The canonical true statement: identity on 0 outputs 0."""
    return lst(alg(programs.IDENTITY), NAT0, NAT0)


def F() -> Lst:
    """The canonical directly-false statement: identity on 0 outputs 1."""
    return lst(alg(programs.IDENTITY), NAT0, NAT1)


T_STMT = T()
F_STMT = F()
LOOP_STMT = lst(alg(programs.LOOP), NAT0, NAT0)


def _require_statement(d: Datum, role: str) -> Lst:
    if not is_statement(d):
        raise ValueError(f"{role} must be an algorithmic statement, got {d!r}")
    return d  # type: ignore[return-value]


def stmt(alpha: Datum, u: Datum, v: Datum) -> Lst:
    if not isinstance(alpha, Alg):
        raise ValueError(f"statement head must be an algorithm, got {alpha!r}")
    return lst(alpha, u, v)


def parts(s: Datum) -> tuple[Alg, Datum, Datum]:
    s = _require_statement(s, "statement")
    return s.items[0], s.items[1], s.items[2]


def conj(a: Datum, b: Datum) -> Lst:
    _require_statement(a, "conjunct")
    _require_statement(b, "conjunct")
    return lst(alg(programs.AND), lst(a, b), NAT1)


def disj(a: Datum, b: Datum) -> Lst:
    _require_statement(a, "disjunct")
    _require_statement(b, "disjunct")
    return lst(alg(programs.OR), lst(a, b), NAT1)


def strong_neg(a: Datum) -> Lst:
    _require_statement(a, "operand")
    return lst(alg(programs.S_NEG), a, NAT1)


def conj_list(gamma: Sequence[Datum]) -> Lst:
    """Left-associated conjunction; empty list conjoins to the true statement."""
    gamma = list(gamma)
    if not gamma:
        return T()
    acc = _require_statement(gamma[0], "conjunct")
    for c in gamma[1:]:
        acc = conj(acc, c)
    return acc


def turnstile(gamma: Iterable[Datum], rho: Datum, b: Datum) -> Lst:
    items = tuple(gamma)
    for g in items:
        _require_statement(g, "hypothesis")
    _require_statement(b, "goal")
    return lst(alg(programs.DEDUCE), lst(Lst(items), rho, b), NAT1)


def implies(a: Datum, rho: Datum, b: Datum) -> Lst:
    return turnstile([a], rho, b)


def neg(rho: Datum, a: Datum) -> Lst:
    return implies(a, rho, F_STMT)


def prove(rho: Datum, a: Datum) -> Lst:
    return implies(T_STMT, rho, a)


def bicond(rho: Datum, a: Datum, b: Datum) -> Lst:
    return conj(implies(a, rho, b), implies(b, rho, a))


def material(a: Datum, b: Datum) -> Lst:
    return disj(strong_neg(a), b)


def halts(a: Datum) -> Lst:
    return disj(strong_neg(a), a)


@dataclass(frozen=True)
class TruthVerdict:
    kind: str  # "true" | "directly_false" | "unknown"
    fuel_spent: int = 0

    @property
    def is_true(self) -> bool:
        return self.kind == "true"

    @property
    def is_directly_false(self) -> bool:
        return self.kind == "directly_false"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def __str__(self):
        if self.kind == "unknown":
            return f"Unknown(fuel={self.fuel_spent})"
        return "True" if self.kind == "true" else "DirectlyFalse"


TRUE_VERDICT = TruthVerdict("true")
DIRECTLY_FALSE = TruthVerdict("directly_false")


def evaluate_truth(s: Datum, fuel: int, machine=None) -> TruthVerdict:
    """Run a statement's process.  Halting right is True, halting wrong is
    DirectlyFalse, and running out of fuel is Unknown - never a falsity claim.
    """
    from . import machine as machine_mod

    alpha, u, v = parts(s)
    mach = machine if machine is not None else machine_mod.default_machine()
    result = mach.run(machine_mod.Process(alpha, u), fuel)
    if isinstance(result, machine_mod.Halted):
        return TRUE_VERDICT if result.output == v else DIRECTLY_FALSE
    return TruthVerdict("unknown", result.consumed)
