"""Libraries, faithful deduction, closure stages, and the proof certifier.

DEDUCE walks the diagonal pairing (k, m) over rule-index/resource-budget
pairs, growing the hypothesis list stage by stage and checking the goal after
every stage (the initial list is checked before any rule runs).  The
certifier replays a hand-written script step by step: pattern rules are
re-executed on exactly the cited premises, while the enumerating rules are
checked by witness (is the claimed conclusion in the rule's output?), which
is pointwise equivalent and keeps big resource bounds tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import programs
from .data import (
    Alg,
    Datum,
    EnumerationLimitError,
    Lst,
    NAT0,
    NAT1,
    Nat,
    is_statement,
)
from .machine import (
    AbortRun,
    DeduceTrace,
    Halted,
    Machine,
    OutOfFuel,
    Process,
    default_machine,
)
from .pairing import pair_index, pair_rank  # re-exported API
from .rules import RuleFuelError, apply_rule, match_disj, match_implies, match_neg
from .statements import F_STMT

__all__ = [
    "pair_index",
    "pair_rank",
    "make_library",
    "library_rules",
    "library_rule_index",
    "ProvedAtStage",
    "FuelExhausted",
    "deduce_faithful",
    "Stage",
    "closure_stages",
    "m_true_check",
    "ProofStep",
    "ProofScript",
    "Certified",
    "StepFailed",
    "certify",
]


def make_library(rule_algs: Sequence[Datum]) -> Alg:
    """A finite library datum: on input n it serves rule min(n, N)."""
    rule_algs = tuple(rule_algs)
    if not rule_algs:
        raise ValueError("a library needs at least one rule")
    for r in rule_algs:
        if not (isinstance(r, Alg) and programs.is_rule_program(r.prog)):
            raise ValueError(f"not a rule algorithm: {r!r}")
    return Alg(programs.LIB_FROM_LIST, (Lst(rule_algs),))


def library_rules(rho: Datum) -> tuple[Datum, ...]:
    """The rule list of a finite library datum (needed by the certifier)."""
    if (
        isinstance(rho, Alg)
        and rho.prog == programs.LIB_FROM_LIST
        and len(rho.captures) == 1
        and isinstance(rho.captures[0], Lst)
        and rho.captures[0].items
    ):
        return rho.captures[0].items
    raise ValueError("not an inspectable finite library")


def library_rule_index(rho: Datum, rule_prog: str) -> int:
    """1-based index of the first rule with the given program name."""
    for i, r in enumerate(library_rules(rho), start=1):
        if isinstance(r, Alg) and r.prog == rule_prog:
            return i
    raise ValueError(f"library has no {rule_prog}")


@dataclass(frozen=True)
class ProvedAtStage:
    stage: int
    runtime: int


@dataclass(frozen=True)
class FuelExhausted:
    consumed: int


def _check_deduce_inputs(gamma, goal):
    for g in gamma:
        if not is_statement(g):
            raise ValueError(f"hypothesis is not a statement: {g!r}")
    if goal is not None and not is_statement(goal):
        raise ValueError(f"goal is not a statement: {goal!r}")


def deduce_faithful(
    gamma: Sequence[Datum],
    rho: Datum,
    goal: Datum,
    fuel: int,
    machine: Optional[Machine] = None,
):
    """Run the registered DEDUCE program and report the proving stage.

    FuelExhausted is never a falsity claim: it only means no verdict yet.
    """
    gamma = tuple(gamma)
    _check_deduce_inputs(gamma, goal)
    mach = machine if machine is not None else default_machine()
    trace = DeduceTrace()
    arg = Lst((Lst(gamma), rho, goal))
    result = mach.run(Process(Alg(programs.DEDUCE), arg), fuel, trace=trace)
    if isinstance(result, Halted):
        if result.output != NAT1 or trace.found_at is None:
            raise AssertionError("DEDUCE halted abnormally on validated input")
        return ProvedAtStage(trace.found_at, result.runtime)
    return FuelExhausted(result.consumed)


@dataclass(frozen=True)
class Stage:
    index: int
    rule_index: int
    resource: int
    items: tuple[Datum, ...]


def closure_stages(
    gamma: Sequence[Datum],
    rho: Datum,
    stage_limit: int,
    fuel: int,
    machine: Optional[Machine] = None,
) -> list[Stage]:
    """H_0, H_1, ... as DEDUCE computes them, for inspection.

    Runs DEDUCE against an unreachable goal (a non-statement is never on a
    conclusion list) and harvests the stage trace; stops at stage_limit or
    when fuel runs out, whichever is first.
    """
    gamma = tuple(gamma)
    _check_deduce_inputs(gamma, None)
    mach = machine if machine is not None else default_machine()
    trace = DeduceTrace(stage_limit=stage_limit)
    arg = Lst((Lst(gamma), rho, NAT0))
    try:
        mach.run(Process(Alg(programs.DEDUCE), arg), fuel, trace=trace)
    except AbortRun:
        pass
    return [Stage(i, k, m, items) for (i, k, m, items) in trace.stages]


def m_true_check(x: Datum, m: int, machine: Optional[Machine] = None) -> bool:
    """size(x) <= m, and x's process halts with the right output in <= m steps."""
    if not is_statement(x) or x.size > m:
        return False
    mach = machine if machine is not None else default_machine()
    result = mach.run(Process(x.items[0], x.items[1]), m)
    return isinstance(result, Halted) and result.output == x.items[2]


# -- proof scripts ------------------------------------------------------------

Ref = tuple[str, int]  # ("hyp", i) or ("step", j), zero-based


@dataclass(frozen=True)
class ProofStep:
    rule_index: int  # 1-based index into the library
    resource: int
    cites: tuple[Ref, ...]
    conclusion: Datum


@dataclass(frozen=True)
class ProofScript:
    goal: Datum
    hypotheses: tuple[Datum, ...]
    steps: tuple[ProofStep, ...]


@dataclass(frozen=True)
class Certified:
    steps: int


@dataclass(frozen=True)
class StepFailed:
    index: int  # 0-based failing step; -1 means the script shape itself
    reason: str


_WITNESS_CHECKED = {
    programs.RULE_UNIV,
    programs.RULE_META_UNIV,
    programs.RULE_DISJ_INTRO,
    programs.RULE_P2,
    programs.RULE_P8,
    programs.RULE_P9,
}


def _resolve(script: ProofScript, cites, upto: int):
    out = []
    for kind, idx in cites:
        if kind == "hyp":
            if not 0 <= idx < len(script.hypotheses):
                return None
            out.append(script.hypotheses[idx])
        elif kind == "step":
            if not 0 <= idx < upto:
                return None
            out.append(script.steps[idx].conclusion)
        else:
            return None
    return out


def _universe_statement(mach: Machine, d: Datum) -> bool:
    return is_statement(d) and mach.universe.contains_datum(d)


def _witness_check(prog: str, x: Datum, cited, rho: Datum, m: int, mach: Machine):
    """Membership in an enumerating rule's output, decided pointwise."""
    if x.size > m:
        return f"conclusion size {x.size} exceeds resource {m}"
    if prog == programs.RULE_UNIV:
        if not _universe_statement(mach, x):
            return "conclusion is not a statement over the universe"
        if not m_true_check(x, m, mach):
            return "conclusion is not m-true"
        return None
    if prog == programs.RULE_META_UNIV:
        mi = match_implies(x, rho)
        if mi is None:
            return "conclusion is not of the form A =rho=> B"
        a, b = mi
        if b not in cited:
            return "consequent is not among the cited premises"
        if not _universe_statement(mach, a):
            return "antecedent is not a statement over the universe"
        return None
    if prog == programs.RULE_DISJ_INTRO:
        md = match_disj(x)
        if md is None:
            return "conclusion is not a disjunction"
        a, b = md
        if a in cited and _universe_statement(mach, b):
            return None
        if b in cited and _universe_statement(mach, a):
            return None
        return "neither disjunct is cited with the other in the universe"
    if prog == programs.RULE_P2:
        fires = any(
            (lambda neg_a: neg_a is not None and neg_a in cited)(match_neg(item, rho))
            for item in cited
        )
        if not fires:
            return "cited premises do not contain A and not-rho A"
        if not _universe_statement(mach, x):
            return "conclusion is not a statement over the universe"
        return None
    if prog == programs.RULE_P8:
        md = match_disj(x)
        if md is not None:
            a, na = md
            if match_neg(na, rho) == a and _universe_statement(mach, a):
                return None
        return "conclusion is not of the form A or not-rho A"
    if prog == programs.RULE_P9:
        md = match_disj(x)
        if md is not None:
            na, nna = md
            a = match_neg(na, rho)
            if a is not None and match_neg(nna, rho) == na and _universe_statement(mach, a):
                return None
        return "conclusion is not of the form not-rho A or not-rho not-rho A"
    raise AssertionError(prog)


def certify(
    script: ProofScript,
    rho: Datum,
    machine: Optional[Machine] = None,
    step_fuel: int = 300_000,
):
    """Check a proof script against a library.

    Certified means the goal is in the rho-deductive closure of the
    hypotheses, so the corresponding turnstile statement is true.
    """
    mach = machine if machine is not None else default_machine()
    try:
        rules_list = library_rules(rho)
    except ValueError as exc:
        return StepFailed(-1, str(exc))
    if not script.steps:
        if script.goal in script.hypotheses:
            return Certified(0)
        return StepFailed(-1, "empty script whose goal is not a hypothesis")
    for idx, step in enumerate(script.steps):
        if step.rule_index < 1:
            return StepFailed(idx, "rule index must be positive")
        if step.resource < 1:
            return StepFailed(idx, "resource must be positive")
        cited = _resolve(script, step.cites, idx)
        if cited is None:
            return StepFailed(idx, "citation out of range")
        rule = rules_list[min(step.rule_index, len(rules_list)) - 1]
        if not isinstance(rule, Alg):
            return StepFailed(idx, "cited library entry is not an algorithm")
        if rule.prog in _WITNESS_CHECKED:
            problem = _witness_check(rule.prog, step.conclusion, cited, rho, step.resource, mach)
            if problem is not None:
                return StepFailed(idx, f"{rule.prog}: {problem}")
            continue
        try:
            out = apply_rule(rule, cited, rho, step.resource, fuel=step_fuel, machine=mach)
        except RuleFuelError as exc:
            return StepFailed(idx, f"rule application ran out of fuel: {exc}")
        except EnumerationLimitError as exc:
            return StepFailed(idx, f"infeasible enumeration: {exc}")
        if step.conclusion not in out:
            return StepFailed(idx, f"{rule.prog} did not yield the claimed conclusion")
    if script.steps[-1].conclusion != script.goal:
        return StepFailed(len(script.steps) - 1, "final conclusion differs from the goal")
    return Certified(len(script.steps))
