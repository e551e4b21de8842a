"""Fuel-bounded, step-counted evaluator.

Execution model: every running process is a task wrapping a Python generator.
One unit of fuel buys one quantum; a quantum either resumes the task's own
generator (one yielded instruction) or is routed into a delegated child.  A
child's quanta are charged to every task on the delegation chain, so a parent
that ran halting subprocesses always has runtime strictly greater than the
sum of their runtimes (its own entry quantum is never shared).

Instructions a program generator may yield:

    WORK / None                  one quantum of internal work
    Spawn(alg, input)            create a steppable child task (costs 1)
    StepOnce(task)               advance a spawned child by one quantum
    Call(alg, input)             run a child to completion, reply = output
    CallBounded(alg, input, cap) run a child at most cap quanta;
                                 reply = Bounded(halted, output, consumed)
    FastForward(n)               consume n quanta atomically (memo replay)

Scheduling is deterministic and independent of remaining fuel, which gives
fuel monotonicity: a halted result never changes when fuel is raised.

Programs given an input they do not expect halt with output 0 in one step.
The exceptions: LOOP never halts, and rules return their input unchanged
(see the rules module).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import programs, statements
from .data import (
    Alg,
    Datum,
    EnumerationLimitError,
    FULL_UNIVERSE,
    Lst,
    NAT0,
    NAT1,
    Nat,
    Universe,
    enumerate_statements,
)
from .pairing import pair_index


@dataclass(frozen=True)
class Process:
    alg: Datum
    input: Datum


@dataclass(frozen=True)
class Halted:
    output: Datum
    runtime: int


@dataclass(frozen=True)
class OutOfFuel:
    consumed: int


RunResult = Halted | OutOfFuel


class WORK:
    """Singleton-style marker: one quantum of internal work."""


@dataclass(frozen=True)
class Spawn:
    alg: Datum
    input: Datum


@dataclass(frozen=True)
class StepOnce:
    task: "_Task"


@dataclass(frozen=True)
class Call:
    alg: Datum
    input: Datum


@dataclass(frozen=True)
class CallBounded:
    alg: Datum
    input: Datum
    cap: int


@dataclass(frozen=True)
class FastForward:
    ticks: int


@dataclass(frozen=True)
class ChildStatus:
    done: bool
    output: Optional[Datum]


@dataclass(frozen=True)
class Bounded:
    halted: bool
    output: Optional[Datum]
    consumed: int


class _Task:
    __slots__ = (
        "gen", "program", "started", "done", "output", "ticks", "reply",
        "delegate", "owed", "children", "step_events",
    )

    def __init__(self, gen: Iterator, program: str, recording: bool):
        self.gen = gen
        self.program = program
        self.started = False
        self.done = False
        self.output: Optional[Datum] = None
        self.ticks = 0
        self.reply = None
        self.delegate = None  # (child, mode, cap_left) with mode call|once|bounded
        self.owed = 0
        self.children = [] if recording else None
        self.step_events = [] if recording else None


class _Ctx:
    """Per-task view handed to program generators."""

    __slots__ = ("machine", "task", "trace")

    def __init__(self, machine: "Machine", task: _Task, trace):
        self.machine = machine
        self.task = task
        self.trace = trace


def _junk(ctx, caps, arg):
    return NAT0
    yield


def _identity(ctx, caps, arg):
    return arg
    yield


def _loop(ctx, caps, arg):
    while True:
        yield WORK


def _pair_of(arg: Datum):
    if isinstance(arg, Lst) and len(arg.items) == 2:
        return arg.items
    return None


def _halt(ctx, caps, arg):
    pair = _pair_of(arg)
    if pair is None or not isinstance(pair[0], Alg):
        return NAT0
    yield Call(pair[0], pair[1])
    return NAT1


def _true(ctx, caps, arg):
    if not (isinstance(arg, Lst) and len(arg.items) == 3 and isinstance(arg.items[0], Alg)):
        return NAT0
    alpha, u, v = arg.items
    out = yield Call(alpha, u)
    return NAT1 if out == v else NAT0


def _s_neg(ctx, caps, arg):
    if not (isinstance(arg, Lst) and len(arg.items) == 3 and isinstance(arg.items[0], Alg)):
        return NAT0
    alpha, u, v = arg.items
    out = yield Call(alpha, u)
    return NAT0 if out == v else NAT1


def _two_statements(arg: Datum):
    pair = _pair_of(arg)
    if pair is None:
        return None
    a, b = pair
    from .data import is_statement

    if not (is_statement(a) and is_statement(b)):
        return None
    return a, b


def _dovetail(ctx, arg, want_true: bool):
    """Shared AND/OR body.

    want_true=True is conjunction: 0 as soon as a child is directly false,
    1 once both are true.  want_true=False is disjunction: the dual.
    """
    pair = _two_statements(arg)
    if pair is None:
        return NAT0
    a, b = pair
    ta = yield Spawn(a.items[0], a.items[1])
    tb = yield Spawn(b.items[0], b.items[1])
    tasks = (ta, tb)
    wants = (a.items[2], b.items[2])
    settled = [None, None]
    while True:
        for i in (0, 1):
            if settled[i] is None:
                st = yield StepOnce(tasks[i])
                if st.done:
                    hit = st.output == wants[i]
                    settled[i] = hit
                    if want_true:
                        if not hit:
                            return NAT0
                        if settled[0] and settled[1]:
                            return NAT1
                    else:
                        if hit:
                            return NAT1
                        if settled[0] is False and settled[1] is False:
                            return NAT0


def _and(ctx, caps, arg):
    result = yield from _dovetail(ctx, arg, want_true=True)
    return result


def _or(ctx, caps, arg):
    result = yield from _dovetail(ctx, arg, want_true=False)
    return result


def _curry(ctx, caps, arg):
    pair = _pair_of(arg)
    if pair is None or not isinstance(pair[0], Alg):
        return NAT0
    alpha, rho = pair
    inner = Lst((alpha, Lst((alpha, rho)), NAT1))
    target = statements.neg(rho, inner)
    out = yield Call(target.items[0], target.items[1])
    if out == NAT1:
        return NAT1
    while True:
        yield WORK


def _r_witness(ctx, caps, arg):
    pair = _pair_of(arg)
    if pair is None or not isinstance(pair[0], Alg):
        return NAT0
    alpha, rho = pair
    inner = Lst((alpha, Lst((alpha, rho)), NAT1))
    target = statements.implies(inner, rho, statements.prove(rho, statements.F_STMT))
    out = yield Call(target.items[0], target.items[1])
    if out == NAT1:
        return NAT1
    while True:
        yield WORK


def _beta_haltwitness(ctx, caps, arg):
    if len(caps) != 1 or not isinstance(arg, Alg):
        return NAT0
    rho = caps[0]
    self_stmt = Lst((arg, arg, NAT1))
    x_pos = statements.neg(rho, self_stmt)
    x_neg = statements.neg(rho, statements.strong_neg(self_stmt))
    m = 0
    while True:
        m += 1
        yield WORK
        if x_pos.size <= m:
            o = yield CallBounded(x_pos.items[0], x_pos.items[1], m)
            if o.halted and o.output == x_pos.items[2]:
                return NAT1
        if x_neg.size <= m:
            o = yield CallBounded(x_neg.items[0], x_neg.items[1], m)
            if o.halted and o.output == x_neg.items[2]:
                return NAT0


def _lib_from_list(ctx, caps, arg):
    if len(caps) != 1 or not isinstance(caps[0], Lst) or not caps[0].items:
        return NAT0
    rules = caps[0].items
    if not isinstance(arg, Nat) or arg.value < 1:
        return NAT0
    return rules[min(arg.value, len(rules)) - 1]
    yield


def _conclusion_suffix(out: Datum, h: list[Datum]):
    if not isinstance(out, Lst) or len(out.items) < len(h):
        return None
    for mine, theirs in zip(h, out.items):
        if mine != theirs:
            return None
    return out.items[len(h):]


def _deduce(ctx, caps, arg):
    if not (isinstance(arg, Lst) and len(arg.items) == 3 and isinstance(arg.items[0], Lst)):
        return NAT0
    gamma, rho, goal = arg.items
    h = list(gamma.items)
    tr = ctx.trace
    if tr is not None:
        tr.stage(0, 0, 0, tuple(h))
    for item in h:
        yield WORK
        if item == goal:
            if tr is not None:
                tr.found(0)
            return NAT1
    i = 0
    while True:
        i += 1
        k, m = pair_index(i)
        yield WORK
        rule = yield Call(rho, Nat(k))
        out = yield Call(rule, Lst((Lst(h), rho, Nat(m))))
        new_items = _conclusion_suffix(out, h)
        if new_items is None:
            if tr is not None:
                tr.stage(i, k, m, tuple(h))
            continue
        if tr is not None:
            tr.stage(i, k, m, tuple(h) + tuple(new_items))
        hit = False
        for item in new_items:
            yield WORK
            if item == goal:
                hit = True
                break
        h.extend(new_items)
        if hit:
            if tr is not None:
                tr.found(i)
            return NAT1


_PROGRAM_TABLE: dict[str, Callable] = {
    programs.IDENTITY: _identity,
    programs.LOOP: _loop,
    programs.HALT: _halt,
    programs.TRUE: _true,
    programs.AND: _and,
    programs.OR: _or,
    programs.S_NEG: _s_neg,
    programs.CURRY: _curry,
    programs.R_WITNESS: _r_witness,
    programs.BETA_HALTWITNESS: _beta_haltwitness,
    programs.LIB_FROM_LIST: _lib_from_list,
    programs.DEDUCE: _deduce,
}


def register_program(name: str, factory: Callable) -> None:
    if not programs.is_registered(name):
        raise ValueError(f"cannot register unknown program {name}")
    _PROGRAM_TABLE[name] = factory


def _factory_for(prog: str):
    f = _PROGRAM_TABLE.get(prog)
    if f is None and prog.startswith("RULE_"):
        from . import rules  # noqa: F401  registration side effect

        f = _PROGRAM_TABLE.get(prog)
    return f


class AbortRun(Exception):
    """Raised by a trace hook to stop a run early (host-level inspection)."""


class DeduceTrace:
    """Collects stage snapshots from the root DEDUCE task."""

    def __init__(self, stage_limit: Optional[int] = None):
        self.stages: list[tuple[int, int, int, tuple[Datum, ...]]] = []
        self.found_at: Optional[int] = None
        self.stage_limit = stage_limit

    def stage(self, i, k, m, items):
        self.stages.append((i, k, m, items))
        if self.stage_limit is not None and i >= self.stage_limit:
            raise AbortRun

    def found(self, i):
        self.found_at = i


class Machine:
    """A deterministic evaluator over a fixed enumeration universe."""

    def __init__(self, universe: Universe = FULL_UNIVERSE, enum_cap: int = 1_000_000):
        self.universe = universe
        self.enum_cap = enum_cap
        self._univ_memo: dict[int, tuple[tuple[Datum, ...], int]] = {}

    # -- task plumbing -----------------------------------------------------

    def _make_task(self, alg: Datum, arg: Datum, recording: bool, trace=None) -> _Task:
        if isinstance(alg, Alg):
            factory = _factory_for(alg.prog)
            prog = alg.prog
        else:
            factory = None
            prog = "<junk>"
        if factory is None:
            factory = _junk
            caps = ()
        else:
            caps = alg.captures
        task = _Task(None, prog, recording)
        ctx = _Ctx(self, task, trace)
        task.gen = factory(ctx, caps, arg)
        return task

    def _advance(self, task: _Task, budget: int, recording: bool) -> int:
        if task.owed:
            used = min(budget, task.owed)
            task.owed -= used
            task.ticks += used
            return used
        if task.delegate is not None:
            child, mode, cap_left = task.delegate
            sub_budget = budget if mode != "bounded" else min(budget, cap_left)
            used = self._advance(child, sub_budget, recording)
            task.ticks += used
            if mode == "call":
                if child.done:
                    task.delegate = None
                    task.reply = child.output
            elif mode == "once":
                task.delegate = None
                task.reply = ChildStatus(child.done, child.output)
            else:
                cap_left -= used
                if child.done:
                    task.delegate = None
                    task.reply = Bounded(True, child.output, child.ticks)
                elif cap_left <= 0:
                    task.delegate = None
                    task.reply = Bounded(False, None, child.ticks)
                else:
                    task.delegate = (child, mode, cap_left)
            return used
        while True:
            try:
                if task.started:
                    req = task.gen.send(task.reply)
                else:
                    task.started = True
                    req = next(task.gen)
            except StopIteration as stop:
                task.done = True
                out = stop.value
                task.output = out if isinstance(out, Datum) else NAT0
                task.ticks += 1
                return 1
            task.reply = None
            if req is WORK or req is None or isinstance(req, WORK):
                task.ticks += 1
                return 1
            if isinstance(req, FastForward):
                if req.ticks <= 0:
                    continue  # free replay of an empty region
                used = min(budget, req.ticks)
                task.owed = req.ticks - used
                task.ticks += used
                return used
            if isinstance(req, Spawn):
                child = self._make_task(req.alg, req.input, recording)
                if recording and task.children is not None:
                    task.children.append(child)
                task.reply = child
                task.ticks += 1
                return 1
            if isinstance(req, Call):
                child = self._make_task(req.alg, req.input, recording)
                if recording and task.children is not None:
                    task.children.append(child)
                task.delegate = (child, "call", None)
                task.ticks += 1
                return 1
            if isinstance(req, CallBounded):
                if req.cap < 1:
                    raise ValueError("CallBounded cap must be positive")
                child = self._make_task(req.alg, req.input, recording)
                if recording and task.children is not None:
                    task.children.append(child)
                task.delegate = (child, "bounded", req.cap)
                task.ticks += 1
                return 1
            if isinstance(req, StepOnce):
                child = req.task
                if recording and task.step_events is not None:
                    task.step_events.append(child)
                if child.done:
                    task.reply = ChildStatus(True, child.output)
                    task.ticks += 1
                    return 1
                task.delegate = (child, "once", None)
                task.ticks += 1
                return 1
            raise TypeError(f"unknown machine instruction: {req!r}")

    def _run_task(self, root: _Task, fuel: int, recording: bool) -> RunResult:
        if fuel < 1:
            raise ValueError("fuel must be positive")
        remaining = fuel
        while remaining > 0 and not root.done:
            remaining -= self._advance(root, remaining, recording)
        if root.done:
            return Halted(root.output, root.ticks)
        return OutOfFuel(fuel)

    # -- public surface ----------------------------------------------------

    def run(self, process: Process, fuel: int, trace=None) -> RunResult:
        root = self._make_task(process.alg, process.input, False, trace)
        return self._run_task(root, fuel, False)

    def run_recorded(self, process: Process, fuel: int, trace=None):
        """Like run but also returns the root task tree for instrumentation."""
        root = self._make_task(process.alg, process.input, True, trace)
        result = self._run_task(root, fuel, True)
        return result, root

    # m-true support shared by the Universal rule and the certifier.

    def m_true_statements(self):
        return self._univ_memo


_DEFAULT_MACHINE: Optional[Machine] = None


def default_machine() -> Machine:
    global _DEFAULT_MACHINE
    if _DEFAULT_MACHINE is None:
        _DEFAULT_MACHINE = Machine()
    return _DEFAULT_MACHINE
