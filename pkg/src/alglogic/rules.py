"""The rule catalog: eleven base rules, five extensions, fourteen paradoxical.

Every rule is a registered machine program.  On input [H, rho, m] it halts
with a conclusion list that has H as an initial sublist; appended items are
deduplicated against what is already present and emitted in canonical order.
Monotonicity holds in both H and m: growing either never loses conclusions.

Enumeration-based rules (UNIV, META_UNIV, DISJ_INTRO, P2, P8, P9) charge one
quantum per candidate, so fuel bounds their work; a bound so large that the
candidate count exceeds the machine's cap raises EnumerationLimitError, which
is an infeasibility error, never a wrong answer.

On input that is not [list, datum, positive-nat] a rule halts with its input
unchanged, which vacuously satisfies the rule contract.
"""

from __future__ import annotations

from typing import Optional

from . import programs
from .data import (
    Alg,
    Datum,
    Lst,
    NAT1,
    Nat,
    canonical_key,
    is_statement,
    enumerate_statements,
)
from .machine import (
    CallBounded,
    FastForward,
    Machine,
    OutOfFuel,
    Process,
    WORK,
    default_machine,
    register_program,
)
from .statements import F_STMT, T_STMT, conj, disj, implies, neg, prove, strong_neg


class RuleFuelError(Exception):
    """apply_rule ran out of fuel; the application gave no answer at all."""


# Short, CLI-addressable rule names.
RULE_IDS = {
    "TRANS": programs.RULE_TRANS,
    "UNIV": programs.RULE_UNIV,
    "META_UNIV": programs.RULE_META_UNIV,
    "CONJ": programs.RULE_CONJ,
    "META_CONJ": programs.RULE_META_CONJ,
    "DISJ_INTRO": programs.RULE_DISJ_INTRO,
    "D_ELIM": programs.RULE_D_ELIM,
    "META_DISJ": programs.RULE_META_DISJ,
    "ELIM_CASE": programs.RULE_ELIM_CASE,
    "DOUBLE_NEG": programs.RULE_DOUBLE_NEG,
    "STRONG_DEMORGAN": programs.RULE_STRONG_DEMORGAN,
    "BETA_CURRY": programs.RULE_BETA_CURRY,
    "MP_FIXED": programs.RULE_MP_FIXED,
    "DENY": programs.RULE_DENY,
    "CONJ_CONTRA": programs.RULE_CONJ_CONTRA,
    "R_INTRO": programs.RULE_R_INTRO,
}
for _i in range(1, 15):
    RULE_IDS[f"P{_i}"] = getattr(programs, f"RULE_P{_i}")

RULE_NAMES = {v: k for k, v in RULE_IDS.items()}


def rule_alg(rule: str, *captures: Datum) -> Alg:
    """Build the algorithm datum for a rule, by short or registry name."""
    prog = RULE_IDS.get(rule, rule)
    if not programs.is_rule_program(prog):
        raise ValueError(f"not a rule: {rule}")
    return Alg(prog, captures)


# -- pattern matchers -------------------------------------------------------

def match_conj(d: Datum):
    if (
        isinstance(d, Lst)
        and len(d.items) == 3
        and d.items[0] == Alg(programs.AND)
        and d.items[2] == NAT1
        and isinstance(d.items[1], Lst)
        and len(d.items[1].items) == 2
    ):
        a, b = d.items[1].items
        if is_statement(a) and is_statement(b):
            return a, b
    return None


def match_disj(d: Datum):
    if (
        isinstance(d, Lst)
        and len(d.items) == 3
        and d.items[0] == Alg(programs.OR)
        and d.items[2] == NAT1
        and isinstance(d.items[1], Lst)
        and len(d.items[1].items) == 2
    ):
        a, b = d.items[1].items
        if is_statement(a) and is_statement(b):
            return a, b
    return None


def match_sneg(d: Datum):
    if (
        isinstance(d, Lst)
        and len(d.items) == 3
        and d.items[0] == Alg(programs.S_NEG)
        and d.items[2] == NAT1
        and is_statement(d.items[1])
    ):
        return d.items[1]
    return None


def match_turnstile(d: Datum, rho: Datum):
    if (
        isinstance(d, Lst)
        and len(d.items) == 3
        and d.items[0] == Alg(programs.DEDUCE)
        and d.items[2] == NAT1
        and isinstance(d.items[1], Lst)
        and len(d.items[1].items) == 3
    ):
        gamma, embedded_rho, b = d.items[1].items
        if embedded_rho != rho or not isinstance(gamma, Lst):
            return None
        if not is_statement(b):
            return None
        if not all(is_statement(g) for g in gamma.items):
            return None
        return gamma.items, b
    return None


def match_implies(d: Datum, rho: Datum):
    t = match_turnstile(d, rho)
    if t is not None and len(t[0]) == 1:
        return t[0][0], t[1]
    return None


def match_neg(d: Datum, rho: Datum):
    m = match_implies(d, rho)
    if m is not None and m[1] == F_STMT:
        return m[0]
    return None


def match_prove(d: Datum, rho: Datum):
    m = match_implies(d, rho)
    if m is not None and m[0] == T_STMT:
        return m[1]
    return None


# -- rule machinery ---------------------------------------------------------

def _parse_rule_input(arg: Datum):
    if not (isinstance(arg, Lst) and len(arg.items) == 3):
        return None
    h, rho, m = arg.items
    if not isinstance(h, Lst):
        return None
    if not isinstance(m, Nat) or m.value < 1:
        return None
    return list(h.items), rho, m.value


def _assemble(h_items, new_items) -> Lst:
    seen = set(h_items)
    uniq = []
    for x in new_items:
        if x not in seen:
            seen.add(x)
            uniq.append(x)
    uniq.sort(key=canonical_key)
    return Lst(tuple(h_items) + tuple(uniq))


def _rule_factory(body):
    def factory(ctx, caps, arg):
        parsed = _parse_rule_input(arg)
        if parsed is None:
            return arg
        h, rho, m = parsed
        new = yield from body(ctx, caps, h, rho, m)
        return _assemble(h, new)

    return factory


def _register(name):
    def deco(body):
        register_program(name, _rule_factory(body))
        return body

    return deco


# -- the eleven base rules ----------------------------------------------------

@_register(programs.RULE_TRANS)
def _trans(ctx, caps, h, rho, m):
    imps = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is not None:
            imps.append(mi)
    out = []
    for a1, b1 in imps:
        for a2, b2 in imps:
            if b1 == a2:
                out.append(implies(a1, rho, b2))
    return out


@_register(programs.RULE_UNIV)
def _univ(ctx, caps, h, rho, m):
    mach = ctx.machine
    memo = mach._univ_memo.get(m)
    if memo is not None:
        stmts, cost = memo
        yield FastForward(cost)
        return list(stmts)
    results = []
    cost = 0
    for x in enumerate_statements(mach.universe, m, mach.enum_cap):
        yield WORK
        o = yield CallBounded(x.items[0], x.items[1], m)
        cost += 2 + o.consumed
        if o.halted and o.output == x.items[2]:
            results.append(x)
    mach._univ_memo[m] = (tuple(results), cost)
    return results


@_register(programs.RULE_META_UNIV)
def _meta_univ(ctx, caps, h, rho, m):
    mach = ctx.machine
    out = []
    for b in h:
        yield WORK
        if not is_statement(b):
            continue
        bound = m - 7 - rho.size - b.size
        if bound < 5:
            continue
        for a in enumerate_statements(mach.universe, bound, mach.enum_cap):
            yield WORK
            out.append(implies(a, rho, b))
    return out


@_register(programs.RULE_CONJ)
def _conj_rule(ctx, caps, h, rho, m):
    stmts = []
    out = []
    for item in h:
        yield WORK
        if is_statement(item):
            stmts.append(item)
        mc = match_conj(item)
        if mc is not None:
            out.append(mc[0])
            out.append(mc[1])
    for a in stmts:
        yield WORK
        for b in stmts:
            x = conj(a, b)
            if x.size <= m:
                out.append(x)
    return out


@_register(programs.RULE_META_CONJ)
def _meta_conj(ctx, caps, h, rho, m):
    imps = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is not None:
            imps.append(mi)
    out = []
    for a1, b1 in imps:
        for a2, b2 in imps:
            if a1 == a2:
                out.append(implies(a1, rho, conj(b1, b2)))
    return out


@_register(programs.RULE_DISJ_INTRO)
def _disj_intro(ctx, caps, h, rho, m):
    mach = ctx.machine
    out = []
    for s in h:
        yield WORK
        if not is_statement(s):
            continue
        bound = m - 6 - s.size
        if bound < 5:
            continue
        for x in enumerate_statements(mach.universe, bound, mach.enum_cap):
            yield WORK
            out.append(disj(s, x))
            out.append(disj(x, s))
    return out


@_register(programs.RULE_D_ELIM)
def _d_elim(ctx, caps, h, rho, m):
    h_set = set(h)
    conds = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is None:
            continue
        mc = match_conj(mi[0])
        if mc is None:
            continue
        conds.append((item, mc[0], mc[1], mi[1]))
    out = []
    if m < 2:
        return out
    verified: dict[Datum, bool] = {}
    for it1, g1, a, c1 in conds:
        yield WORK
        for it2, g2, b, c2 in conds:
            if g1 != g2 or c1 != c2:
                continue
            if g1 not in h_set or disj(a, b) not in h_set:
                continue
            ok1 = verified.get(it1)
            if ok1 is None:
                o = yield CallBounded(it1.items[0], it1.items[1], m - 1)
                ok1 = o.halted and o.output == it1.items[2]
                verified[it1] = ok1
            if not ok1:
                continue
            ok2 = verified.get(it2)
            if ok2 is None:
                o = yield CallBounded(it2.items[0], it2.items[1], m - 1)
                ok2 = o.halted and o.output == it2.items[2]
                verified[it2] = ok2
            if ok2:
                out.append(c1)
    return out


@_register(programs.RULE_META_DISJ)
def _meta_disj(ctx, caps, h, rho, m):
    conds = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is None:
            continue
        mc = match_conj(mi[0])
        if mc is None:
            continue
        conds.append((mc[0], mc[1], mi[1]))
    out = []
    for g1, a, c1 in conds:
        for g2, b, c2 in conds:
            if g1 == g2 and c1 == c2:
                out.append(implies(conj(g1, disj(a, b)), rho, c1))
    return out


@_register(programs.RULE_ELIM_CASE)
def _elim_case(ctx, caps, h, rho, m):
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        md = match_disj(item)
        if md is not None and strong_neg(md[0]) in h_set:
            out.append(md[1])
    return out


@_register(programs.RULE_DOUBLE_NEG)
def _double_neg(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        if is_statement(item):
            x = strong_neg(strong_neg(item))
            if x.size <= m:
                out.append(x)
        inner = match_sneg(item)
        if inner is not None:
            inner2 = match_sneg(inner)
            if inner2 is not None:
                out.append(inner2)
    return out


@_register(programs.RULE_STRONG_DEMORGAN)
def _strong_demorgan(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        inner = match_sneg(item)
        if inner is not None:
            md = match_disj(inner)
            if md is not None:
                out.append(conj(strong_neg(md[0]), strong_neg(md[1])))
            mc = match_conj(inner)
            if mc is not None:
                out.append(disj(strong_neg(mc[0]), strong_neg(mc[1])))
        mc = match_conj(item)
        if mc is not None:
            x = match_sneg(mc[0])
            y = match_sneg(mc[1])
            if x is not None and y is not None:
                out.append(strong_neg(disj(x, y)))
        md = match_disj(item)
        if md is not None:
            x = match_sneg(md[0])
            y = match_sneg(md[1])
            if x is not None and y is not None:
                out.append(strong_neg(conj(x, y)))
    return out


# -- extension rules ----------------------------------------------------------

@_register(programs.RULE_BETA_CURRY)
def _beta_curry(ctx, caps, h, rho, m):
    curry_alg = Alg(programs.CURRY)
    out = []
    for item in h:
        yield WORK
        if not is_statement(item):
            continue
        head, inp, v = item.items
        # forward: [CURRY, [alpha, rho], 1]  =>  not-rho [alpha, [alpha, rho], 1]
        if head == curry_alg and v == NAT1 and isinstance(inp, Lst) and len(inp.items) == 2:
            alpha, embedded = inp.items
            if isinstance(alpha, Alg) and embedded == rho:
                out.append(neg(rho, Lst((alpha, Lst((alpha, rho)), NAT1))))
        # converse: not-rho [alpha, [alpha, rho], 1]  =>  [CURRY, [alpha, rho], 1]
        negged = match_neg(item, rho)
        if negged is not None:
            a_head, a_inp, a_v = negged.items
            if (
                a_v == NAT1
                and isinstance(a_inp, Lst)
                and len(a_inp.items) == 2
                and a_inp.items[0] == a_head
                and a_inp.items[1] == rho
            ):
                out.append(Lst((curry_alg, Lst((a_head, rho)), NAT1)))
    return out


@_register(programs.RULE_MP_FIXED)
def _mp_fixed(ctx, caps, h, rho, m):
    if len(caps) != 1:
        return []
    fixed = caps[0]
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        mi = match_implies(item, fixed)
        if mi is not None and mi[0] in h_set:
            out.append(mi[1])
    return out


@_register(programs.RULE_DENY)
def _deny(ctx, caps, h, rho, m):
    yield WORK
    if len(caps) == 1 and caps[0] in set(h):
        return [F_STMT]
    return []


@_register(programs.RULE_CONJ_CONTRA)
def _conj_contra(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        mc = match_conj(item)
        if mc is not None and match_sneg(mc[1]) == mc[0]:
            out.append(F_STMT)
    return out


@_register(programs.RULE_R_INTRO)
def _r_intro(ctx, caps, h, rho, m):
    witness = Alg(programs.R_WITNESS)
    r_stmt = Lst((witness, Lst((witness, rho)), NAT1))
    out = []
    for item in h:
        yield WORK
        if item == r_stmt:
            out.append(implies(r_stmt, rho, prove(rho, F_STMT)))
    return out


# -- paradoxical rules ---------------------------------------------------------

@_register(programs.RULE_P1)
def _p1(ctx, caps, h, rho, m):
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        a = match_neg(item, rho)
        if a is not None and a in h_set:
            out.append(F_STMT)
    return out


@_register(programs.RULE_P2)
def _p2(ctx, caps, h, rho, m):
    mach = ctx.machine
    h_set = set(h)
    fires = False
    for item in h:
        yield WORK
        a = match_neg(item, rho)
        if a is not None and a in h_set:
            fires = True
    out = []
    if fires:
        for x in enumerate_statements(mach.universe, m, mach.enum_cap):
            yield WORK
            out.append(x)
    return out


@_register(programs.RULE_P3)
def _p3(ctx, caps, h, rho, m):
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is not None and mi[0] in h_set:
            out.append(mi[1])
    return out


@_register(programs.RULE_P4)
def _p4(ctx, caps, h, rho, m):
    h_set = set(h)
    imps = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is not None:
            imps.append(mi)
    out = []
    for a, c1 in imps:
        for b, c2 in imps:
            if c1 == c2 and disj(a, b) in h_set:
                out.append(c1)
    return out


@_register(programs.RULE_P5)
def _p5(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        inner = match_neg(item, rho)
        if inner is None:
            continue
        a = match_neg(inner, rho)
        if a is not None:
            out.append(a)
    return out


@_register(programs.RULE_P6)
def _p6(ctx, caps, h, rho, m):
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        md = match_disj(item)
        if md is not None and neg(rho, md[0]) in h_set:
            out.append(md[1])
    return out


@_register(programs.RULE_P7)
def _p7(ctx, caps, h, rho, m):
    h_set = set(h)
    out = []
    for item in h:
        yield WORK
        md = match_disj(item)
        if md is None:
            continue
        a = match_neg(md[0], rho)
        if a is not None and a in h_set:
            out.append(md[1])
    return out


@_register(programs.RULE_P8)
def _p8(ctx, caps, h, rho, m):
    mach = ctx.machine
    out = []
    bound = (m - 19 - rho.size) // 2
    if bound >= 5:
        for a in enumerate_statements(mach.universe, bound, mach.enum_cap):
            yield WORK
            x = disj(a, neg(rho, a))
            if x.size <= m:
                out.append(x)
    return out


@_register(programs.RULE_P9)
def _p9(ctx, caps, h, rho, m):
    mach = ctx.machine
    out = []
    bound = (m - 45 - 3 * rho.size) // 2
    if bound >= 5:
        for a in enumerate_statements(mach.universe, bound, mach.enum_cap):
            yield WORK
            na = neg(rho, a)
            x = disj(na, neg(rho, na))
            if x.size <= m:
                out.append(x)
    return out


@_register(programs.RULE_P10)
def _p10(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        mi = match_implies(item, rho)
        if mi is not None:
            out.append(disj(neg(rho, mi[0]), mi[1]))
    return out


@_register(programs.RULE_P11)
def _p11(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        inner = match_neg(item, rho)
        if inner is None:
            continue
        mc = match_conj(inner)
        if mc is not None:
            out.append(disj(neg(rho, mc[0]), neg(rho, mc[1])))
    return out


@_register(programs.RULE_P12)
def _p12(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        if is_statement(item):
            out.append(neg(rho, neg(rho, item)))
    return out


@_register(programs.RULE_P13)
def _p13(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        pr = match_prove(item, rho)
        if pr is not None:
            out.append(pr)
    return out


@_register(programs.RULE_P14)
def _p14(ctx, caps, h, rho, m):
    out = []
    for item in h:
        yield WORK
        pr = match_prove(item, rho)
        if pr is not None and match_prove(pr, rho) is not None:
            out.append(pr)
    return out


# -- host-level application -----------------------------------------------------

def apply_rule(
    rule: str | Alg,
    h: list[Datum],
    rho: Datum,
    m: int,
    fuel: int = 200_000,
    machine: Optional[Machine] = None,
) -> list[Datum]:
    """Run a rule program on [H, rho, m]; returns the full conclusion list.

    Raises RuleFuelError when fuel runs out: no partial answers.
    """
    alg = rule if isinstance(rule, Alg) else rule_alg(rule)
    mach = machine if machine is not None else default_machine()
    arg = Lst((Lst(tuple(h)), rho, Nat(m)))
    result = mach.run(Process(alg, arg), fuel)
    if isinstance(result, OutOfFuel):
        raise RuleFuelError(f"rule {alg.prog} exhausted fuel {fuel} on |H|={len(h)}, m={m}")
    out = result.output
    if not isinstance(out, Lst):
        raise AssertionError(f"rule {alg.prog} returned a non-list: {out!r}")
    return list(out.items)
