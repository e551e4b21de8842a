"""Datum universe: naturals, lists, and algorithm values.

Every machine value is a Datum.  Sizes obey two axioms: every datum has a
positive size, and a list is strictly larger than the sum of its items.  The
concrete measure used here:

    size(Nat n)          = n + 1
    size(Lst items)      = 1 + sum of item sizes
    size(Alg prog, caps) = 2 + sum of capture sizes

which keeps statement encodings small and per-size datum sets finite and
enumerable.  Canonical ordering is size-major, then variant tag
(Nat < Lst < Alg), then componentwise; it exists only to make enumeration
output reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from . import programs


class EnumerationLimitError(Exception):
    """Raised when a bounded enumeration would exceed its configured cap."""


class Datum:
    __slots__ = ("size", "_key", "_hash")

    size: int

    def _compute_key(self):
        raise NotImplementedError

    @property
    def key(self):
        k = self._key
        if k is None:
            k = self._key = self._compute_key()
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Datum):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.key)
        return h

    def __lt__(self, other):
        return self.key < other.key


class Nat(Datum):
    __slots__ = ("value",)

    def __init__(self, value: int):
        if value < 0:
            raise ValueError("naturals are non-negative")
        self.value = value
        self.size = value + 1
        self._key = None
        self._hash = None

    def _compute_key(self):
        return (self.size, 0, self.value)

    def __repr__(self):
        return f"Nat({self.value})"


class Lst(Datum):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Datum] = ()):
        items = tuple(items)
        for it in items:
            if not isinstance(it, Datum):
                raise TypeError(f"list items must be data, got {it!r}")
        self.items = items
        self.size = 1 + sum(it.size for it in items)
        self._key = None
        self._hash = None

    def _compute_key(self):
        return (self.size, 1, tuple(it.key for it in self.items))

    def __repr__(self):
        return f"Lst({list(self.items)!r})"


class Alg(Datum):
    __slots__ = ("prog", "captures")

    def __init__(self, prog: str, captures: Iterable[Datum] = ()):
        if not programs.is_registered(prog):
            raise ValueError(f"unknown program: {prog}")
        captures = tuple(captures)
        for c in captures:
            if not isinstance(c, Datum):
                raise TypeError(f"captures must be data, got {c!r}")
        self.prog = prog
        self.captures = captures
        self.size = 2 + sum(c.size for c in captures)
        self._key = None
        self._hash = None

    def _compute_key(self):
        return (
            self.size,
            2,
            programs.REGISTRY_INDEX[self.prog],
            tuple(c.key for c in self.captures),
        )

    def __repr__(self):
        if self.captures:
            return f"Alg({self.prog}, {list(self.captures)!r})"
        return f"Alg({self.prog})"


NAT0 = Nat(0)
NAT1 = Nat(1)


def nat(n: int) -> Nat:
    return Nat(n)


def lst(*items: Datum) -> Lst:
    return Lst(items)


def alg(prog: str, *captures: Datum) -> Alg:
    return Alg(prog, captures)


def size(d: Datum) -> int:
    return d.size


def canonical_key(d: Datum):
    return d.key


def canonical_compare(a: Datum, b: Datum) -> int:
    """Strict total order; returns -1, 0, or 1."""
    ka, kb = a.key, b.key
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def is_statement(d: Datum) -> bool:
    """A statement is a 3-list [alpha, u, v] whose head is an algorithm."""
    return isinstance(d, Lst) and len(d.items) == 3 and isinstance(d.items[0], Alg)


def programs_of(d: Datum) -> frozenset[str]:
    """All program names mentioned anywhere inside a datum."""
    out: set[str] = set()
    stack = [d]
    while stack:
        x = stack.pop()
        if isinstance(x, Lst):
            stack.extend(x.items)
        elif isinstance(x, Alg):
            out.add(x.prog)
            stack.extend(x.captures)
    return frozenset(out)


@dataclass(frozen=True)
class Universe:
    """The program alphabet enumeration-based rules range over.

    The full registry is the default; reduced universes keep enumeration
    tractable for desk-scale runs of the Universal and introduction rules.
    """

    progs: frozenset[str] = field(default_factory=lambda: frozenset(programs.REGISTRY))

    def __post_init__(self):
        unknown = self.progs - set(programs.REGISTRY)
        if unknown:
            raise ValueError(f"unknown programs in universe: {sorted(unknown)}")

    @property
    def sorted_progs(self) -> tuple[str, ...]:
        return tuple(sorted(self.progs, key=programs.REGISTRY_INDEX.__getitem__))

    def contains_datum(self, d: Datum) -> bool:
        return programs_of(d) <= self.progs


def universe(*progs: str) -> Universe:
    return Universe(frozenset(progs))


FULL_UNIVERSE = Universe()

DEFAULT_ENUM_CAP = 500_000


# Counting layer: cheap DP over sizes so caps can be enforced before any
# exponential materialization happens.

@lru_cache(maxsize=None)
def _count_of_size(progs: tuple[str, ...], s: int) -> int:
    if s < 1:
        return 0
    n = 1  # Nat(s - 1)
    n += _count_tuples(progs, s - 1)
    if s >= 2:
        n += len(progs) * _count_tuples(progs, s - 2)
    return n


@lru_cache(maxsize=None)
def _count_tuples(progs: tuple[str, ...], total: int) -> int:
    if total == 0:
        return 1
    n = 0
    for first in range(1, total + 1):
        n += _count_of_size(progs, first) * _count_tuples(progs, total - first)
    return n


def count_data(u: Universe, exact_size: int) -> int:
    """How many data of exactly this size exist over u (no materialization)."""
    return _count_of_size(u.sorted_progs, exact_size)


@lru_cache(maxsize=None)
def _data_of_size(progs: tuple[str, ...], s: int) -> tuple[Datum, ...]:
    """All data of exactly size s over the given programs, canonically sorted."""
    out: list[Datum] = [Nat(s - 1)]
    for items in _tuples_totalling(progs, s - 1):
        out.append(Lst(items))
    if s >= 2:
        for p in progs:
            for caps in _tuples_totalling(progs, s - 2):
                out.append(Alg(p, caps))
    out.sort(key=canonical_key)
    return tuple(out)


@lru_cache(maxsize=None)
def _tuples_totalling(progs: tuple[str, ...], total: int) -> tuple[tuple[Datum, ...], ...]:
    if total == 0:
        return ((),)
    out: list[tuple[Datum, ...]] = []
    for first_size in range(1, total + 1):
        for head in _data_of_size(progs, first_size):
            for rest in _tuples_totalling(progs, total - first_size):
                out.append((head,) + rest)
    return tuple(out)


def enumerate_data(u: Universe, max_size: int, cap: int = DEFAULT_ENUM_CAP) -> list[Datum]:
    """All data of size <= max_size over u, in canonical order, no duplicates.

    Raises EnumerationLimitError when the result would exceed cap: the caller
    picked an infeasible bound, not a recoverable fuel shortage.
    """
    if max_size < 1:
        raise ValueError("max_size must be positive")
    progs = u.sorted_progs
    total = 0
    for s in range(1, max_size + 1):
        total += _count_of_size(progs, s)
        if total > cap:
            raise EnumerationLimitError(
                f"enumeration of data up to size {max_size} has {total}+ entries, cap {cap}"
            )
    out: list[Datum] = []
    for s in range(1, max_size + 1):
        out.extend(_data_of_size(progs, s))
    return out


def count_statements(u: Universe, max_size: int) -> int:
    """How many statement-shaped data of size <= max_size exist over u."""
    if max_size < 5:
        return 0
    progs = u.sorted_progs
    total = 0
    for s_alpha in range(2, max_size - 2):
        n_alg = len(progs) * _count_tuples(progs, s_alpha - 2)
        if not n_alg:
            continue
        budget = max_size - 1 - s_alpha  # for s_u + s_v
        for s_u in range(1, budget):
            n_u = _count_of_size(progs, s_u)
            for s_v in range(1, budget - s_u + 1):
                total += n_alg * n_u * _count_of_size(progs, s_v)
    return total


@lru_cache(maxsize=None)
def _statements_up_to(progs: tuple[str, ...], max_size: int) -> tuple[Datum, ...]:
    out: list[Datum] = []
    # [alpha, u, v]: 1 + size(alpha) + size(u) + size(v) <= max_size
    for s_alpha in range(2, max_size - 2):
        algs = [d for d in _data_of_size(progs, s_alpha) if isinstance(d, Alg)]
        if not algs:
            continue
        budget = max_size - 1 - s_alpha
        for s_u in range(1, budget):
            us = _data_of_size(progs, s_u)
            for s_v in range(1, budget - s_u + 1):
                vs = _data_of_size(progs, s_v)
                for a in algs:
                    for uu in us:
                        for vv in vs:
                            out.append(Lst((a, uu, vv)))
    out.sort(key=canonical_key)
    return tuple(out)


def enumerate_statements(u: Universe, max_size: int, cap: int = DEFAULT_ENUM_CAP) -> tuple[Datum, ...]:
    """All statement-shaped data of size <= max_size over u, canonical order."""
    if max_size < 5:
        return ()
    if count_statements(u, max_size) > cap:
        raise EnumerationLimitError(
            f"statement enumeration up to size {max_size} exceeds cap {cap}"
        )
    return _statements_up_to(u.sorted_progs, max_size)
