"""Enumeration of nests (labeled forests) on {1..n} and their weight sums.

A nest is a family of subsets of {1..n} that contains every singleton and
in which no two members partially overlap, i.e. any two members are either
disjoint or nested.  Such a family is exactly a forest: the leaves are the
singletons, every internal node is the union of its sons, and every
internal node has at least two sons.

Each nest carries two statistics: the number of connected components
(maximal members) and, for every internal node, its number of sons.  The
weight polynomial of a nest in ambient dimension ``d`` is the product over
internal nodes I of ``x + x^2 + ... + x^(d*(sons(I)-1)-1)``; the empty
product is 1.  Summing weight polynomials over all nests grouped by
component count gives the brute-force side of the decomposition checks.

Enumeration is recursive over forests (partition into components, then
partition each root into sons), so the cost is proportional to the number
of nests rather than to the number of candidate subset families.  Output
order is canonical: members are sorted label tuples and nests are compared
as sorted member sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .genfun import sigma
from .polyseries import ONE, IntPoly

#: Hard cap on the label count for exhaustive enumeration; the number of
#: nests grows super-exponentially (n=7 already has 78416).
NEST_BUDGET = 7


class BudgetError(ValueError):
    """Raised when an enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class Nest:
    """A nest on ``{1..n}``; members are sorted tuples, sorted as a sequence."""

    n: int
    members: tuple[tuple[int, ...], ...]

    @classmethod
    def from_family(cls, n: int, family: Iterable[Iterable[int]]) -> "Nest":
        """Canonicalize and validate a raw family of label sets."""
        members = canonical_members(family)
        if not is_nest(n, members):
            raise ValueError("family is not a nest")
        return cls(n=n, members=members)

    @property
    def internal(self) -> tuple[tuple[int, ...], ...]:
        """Members that are not singletons (the internal forest nodes)."""
        return tuple(m for m in self.members if len(m) > 1)

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, m)) + "}" for m in self.members)


@dataclass(frozen=True)
class NestStats:
    """Component count and per-internal-node son counts of a nest."""

    components: int
    sons: dict[tuple[int, ...], int]


def canonical_members(family: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    """Sorted tuple-of-tuples form of a family of label sets."""
    return tuple(sorted(tuple(sorted(set(member))) for member in set(
        frozenset(m) for m in family)))


def is_nest(n: int, family: Iterable[Iterable[int]]) -> bool:
    """True iff the family contains all singletons and no overlapped pair.

    Members must be drawn from ``{1..n}``; the empty set is never a valid
    member.
    """
    if n < 1:
        raise ValueError("label count must be >= 1")
    sets = [frozenset(m) for m in family]
    for member in sets:
        if not member:
            return False
        if not member <= frozenset(range(1, n + 1)):
            raise ValueError("member labels outside 1..n")
    present = set(sets)
    for label in range(1, n + 1):
        if frozenset((label,)) not in present:
            return False
    distinct = sorted(present, key=len)
    for a, b in itertools.combinations(distinct, 2):
        inter = a & b
        if inter and inter != a and inter != b:
            return False
    return True


def _set_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    # Blocks keep their elements sorted because items are consumed in order
    # and each new element is prepended only when it is the smallest left.
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1 :]
        yield ((first,),) + part


def _trees(block: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    # All sets of internal members for a tree rooted at `block` (len >= 2);
    # the root itself is always included.
    for part in _set_partitions(block):
        if len(part) < 2:
            continue
        subgens = [_trees(b) for b in part if len(b) >= 2]
        for combo in itertools.product(*subgens):
            yield (block,) + tuple(itertools.chain.from_iterable(combo))


def enumerate_nests(n: int, allow_large: bool = False) -> list[Nest]:
    """Every nest on ``{1..n}`` exactly once, in canonical order.

    Enumeration beyond ``NEST_BUDGET`` labels must be requested explicitly
    via ``allow_large``.
    """
    if n < 1:
        raise ValueError("label count must be >= 1")
    if n > NEST_BUDGET and not allow_large:
        raise BudgetError(
            f"enumeration budget exceeded: n={n} > {NEST_BUDGET} (override to proceed)"
        )
    labels = tuple(range(1, n + 1))
    singletons = tuple((label,) for label in labels)
    nests = []
    for part in _set_partitions(labels):
        subgens = [_trees(b) for b in part if len(b) >= 2]
        for combo in itertools.product(*subgens):
            internal = tuple(itertools.chain.from_iterable(combo))
            members = tuple(sorted(singletons + internal))
            nests.append(Nest(n=n, members=members))
    nests.sort(key=lambda s: s.members)
    return nests


def nest_stats(nest: Nest) -> NestStats:
    """Component count and son counts; sons include singleton children."""
    members = [frozenset(m) for m in nest.members]
    component_count = 0
    for member in members:
        if not any(member < other for other in members):
            component_count += 1
    sons: dict[tuple[int, ...], int] = {}
    for member, key in zip(members, nest.members):
        if len(member) == 1:
            continue
        below = [other for other in members if other < member]
        count = sum(
            1 for child in below if not any(child < mid for mid in below)
        )
        sons[key] = count
    return NestStats(components=component_count, sons=sons)


def nest_weight(nest: Nest, d: int) -> IntPoly:
    """Weight polynomial: product over internal nodes of sigma(sons-1, d)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    stats = nest_stats(nest)
    weight = ONE
    for count in stats.sons.values():
        weight = weight * sigma(count - 1, d)
        if weight.is_zero:
            return weight
    return weight


def brute_bivariate(n: int, d: int, allow_large: bool = False) -> dict[int, IntPoly]:
    """Sum of nest weights grouped by component count.

    The result maps each occurring component count m to
    ``sum(weight(S) for nests S with c(S) = m)``; zero sums are dropped.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    totals: dict[int, IntPoly] = {}
    for nest in enumerate_nests(n, allow_large=allow_large):
        stats = nest_stats(nest)
        weight = nest_weight(nest, d)
        if weight.is_zero:
            continue
        m = stats.components
        totals[m] = totals.get(m, IntPoly()) + weight
    return {m: p for m, p in sorted(totals.items()) if not p.is_zero}
