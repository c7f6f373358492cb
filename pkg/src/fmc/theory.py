"""Graded group data and evaluation of the decomposition formulas.

The decomposition of the configuration-space compactification X[n] is the
same index bookkeeping for every theory involved: a formal sum of terms
(m, i, mult) meaning "mult copies of the m-th cartesian power, shifted by
i".  What differs per theory is how a shift acts on indices and how
out-of-range indices are read:

* cycle-space homology ("lawson"), bigraded by (level p, degree k):
  a shift i sends (p, k) to (p-i, k-2i); negative degree reads the zero
  group and a negative level is read at level 0 by convention;
* algebraic cycle classes ("chow"), graded by p alone: a shift i sends
  p to p-i and negative p reads the zero group;
* Deligne-Beilinson cohomology ("db"), bigraded by (degree k, level p):
  shifts act as for "lawson", negative degree reads zero, but a negative
  level is never guessed: it is kept as an unevaluated formal term;
* Betti data ("betti"), a Poincare polynomial: a shift multiplies by q^2i
  and powers are taken with rational coefficients.

Groups are finitely generated abelian: a free rank plus cyclic torsion
orders, with an escape hatch of unevaluated formal terms for data the
tables cannot know (cycle-space homology groups need not be finitely
generated in general, and no integral product formula is assumed: tables
for cartesian powers must be supplied, or derived by the projective-bundle
formula when the factors are projective spaces).

The single blowup formula reads: the value on the blowup of X along a
center Y of codimension r is the value on X plus the values on Y at the
shifted indices j = 1..r-1.  The projective-bundle formula for a bundle
with r-dimensional fibers-plus-one (rank parameter r) sums shifts
j = 0..r-1 over the base.  Both are applied here at every index pair;
formulations of the Deligne-Beilinson blowup sometimes carry the extra
hypothesis level >= codimension, which callers needing it must enforce
themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .genfun import multiplicity_table
from .polyseries import IntPoly, ZERO, monomial

KINDS = ("lawson", "chow", "db", "betti")


@dataclass(frozen=True)
class GroupDescriptor:
    """A finitely generated abelian group, plus optional formal summands.

    ``free_rank`` copies of Z, a cyclic summand Z/t for each torsion order
    t, and a list of named but unevaluated direct summands.  The zero group
    is ``GroupDescriptor()``.  Direct sums concatenate all three parts;
    torsion orders and formal names are kept sorted so the sum is
    commutative and associative on the nose.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    formal: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(sorted(int(t) for t in self.torsion)))
        object.__setattr__(self, "formal", tuple(sorted(self.formal)))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion orders must be >= 2")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion and not self.formal

    @property
    def is_formal(self) -> bool:
        return bool(self.formal)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        parts.extend(self.formal)
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = GroupDescriptor()
Z_GROUP = GroupDescriptor(free_rank=1)


def direct_sum(*groups: GroupDescriptor) -> GroupDescriptor:
    """Direct sum of descriptors (order-independent canonical form)."""
    rank = 0
    torsion: list[int] = []
    formal: list[str] = []
    for g in groups:
        rank += g.free_rank
        torsion.extend(g.torsion)
        formal.extend(g.formal)
    return GroupDescriptor(free_rank=rank, torsion=tuple(torsion), formal=tuple(formal))


@dataclass(frozen=True)
class GradedTable:
    """Map from index pairs (p, k) to groups; absent entries are zero.

    Entries with k < 0 are rejected at construction: negative degrees are
    zero by convention and may not be stored.  For "chow" data the degree
    slot is conventionally 0.
    """

    groups: dict[tuple[int, int], GroupDescriptor]

    def __post_init__(self) -> None:
        cleaned = {}
        for (p, k), g in self.groups.items():
            if k < 0:
                raise ValueError("graded table may not store entries with k < 0")
            if not g.is_zero:
                cleaned[(int(p), int(k))] = g
        object.__setattr__(self, "groups", cleaned)

    def lookup(self, p: int, k: int) -> GroupDescriptor:
        if k < 0:
            return ZERO_GROUP
        return self.groups.get((p, k), ZERO_GROUP)


@dataclass(frozen=True)
class SpaceDescriptor:
    """A named space with dimension, theory kind, and graded data.

    ``betti`` holds a Poincare polynomial for kind "betti"; table kinds
    store graded tables for the cartesian powers in ``powers`` (the space
    itself is power 1).
    """

    name: str
    dim: int
    kind: str
    betti: IntPoly | None = None
    powers: dict[int, GradedTable] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")


@dataclass(frozen=True)
class FormalDecomposition:
    """Formal right-hand side of the decomposition: (m, shift, mult) terms.

    Terms are canonical: m descending, shift ascending, multiplicities
    positive, one term per (m, shift).
    """

    n: int
    d: int
    terms: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_term_list(
        cls, n: int, d: int, terms: Iterable[tuple[int, int, int]]
    ) -> "FormalDecomposition":
        """Aggregate duplicate (m, shift) pairs and sort canonically."""
        totals: dict[tuple[int, int], int] = {}
        for m, shift, mult in terms:
            if not 1 <= m <= n:
                raise ValueError(f"power {m} outside 1..{n}")
            if shift < 0:
                raise ValueError("negative shift")
            totals[(m, shift)] = totals.get((m, shift), 0) + mult
        if any(v < 0 for v in totals.values()):
            raise ValueError("negative multiplicity")
        ordered = sorted(
            ((m, i, a) for (m, i), a in totals.items() if a),
            key=lambda t: (-t[0], t[1]),
        )
        return cls(n=n, d=d, terms=tuple(ordered))


def decompose_formal(n: int, d: int) -> FormalDecomposition:
    """The decomposition of X[n] as a formal sum of shifted powers."""
    table = multiplicity_table(n, d)
    return FormalDecomposition(n=n, d=d, terms=tuple(table.terms()))


def format_group_term(kind: str, m: int, p: int | None = None, k: int | None = None) -> str:
    """Printable name of one indexed group of the m-th power."""
    power = "X" if m == 1 else f"X^{m}"
    if kind == "lawson":
        return f"L_{p}H_{k}({power})"
    if kind == "chow":
        return f"Ch_{p}({power})"
    if kind == "db":
        return f"H^{k}_D({power}, Z({p}))"
    if kind == "betti":
        return f"H_{k}({power})"
    raise ValueError(f"unknown kind {kind!r}")


def term_group_name(
    kind: str, m: int, shift: int, p: int | None = None, k: int | None = None
) -> str:
    """Name of a term's group at an outer index, conventions applied.

    Returns "0" for terms that contribute the zero group at this index.
    """
    if kind == "lawson":
        kk = k - 2 * shift
        if kk < 0:
            return "0"
        return format_group_term(kind, m, max(p - shift, 0), kk)
    if kind == "chow":
        pp = p - shift
        if pp < 0:
            return "0"
        return format_group_term(kind, m, pp)
    if kind == "db":
        kk = k - 2 * shift
        if kk < 0:
            return "0"
        return format_group_term(kind, m, p - shift, kk)
    if kind == "betti":
        kk = k - 2 * shift
        if kk < 0:
            return "0"
        return format_group_term(kind, m, k=kk)
    raise ValueError(f"unknown kind {kind!r}")


def _require_index(kind: str, p: int | None, k: int | None) -> None:
    if kind == "chow":
        if p is None:
            raise ValueError("chow evaluation needs the level index p")
        if p < 0:
            raise ValueError("invalid outer index: p must be >= 0")
    elif kind == "betti":
        if k is None:
            raise ValueError("betti evaluation needs the degree index k")
    else:
        if p is None or k is None:
            raise ValueError(f"{kind} evaluation needs both indices p and k")
        if kind == "lawson" and not k >= 2 * p >= 0:
            raise ValueError("invalid outer index: lawson needs k >= 2p >= 0")


def formal_evaluation(
    dec: FormalDecomposition, kind: str, p: int | None = None, k: int | None = None
) -> GroupDescriptor:
    """Evaluate a decomposition into named formal summands only."""
    _require_index(kind, p, k)
    names: list[str] = []
    for m, shift, mult in dec.terms:
        name = term_group_name(kind, m, shift, p, k)
        if name != "0":
            names.extend([name] * mult)
    return GroupDescriptor(formal=tuple(names))


def evaluate_decomposition(
    dec: FormalDecomposition,
    space: SpaceDescriptor,
    p: int | None = None,
    k: int | None = None,
) -> GroupDescriptor:
    """Direct sum over the decomposition terms of the space's graded data.

    Table kinds need a table for every power appearing in the terms; the
    Betti kind derives powers of the Poincare polynomial instead.
    """
    if space.dim != dec.d:
        raise ValueError(
            f"space dimension {space.dim} does not match decomposition d={dec.d}"
        )
    kind = space.kind
    _require_index(kind, p, k)
    if kind == "betti":
        if space.betti is None:
            raise ValueError(f"space {space.name!r} has no Betti polynomial")
        rank = 0
        for m, shift, mult in dec.terms:
            kk = k - 2 * shift
            if kk < 0:
                continue
            rank += mult * (space.betti ** m).coefficient(kk)
        return GroupDescriptor(free_rank=rank)
    parts: list[GroupDescriptor] = []
    for m, shift, mult in dec.terms:
        table = space.powers.get(m)
        if table is None:
            raise ValueError(f"space {space.name!r} has no table for power X^{m}")
        if kind == "lawson":
            kk = k - 2 * shift
            if kk < 0:
                continue
            g = table.lookup(max(p - shift, 0), kk)
        elif kind == "chow":
            pp = p - shift
            if pp < 0:
                continue
            g = table.lookup(pp, 0)
        else:  # db
            kk = k - 2 * shift
            if kk < 0:
                continue
            pp = p - shift
            if pp < 0:
                g = GroupDescriptor(formal=(format_group_term("db", m, pp, kk),))
            else:
                g = table.lookup(pp, kk)
        parts.extend([g] * mult)
    return direct_sum(*parts)


def _table_value(table: GradedTable, p: int, k: int, kind: str) -> GroupDescriptor:
    # Shared read conventions for the blowup and bundle formulas.
    if k < 0:
        return ZERO_GROUP
    if p < 0:
        if kind == "lawson":
            p = 0
        elif kind == "chow":
            return ZERO_GROUP
        else:
            raise ValueError("negative level read on Deligne-Beilinson data")
    return table.lookup(p, k)


def _shifted_index(p: int, k: int, j: int, kind: str) -> tuple[int, int]:
    # A shift by j lowers the level by j; theories with a degree index also
    # lower the degree by 2j, while "chow" has no degree slot to move.
    if kind == "chow":
        return p - j, k
    return p - j, k - 2 * j


def blowup_formula(
    x: GradedTable,
    y: GradedTable,
    r: int,
    p: int,
    k: int = 0,
    kind: str = "lawson",
) -> GroupDescriptor:
    """Value on the blowup of X along a codimension-r center Y.

    ``x`` is the table of X, ``y`` the table of Y; the result is
    ``x(p, k) + sum_{j=1..r-1} y(p-j, k-2j)``.
    """
    if r < 1:
        raise ValueError("codimension must be >= 1")
    parts = [_table_value(x, p, k, kind)]
    for j in range(1, r):
        parts.append(_table_value(y, *_shifted_index(p, k, j, kind), kind))
    return direct_sum(*parts)


def proj_bundle_formula(
    y: GradedTable, r: int, p: int, k: int = 0, kind: str = "lawson"
) -> GroupDescriptor:
    """Value on a projective bundle over Y with rank parameter r.

    The result is ``sum_{j=0..r-1} y(p-j, k-2j)``.
    """
    if r < 1:
        raise ValueError("rank parameter must be >= 1")
    parts = [
        _table_value(y, *_shifted_index(p, k, j, kind), kind) for j in range(r)
    ]
    return direct_sum(*parts)


def kunneth_rational(betti_x: IntPoly, m: int) -> IntPoly:
    """Poincare polynomial of the m-th cartesian power (rational ranks)."""
    if m < 1:
        raise ValueError("power must be >= 1")
    return betti_x ** m


def betti_of_fm(betti_x: IntPoly, d: int, n: int) -> IntPoly:
    """Poincare polynomial of X[n] from the Poincare polynomial of X."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if betti_x.degree > 2 * d:
        raise ValueError("Betti polynomial degree exceeds 2*dim")
    total = ZERO
    for m, shift, mult in decompose_formal(n, d).terms:
        total = total + monomial(2 * shift, mult) * (betti_x ** m)
    return total


# ---------------------------------------------------------------------------
# Built-in sample spaces
# ---------------------------------------------------------------------------

POINT_TABLE_LAWSON = GradedTable({(0, 0): Z_GROUP})
POINT_TABLE_CHOW = GradedTable({(0, 0): Z_GROUP})

_BUILTIN_DIMS = {
    "point": 0,
    "pt": 0,
    "projective-line": 1,
    "p1": 1,
    "projective-plane": 2,
    "p2": 2,
}

_BUILTIN_CANONICAL = {
    0: "point",
    1: "projective-line",
    2: "projective-plane",
}


def proj_bundle_table(y: GradedTable, r: int, total_dim: int, kind: str) -> GradedTable:
    """Full graded table of a projective bundle over a tabulated base."""
    if r < 1:
        raise ValueError("rank parameter must be >= 1")
    groups: dict[tuple[int, int], GroupDescriptor] = {}
    degrees = (0,) if kind == "chow" else tuple(range(0, 2 * total_dim + 1))
    for p in range(0, total_dim + 1):
        for k in degrees:
            g = proj_bundle_formula(y, r, p, k, kind)
            if not g.is_zero:
                groups[(p, k)] = g
    return GradedTable(groups)


def projective_space_table(a: int, kind: str = "lawson") -> GradedTable:
    """Graded table of a-dimensional projective space, built from a point."""
    if a < 0:
        raise ValueError("dimension must be >= 0")
    point = POINT_TABLE_CHOW if kind == "chow" else POINT_TABLE_LAWSON
    if a == 0:
        return point
    return proj_bundle_table(point, a + 1, a, kind)


def projective_space_powers(a: int, kind: str, max_power: int) -> dict[int, GradedTable]:
    """Tables for the powers of projective space via iterated bundles.

    The m-th power is a projective bundle with rank parameter a+1 over the
    (m-1)-st, so no product formula is needed.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    powers = {1: projective_space_table(a, kind)}
    for m in range(2, max_power + 1):
        if a == 0:
            powers[m] = powers[1]
        else:
            powers[m] = proj_bundle_table(powers[m - 1], a + 1, m * a, kind)
    return powers


def builtin_space(name: str, kind: str, max_power: int = 1) -> SpaceDescriptor:
    """One of the built-in sample spaces with data for the requested kind.

    Available names: point, projective-line (p1), projective-plane (p2).
    Lawson and Chow kinds carry tables for powers 1..max_power; the Betti
    kind carries the Poincare polynomial.  No built-in Deligne-Beilinson
    tables ship: supply a descriptor file for that kind.
    """
    key = name.lower()
    if key not in _BUILTIN_DIMS:
        raise ValueError(f"unknown built-in space {name!r}")
    a = _BUILTIN_DIMS[key]
    canonical = _BUILTIN_CANONICAL[a]
    if kind == "betti":
        poly = IntPoly([1 if i % 2 == 0 else 0 for i in range(2 * a + 1)])
        return SpaceDescriptor(name=canonical, dim=a, kind="betti", betti=poly)
    if kind in ("lawson", "chow"):
        powers = projective_space_powers(a, kind, max_power)
        return SpaceDescriptor(name=canonical, dim=a, kind=kind, powers=powers)
    if kind == "db":
        raise ValueError("no built-in Deligne-Beilinson tables; supply a descriptor file")
    raise ValueError(f"unknown kind {kind!r}")


def is_builtin_space(name: str) -> bool:
    return name.lower() in _BUILTIN_DIMS


# ---------------------------------------------------------------------------
# Descriptor files
# ---------------------------------------------------------------------------

_TOP_FIELDS = {"name", "dim", "kind", "betti", "table", "powers"}
_RECORD_FIELDS = {"p", "k", "free_rank", "torsion"}


def _parse_table(records: object, kind: str, where: str) -> GradedTable:
    if not isinstance(records, list):
        raise ValueError(f"{where}: expected a list of records")
    groups: dict[tuple[int, int], GroupDescriptor] = {}
    for idx, record in enumerate(records):
        label = f"{where}[{idx}]"
        if not isinstance(record, dict):
            raise ValueError(f"{label}: expected an object")
        unknown = set(record) - _RECORD_FIELDS
        if unknown:
            raise ValueError(f"{label}: unknown fields {sorted(unknown)}")
        for fld in ("p", "k", "free_rank"):
            if fld not in record:
                raise ValueError(f"{label}: missing field {fld!r}")
            if not isinstance(record[fld], int) or isinstance(record[fld], bool):
                raise ValueError(f"{label}: field {fld!r} must be an integer")
        p, k, rank = record["p"], record["k"], record["free_rank"]
        if k < 0:
            raise ValueError(f"{label}: k < 0 entries are zero and may not be stored")
        if kind == "chow" and k != 0:
            raise ValueError(f"{label}: chow tables use k = 0")
        if rank < 0:
            raise ValueError(f"{label}: free_rank must be nonnegative")
        torsion = record.get("torsion", [])
        if not isinstance(torsion, list) or not all(
            isinstance(t, int) and not isinstance(t, bool) and t >= 2 for t in torsion
        ):
            raise ValueError(f"{label}: torsion must be a list of integers >= 2")
        if (p, k) in groups:
            raise ValueError(f"{label}: duplicate index ({p}, {k})")
        groups[(p, k)] = GroupDescriptor(free_rank=rank, torsion=tuple(torsion))
    return GradedTable(groups)


def parse_space(doc: object) -> SpaceDescriptor:
    """Build a space descriptor from a parsed document, validating strictly."""
    if not isinstance(doc, dict):
        raise ValueError("space descriptor must be a JSON object")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)}")
    for fld in ("name", "dim", "kind"):
        if fld not in doc:
            raise ValueError(f"missing field {fld!r}")
    name, dim, kind = doc["name"], doc["dim"], doc["kind"]
    if not isinstance(name, str):
        raise ValueError("field 'name' must be a string")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError("field 'dim' must be an integer >= 1")
    if kind not in KINDS:
        raise ValueError(f"field 'kind' must be one of {list(KINDS)}")
    if kind == "betti":
        if "table" in doc or "powers" in doc:
            raise ValueError("betti descriptors carry no tables")
        coeffs = doc.get("betti")
        if not isinstance(coeffs, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coeffs
        ):
            raise ValueError("field 'betti' must be a list of integers")
        if any(c < 0 for c in coeffs):
            raise ValueError("Betti coefficients must be nonnegative")
        poly = IntPoly(coeffs)
        if poly.degree > 2 * dim:
            raise ValueError("Betti polynomial degree exceeds 2*dim")
        return SpaceDescriptor(name=name, dim=dim, kind="betti", betti=poly)
    if "betti" in doc:
        raise ValueError(f"{kind} descriptors carry a 'table', not 'betti'")
    if "table" not in doc:
        raise ValueError("missing field 'table'")
    powers = {1: _parse_table(doc["table"], kind, "table")}
    raw_powers = doc.get("powers", {})
    if not isinstance(raw_powers, dict):
        raise ValueError("field 'powers' must be an object")
    for key, records in raw_powers.items():
        try:
            m = int(key)
        except (TypeError, ValueError):
            raise ValueError(f"powers key {key!r} is not an integer") from None
        if m < 2:
            raise ValueError("powers keys must be >= 2 (power 1 is 'table')")
        powers[m] = _parse_table(records, kind, f"powers[{key}]")
    return SpaceDescriptor(name=name, dim=dim, kind=kind, powers=powers)


def load_space(path: str) -> SpaceDescriptor:
    """Read and validate a space descriptor file (JSON)."""
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    return parse_space(doc)
