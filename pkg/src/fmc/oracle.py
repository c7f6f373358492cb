"""Independent cross-checks for the decomposition machinery.

Three unrelated computation routes must agree wherever they meet:

* the exhaustive nest enumeration against the generating-function table;
* the partition recurrence against the order-by-order identity solver;
* the explicit blowup constructions of X[2] and X[3] against the nest
  formula (X[2] is one blowup of the square along the diagonal; X[3] blows
  up the cube along the small diagonal, codimension 2d, then along three
  disjoint centers isomorphic to X[2], codimension d each).

Blowup reconstructions beyond n = 3 are deliberately absent: the later
centers are proper transforms whose graded data has no closed form here.

Checks return structured results instead of raising so a full matrix can
be reported at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .genfun import egf_solve, h_recurrence, multiplicity_table, recurrence_egf, verify_identity
from .nests import brute_bivariate
from .polyseries import IntPoly
from .theory import (
    FormalDecomposition,
    SpaceDescriptor,
    blowup_formula,
    betti_of_fm,
    decompose_formal,
    evaluate_decomposition,
    projective_space_powers,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: dict[str, int]
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks)


def _result(name: str, params: dict[str, int], passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, params=params, passed=passed, detail=detail)


def brute_equiv(n: int, d: int, allow_large: bool = False) -> CheckResult:
    """Nest enumeration vs generating-function table, all powers at once."""
    brute = brute_bivariate(n, d, allow_large=allow_large)
    table = multiplicity_table(n, d)
    rows = {m: table.row_poly(m) for m in range(1, n + 1)}
    rows = {m: p for m, p in rows.items() if not p.is_zero}
    passed = brute == rows
    detail = "nest sums match table rows" if passed else (
        f"mismatch: nests={{{', '.join(f'{m}: {p}' for m, p in brute.items())}}} "
        f"table={{{', '.join(f'{m}: {p}' for m, p in rows.items())}}}"
    )
    return _result("brute-equiv", {"n": n, "d": d}, passed, detail)


def solver_match(n: int, d: int) -> CheckResult:
    """Partition recurrence vs identity solver, coefficient by coefficient."""
    solved = egf_solve(n, d)
    passed = all(solved.coefficient(m) == h_recurrence(m, d) for m in range(1, n + 1))
    detail = "solver reproduces recurrence" if passed else "solver coefficients differ"
    return _result("solver-match", {"n": n, "d": d}, passed, detail)


def identity_residual(order: int, d: int) -> CheckResult:
    """Functional-identity residual of the recurrence series."""
    residual = verify_identity(recurrence_egf(order, d), d)
    passed = residual.is_zero
    detail = "residual identically zero" if passed else "nonzero residual"
    return _result("identity-residual", {"order": order, "d": d}, passed, detail)


def x2_oracle(d: int) -> FormalDecomposition:
    """X[2] terms from the single blowup of the square along the diagonal."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    terms = [(2, 0, 1)] + [(1, j, 1) for j in range(1, d)]
    return FormalDecomposition.from_term_list(2, d, terms)


def x3_oracle(d: int) -> FormalDecomposition:
    """X[3] terms from the two-stage blowup of the cube.

    Stage one blows up the small diagonal (a copy of X, codimension 2d);
    stage two blows up three disjoint centers, each a copy of X[2] in
    codimension d, expanded by the nest decomposition of X[2].
    """
    if d < 2:
        raise ValueError("dimension must be >= 2 (diagonal blowups degenerate)")
    terms = [(3, 0, 1)]
    terms.extend((1, j, 1) for j in range(1, 2 * d))
    x2 = decompose_formal(2, d)
    for j in range(1, d):
        for m, shift, mult in x2.terms:
            terms.append((m, shift + j, 3 * mult))
    return FormalDecomposition.from_term_list(3, d, terms)


def x2_check(d: int) -> CheckResult:
    expected = decompose_formal(2, d)
    got = x2_oracle(d)
    passed = got == expected
    detail = "single blowup reproduces X[2]" if passed else (
        f"blowup terms {got.terms} != nest terms {expected.terms}"
    )
    return _result("blowup-x2", {"d": d}, passed, detail)


def x3_check(d: int) -> CheckResult:
    expected = decompose_formal(3, d)
    got = x3_oracle(d)
    passed = got == expected
    detail = "two-stage blowup reproduces X[3]" if passed else (
        f"blowup terms {got.terms} != nest terms {expected.terms}"
    )
    return _result("blowup-x3", {"d": d}, passed, detail)


def min_formula_check(d: int) -> CheckResult:
    """Closed form of the X-multiplicities of X[3] in two equivalent shapes."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    passed = all(
        1 + 3 * min(j - 1, 2 * d - 1 - j) == min(3 * j - 2, 6 * d - 3 * j - 2)
        for j in range(1, 2 * d)
    )
    detail = "both closed forms agree" if passed else "closed forms disagree"
    return _result("min-formula", {"d": d}, passed, detail)


def table_blowup_check(d: int) -> CheckResult:
    """Blowup formula on graded tables vs term-by-term evaluation.

    Uses d-dimensional projective space: the square's table comes from the
    projective-bundle formula, the blowup has codimension d, and the two
    sides must agree at every valid index.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    powers = projective_space_powers(d, "lawson", 2)
    space = SpaceDescriptor(name=f"P{d}", dim=d, kind="lawson", powers=powers)
    dec = decompose_formal(2, d)
    square, base = powers[2], powers[1]
    for p in range(0, 2 * d + 1):
        for k in range(2 * p, 4 * d + 1):
            lhs = blowup_formula(square, base, d, p, k, kind="lawson")
            rhs = evaluate_decomposition(dec, space, p, k)
            if lhs != rhs:
                return _result(
                    "table-blowup",
                    {"d": d},
                    False,
                    f"disagreement at (p={p}, k={k}): {lhs} != {rhs}",
                )
    return _result("table-blowup", {"d": d}, True, "agrees at every valid index")


def palindrome_check(betti_x: IntPoly, d: int, n: int) -> CheckResult:
    """Poincare polynomial of X[n] stays palindromic of degree 2dn."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not betti_x.is_palindromic(2 * d):
        raise ValueError("input Poincare polynomial must be palindromic of degree 2d")
    result = betti_of_fm(betti_x, d, n)
    passed = result.is_palindromic(2 * d * n)
    detail = f"poincare = {result}" if passed else f"not palindromic: {result}"
    return _result("palindrome", {"d": d, "n": n}, passed, detail)


def structure_check(n: int, d: int) -> CheckResult:
    """Structural facts of the multiplicity table for one (n, d)."""
    table = multiplicity_table(n, d)
    problems = []
    if table.value(n, 0) != 1:
        problems.append("a_{n,0} != 1")
    if any(table.value(m, 0) != 0 for m in range(1, n)):
        problems.append("a_{m,0} != 0 for some m < n")
    if any(a <= 0 for a in table.entries.values()):
        problems.append("nonpositive multiplicity")
    bound = d * (n - 1) - 1
    if n >= 2 and any(i > bound for (_, i) in table.entries):
        problems.append("shift beyond d(n-1)-1")
    if n >= 2 and d >= 2 and h_recurrence(n, d).degree != bound:
        problems.append("deg h_n != d(n-1)-1")
    passed = not problems
    detail = "all structural facts hold" if passed else "; ".join(problems)
    return _result("structure", {"n": n, "d": d}, passed, detail)


def run_verification(
    max_n: int = 4, max_d: int = 3, allow_large: bool = False
) -> VerificationReport:
    """Full check matrix over the grid n <= max_n, d <= max_d."""
    if max_n < 1 or max_d < 1:
        raise ValueError("max_n and max_d must be >= 1")
    checks: list[CheckResult] = []
    for d in range(1, max_d + 1):
        for n in range(1, max_n + 1):
            checks.append(brute_equiv(n, d, allow_large=allow_large))
        checks.append(solver_match(max_n, d))
        checks.append(identity_residual(max_n, d))
        checks.append(x2_check(d))
        if d >= 2:
            checks.append(x3_check(d))
        checks.append(min_formula_check(d))
        checks.append(table_blowup_check(d))
        betti = IntPoly([1 if i % 2 == 0 else 0 for i in range(2 * d + 1)])
        for n in range(1, max_n + 1):
            checks.append(palindrome_check(betti, d, n))
        for n in range(1, max_n + 1):
            checks.append(structure_check(n, d))
    return VerificationReport(checks=tuple(checks))
