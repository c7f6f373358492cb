import pytest

from fmc.oracle import (
    CheckResult,
    VerificationReport,
    brute_equiv,
    identity_residual,
    min_formula_check,
    palindrome_check,
    run_verification,
    solver_match,
    structure_check,
    table_blowup_check,
    x2_check,
    x2_oracle,
    x3_check,
    x3_oracle,
)
from fmc.polyseries import IntPoly
from fmc.theory import decompose_formal

P2_BETTI = IntPoly([1, 0, 1, 0, 1])
P1_BETTI = IntPoly([1, 0, 1])


class TestBruteEquiv:
    def test_single_label(self):
        assert brute_equiv(1, 3).passed

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_grid(self, n, d):
        assert brute_equiv(n, d).passed

    def test_n4_d2(self):
        result = brute_equiv(4, 2)
        assert result.passed
        assert result.params == {"n": 4, "d": 2}


class TestBlowupOracles:
    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    def test_x2(self, d):
        assert x2_oracle(d) == decompose_formal(2, d)
        assert x2_check(d).passed

    def test_x2_d1_is_bare_square(self):
        assert x2_oracle(1).terms == ((2, 0, 1),)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_x3(self, d):
        assert x3_oracle(d) == decompose_formal(3, d)
        assert x3_check(d).passed

    def test_x3_rejects_d1(self):
        with pytest.raises(ValueError):
            x3_oracle(1)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_x3_point_multiplicities_closed_form(self, d):
        dec = x3_oracle(d)
        mults = {shift: mult for m, shift, mult in dec.terms if m == 1}
        for j in range(1, 2 * d):
            assert mults[j] == min(3 * j - 2, 6 * d - 3 * j - 2)
        assert set(mults) == set(range(1, 2 * d))

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_x3_square_multiplicities(self, d):
        dec = x3_oracle(d)
        mults = {shift: mult for m, shift, mult in dec.terms if m == 2}
        assert mults == {j: 3 for j in range(1, d)}

    def test_x3_d2_point_row(self):
        mults = {
            shift: mult for m, shift, mult in x3_oracle(2).terms if m == 1
        }
        assert mults == {1: 1, 2: 4, 3: 1}

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    def test_min_formula(self, d):
        assert min_formula_check(d).passed


class TestOtherChecks:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_solver_and_identity(self, d):
        assert solver_match(5, d).passed
        assert identity_residual(6, d).passed

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_table_blowup(self, d):
        assert table_blowup_check(d).passed

    def test_palindrome_plane_pair(self):
        result = palindrome_check(P2_BETTI, 2, 2)
        assert result.passed
        assert "1 + 3*x^2 + 4*x^4 + 3*x^6 + x^8" in result.detail

    def test_palindrome_line_triple(self):
        assert palindrome_check(P1_BETTI, 1, 3).passed

    def test_palindrome_rejects_point(self):
        with pytest.raises(ValueError):
            palindrome_check(IntPoly([1]), 1, 2)

    def test_palindrome_rejects_lopsided(self):
        with pytest.raises(ValueError):
            palindrome_check(IntPoly([1, 2]), 1, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_structure(self, n, d):
        assert structure_check(n, d).passed


class TestReport:
    def test_overall_is_conjunction(self):
        good = CheckResult("a", {}, True, "")
        bad = CheckResult("b", {}, False, "")
        assert VerificationReport((good, good)).overall
        assert not VerificationReport((good, bad)).overall
        assert VerificationReport(()).overall

    def test_run_verification_passes(self):
        report = run_verification(4, 2)
        assert report.overall
        assert all(isinstance(c, CheckResult) for c in report.checks)

    def test_deterministic_order(self):
        first = run_verification(3, 2)
        second = run_verification(3, 2)
        assert [c.name for c in first.checks] == [c.name for c in second.checks]
        assert first == second
