"""Exact rational admissibility logic."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphmeans.errors import DomainError
from sphmeans.regions import (
    INF,
    Condition,
    MixedIndices,
    Shape,
    admissible_set_scan,
    conditions_c1_c4,
    domain_inclusion,
    exchange_of_norms_valid,
    hardy_admissible,
    norm_finite,
    scaling_exponent,
)
from sphmeans.special_fun import Params

P01 = Params.from_rationals(0, 1)


class TestNormFinite:
    def test_spec_instances(self):
        p = Params.from_rationals(F(1, 5), F(1, 5))
        assert norm_finite(p, 4, 0)
        assert not norm_finite(p, 10, 0)  # equality fails the strict inequality

    def test_nonpositive_integer_beta_waives_clause(self):
        p = Params.from_rationals(F(3, 2), 0)
        assert norm_finite(p, 1, 9)       # (rho+1)/r = 10 > 2a+2 = 5 waived
        q = Params.from_rationals(F(3, 2), F(1, 10))
        assert not norm_finite(q, 1, 9)

    def test_floats_rejected(self):
        p = Params(alpha=0.2, beta=0.2)
        with pytest.raises(DomainError):
            norm_finite(p, 4, 0)


class TestScaling:
    def test_balance_examples(self):
        pa0 = Params.from_rationals(0, 0)
        assert scaling_exponent(pa0, MixedIndices(2, 2, 2, 1, 0, 0)) == 1
        assert scaling_exponent(pa0, MixedIndices(F(4, 3), 4, 2, 1, 0, 0)) == 0

    def test_infinity_handling(self):
        pa0 = Params.from_rationals(0, 0)
        idx = MixedIndices(1, INF, 2, 1, 0, 0)
        assert scaling_exponent(pa0, idx) == 2 * (0 - 1) + 1


class TestConditions:
    def test_admissible_example(self):
        v = conditions_c1_c4(P01, MixedIndices(F(4, 3), 4, 2, 1, 0, 0))
        assert v.admissible
        assert all(c is Condition.HOLDS for c in v.per_condition.values())

    def test_c4_strict_at_extreme_pair(self):
        # (p, q) = (1, inf) with (rho+1)/r = 1 needs strict C4 and fails
        idx = MixedIndices(1, INF, 1, 0, F(1, 2), F(1, 2))
        v = conditions_c1_c4(P01, idx)
        assert v.per_condition["C4"] is Condition.FAILS
        assert not v.admissible and v.failure_witness

    def test_c3_equality_subcase(self):
        # equality in C3 is tolerated only at (p, q) = (1, inf) with the
        # bracket condition on beta
        p = Params.from_rationals(0, 0)  # beta = 0
        idx = MixedIndices(1, INF, 1, 1, 0, 0)
        v = conditions_c1_c4(p, idx)
        assert v.per_condition["C3"] is Condition.HOLDS_WITH_EQUALITY

    def test_c1(self):
        assert conditions_c1_c4(P01, MixedIndices(4, 2, 2, 1, 0, 0)) \
            .per_condition["C1"] is Condition.FAILS


class TestDomainInclusion:
    def test_rho_gate(self):
        assert not domain_inclusion(P01, MixedIndices(2, 2, 1, -1, 0, 0))

    def test_strict_interior(self):
        assert domain_inclusion(P01, MixedIndices(2, 2, 1, 0, F(1, 2), 0))

    def test_boundary_strict_for_p_above_one(self):
        # A exactly at the lower bound with p = 2: excluded (a log-divergent
        # borderline probe exists in L^2)
        assert not domain_inclusion(P01, MixedIndices(2, 2, 1, 0, 0, 0))

    def test_p_one_weak_inequality(self):
        # A exactly at the upper bound, allowed weakly at p = 1 (beta+1/r != 1)
        assert domain_inclusion(P01, MixedIndices(1, 2, 1, 0, 0, 0))
        # same at the lower endpoint with beta = 0
        p00 = Params.from_rationals(0, 0)
        assert domain_inclusion(p00, MixedIndices(1, 2, 1, 0, -1, 0))

    def test_interior_monotonicity(self):
        idx = MixedIndices(2, 2, 1, 0, F(1, 2), 0)
        assert domain_inclusion(P01, idx)
        for Ap in (F(1, 4), F(3, 4)):
            if domain_inclusion(P01, MixedIndices(2, 2, 1, 0, Ap, 0)):
                continue
            # anything strictly between the bounds must stay admissible
            assert not (0 < Ap < 1)


class TestHardy:
    def test_equality_case_at_one_inf(self):
        assert hardy_admissible(0, 0, 1, INF, "Hardy")
        assert hardy_admissible(0, 0, 1, INF, "DualHardy")

    def test_strict_failure(self):
        assert not hardy_admissible(1, F(1, 2), 2, 2, "Hardy")

    def test_balance_required(self):
        assert not hardy_admissible(0, 0, 2, 2, "Hardy")  # a - 1/p' != b + 1/q

    def test_log_divergent_pair_rejected(self):
        # (a, b, p, q) = (0, -1, 1, 1) balances but the estimate fails
        assert not hardy_admissible(0, -1, 1, 1, "Hardy")

    @settings(max_examples=80, deadline=None)
    @given(st.fractions(min_value=-2, max_value=2),
           st.sampled_from([F(1), F(4, 3), F(2), F(4)]),
           st.sampled_from([F(1), F(2), F(4), F(8)]))
    def test_balance_is_necessary(self, a, p, q):
        # without the exact balance the characterization must reject
        b = a - (1 - 1 / p) + 1 / q + F(1, 7)
        assert not hardy_admissible(a, b, p, q, "Hardy")


class TestExchange:
    def test_minkowski_flag(self):
        assert exchange_of_norms_valid(MixedIndices(2, 2, 4, 0, 0, 0))      # q < r
        assert exchange_of_norms_valid(MixedIndices(2, 2, 2, 0, 0, 0))      # q = r
        assert not exchange_of_norms_valid(MixedIndices(2, 4, 2, 0, 0, 0))  # q > r


class TestSetScan:
    def test_s2_spec_example(self):
        scan = admissible_set_scan(P01, 0, 0, 2, 1, 24)
        assert scan.shape is Shape.S2
        assert scan.u_lo == F(1, 2) and scan.u_hi == 1
        assert not scan.lo_included and not scan.hi_included
        # endpoints 1/p in {1/2, 1} excluded, grid points strictly between
        assert all(F(1, 2) < u < 1 for (u, v) in scan.points)

    def test_s4_vertex(self):
        scan = admissible_set_scan(P01, F(-1, 4), F(-1, 4), 2, 2, 24)
        assert scan.shape is Shape.S4
        assert scan.points == ((F(1), F(0)),)

    def test_s5_empty(self):
        scan = admissible_set_scan(P01, 5, 5, 2, 1, 24)
        assert scan.shape is Shape.S5 and not scan.points

    def test_s3_diagonal(self):
        scan = admissible_set_scan(P01, F(1, 8), F(3, 8), 2, 0, 24)
        assert scan.shape is Shape.S3
        assert scan.offset == 0

    def test_c4_equivalence_on_grid(self):
        # along the C2 line, C4 <-> C4' exhaustively at denominator 24
        den = 24
        for iu in range(den + 1):
            u = F(iu, den)
            for c_num in (-12, -6, 0):
                c = F(c_num, 24)
                v = u + c
                if not 0 <= v <= 1:
                    continue
                rho, r = F(1), F(2)
                diff = 2 * (v - u) + (rho + 1) / r
                A = diff / 2
                B = diff - A
                idx = MixedIndices(INF if u == 0 else 1 / u,
                                   INF if v == 0 else 1 / v, r, rho, A, B)
                assert scaling_exponent(P01, idx) == 0
                c4 = conditions_c1_c4(P01, idx).per_condition["C4"]
                strict = (u == 1) or (v == 0)
                c4p = (A + B > (v - u)) or (not strict and A + B == (v - u))
                assert (c4 is not Condition.FAILS) == c4p

    def test_grid_points_match_segment(self):
        scan = admissible_set_scan(P01, 0, 0, 2, 1, 24)
        for (u, v) in scan.points:
            assert v == u + scan.offset
            assert scan.u_lo <= u <= scan.u_hi
