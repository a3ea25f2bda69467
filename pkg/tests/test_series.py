from fractions import Fraction

import numpy as np
import pytest

from polynomials import IntPolynomial
from series import (TruncSeries, TruncationError, beta, build_A, build_B, build_C, default_orders,
                    exp_factor, f_rm_simplified, f_series, verify_b_cube_marginal, verify_b_equals_c,
                    verify_beta_marginal, verify_beta_properties, verify_bijective_display,
                    verify_exp_relation, verify_foata_han, verify_formula_beta_wn,
                    verify_frm_simplification, verify_ogf, verify_polynomial_identities, verify_rel_ab,
                    verify_rel_ac)


def test_geometric_reciprocal():
    orders = (4, 0, 0)
    one_minus_x = TruncSeries.from_terms(orders, {(0, 0, 0): 1, (1, 0, 0): -1})
    inverse = one_minus_x.reciprocal()
    assert [inverse[(n, 0, 0)] for n in range(5)] == [1] * 5
    assert one_minus_x * inverse == TruncSeries.one(orders)


def test_reciprocal_needs_unit_constant_term():
    with pytest.raises(TruncationError):
        TruncSeries.monomial((2, 0, 0), (1, 0, 0)).reciprocal()


def test_exponential_product_uses_binomial_weights():
    orders = (5, 0, 0)
    exp_x = TruncSeries.from_terms(orders, {(n, 0, 0): 1 for n in range(6)}, exponential=True)
    square = exp_x * exp_x
    assert [square[(n, 0, 0)] for n in range(6)] == [2 ** n for n in range(6)]
    assert exp_x.reciprocal()[(3, 0, 0)] == -1


def test_mixed_orders_or_normalizations_rejected():
    with pytest.raises(TruncationError):
        TruncSeries.one((1, 1, 1)) + TruncSeries.one((1, 1, 2))
    with pytest.raises(TruncationError):
        TruncSeries.one((1, 1, 1)) + TruncSeries.one((1, 1, 1), exponential=True)
    with pytest.raises(TruncationError):
        TruncSeries.one((1, 0, 0), exponential=True).shift(dx=1)
    with pytest.raises(TruncationError):
        TruncSeries((1, 1, 1), np.zeros((1, 1, 1), dtype=object))


def test_out_of_order_terms_are_dropped():
    s = TruncSeries.from_terms((1, 1, 1), {(2, 0, 0): 5, (1, 1, 1): Fraction(1, 2)})
    assert list(s.terms()) == [((1, 1, 1), Fraction(1, 2))]
    assert s[(2, 0, 0)] == 0


def test_normalization_conversions():
    s = TruncSeries.from_terms((3, 0, 0), {(3, 0, 0): 6}, exponential=True)
    assert s.to_ordinary()[(3, 0, 0)] == 1
    assert s.to_ordinary().to_exponential() == s
    assert s.with_normalization(False)[(3, 0, 0)] == 6


def test_compare_reports_first_difference():
    a = TruncSeries.from_terms((1, 1, 1), {(0, 1, 0): 1, (1, 0, 1): 2})
    b = TruncSeries.from_terms((1, 1, 1), {(0, 1, 0): 1, (1, 0, 1): 3})
    assert a.compare(b) == {"x": 1, "y": 0, "z": 1, "left": 2, "right": 3}
    assert a.compare(b, (0, 1, 1)) is None
    with pytest.raises(TruncationError):
        a.compare(b, (2, 0, 0))


def test_enumerated_series():
    a = build_A(1, 2)
    assert a.orders == default_orders(1, 2) == (2, 2, 3)
    assert a[(0, 0, 0)] == 1
    assert a[(1, 1, 1)] == 1
    assert a[(2, 1, 1)] == 1 and a[(2, 2, 2)] == 1
    b = build_B(1, 2)
    assert b[(1, 1, 0)] == 1
    assert b[(2, 1, 1)] == 1 and b[(2, 2, 0)] == 1
    assert build_C(1, 1)[(1, 1, 0)] == 1


def test_exp_factor_coefficients():
    factor = exp_factor(2, (2, 4, 3))
    assert factor[(1, 2, 0)] == 1 and factor[(1, 2, 1)] == -1
    assert factor[(2, 4, 1)] == -2
    assert exp_factor(2, (2, 4, 3), "z")[(2, 4, 2)] == 1


def test_beta():
    assert beta(IntPolynomial.monomial(3), 2) == IntPolynomial.monomial(2)
    assert beta(IntPolynomial.monomial(2), 2) == IntPolynomial.monomial(1)
    assert beta(IntPolynomial((1, -1)), 3) == IntPolynomial((1, -1))
    assert beta(IntPolynomial((0, 1, -1)), 2).is_zero()
    with pytest.raises(ValueError):
        beta(IntPolynomial.one(), 0)


def test_beta_is_not_idempotent():
    report = verify_beta_properties(3, 8)
    assert report.passed
    assert report.details["not_idempotent"]["k"] == 3


def test_f_series_constant_term():
    assert f_series(0, 2, 2, 4)[(0, 0, 0)] == 1
    assert f_series(4, 2, 2, 4) == f_rm_simplified(2, 2, 2, 4)


@pytest.mark.parametrize("r", [1, 2])
def test_exponential_relations(r):
    assert verify_rel_ab(r, 3).passed
    assert verify_rel_ac(r, 3).passed
    assert verify_b_equals_c(r, 3).passed
    assert verify_b_cube_marginal(r, 3).passed
    assert verify_bijective_display(r, 3).passed


def test_perturbed_series_is_caught():
    b = build_B(1, 3)
    b.coeffs[2, 1, 1] += 1
    report = verify_exp_relation(b, build_A(1, 3), 1)
    assert not report.passed
    assert (report.witness["x"], report.witness["y"], report.witness["z"]) == (2, 1, 1)


def test_exp_relation_needs_y_margin():
    orders = (2, 1, 3)
    with pytest.raises(TruncationError):
        verify_exp_relation(build_B(1, 2, orders), build_A(1, 2, orders), 1)


@pytest.mark.parametrize("r", [1, 2])
def test_ordinary_generating_functions(r):
    assert verify_foata_han(r, 2).passed
    assert verify_formula_beta_wn(r, 2).passed
    assert verify_frm_simplification(r, 2, 2).passed
    assert verify_ogf("A", r, 2).passed
    assert verify_ogf("C", r, 2).passed


def test_ogf_c_with_two_colors_to_degree_three():
    assert verify_ogf("C", 2, 3).passed


def test_foata_han_needs_z_margin():
    with pytest.raises(TruncationError):
        verify_foata_han(2, 3, nz=5)
    with pytest.raises(ValueError):
        verify_ogf("B", 1, 2)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_polynomial_identities(r):
    reports = verify_polynomial_identities(r, 4)
    assert [report.identity for report in reports] == [
        "series.relara", "series.formula_anr", "series.garsia_gessel", "series.flagpol",
        "series.fdes_cdes_bivariate"]
    assert all(report.passed for report in reports)
    assert all(report.wall_ms > 0 for report in reports)


@pytest.mark.parametrize("r,n_max", [(1, 4), (2, 2), (3, 2)])
def test_flagpol_adds_counts_sharing_a_flag_descent_value(r, n_max):
    [flagpol] = [report for report in verify_polynomial_identities(r, n_max)
                 if report.identity == "series.flagpol"]
    assert flagpol.passed, flagpol.witness


def test_beta_marginal():
    assert verify_beta_marginal(2, 3).passed
    assert verify_beta_marginal(3, 2).passed
