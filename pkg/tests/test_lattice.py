from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lattice import (RegionFamily, SliceRegion, a_polynomial, b_polynomial, count_points, count_points_naive,
                     cube_series, ehrhart_polynomial, ehrhart_series, eulerian_polynomial,
                     series_from_polynomial, verify_a_series, verify_b_series, verify_cell_decomposition,
                     verify_cell_lemmas, verify_dp_matches_naive, verify_eulerian_series,
                     verify_inclusion_exclusion, verify_interpolation, verify_slice_additivity)
from polynomials import RatPolynomial


def test_region_validation():
    with pytest.raises(ValueError):
        SliceRegion.a_slice(2, 1, 3)
    with pytest.raises(ValueError):
        SliceRegion.b_slice(2, 1, 0)
    with pytest.raises(ValueError):
        SliceRegion(3, 2, RegionFamily.STD_CELL_CLOSED, sigma=(1, 2, 3))
    with pytest.raises(ValueError):
        SliceRegion.std_cell((1, 1))
    assert SliceRegion.b_slice(2, 1, 1).describe() == "B-slice(n=2, r=1, k=1)"
    assert SliceRegion.std_cell((2, 1), closed=False).describe() == "std-cell-halfopen(21)"


def test_point_counts():
    assert count_points(SliceRegion.cube(2, 1, closed=True), 3) == 16
    assert count_points(SliceRegion.cube(2, 1, closed=False), 3) == 9
    assert count_points(SliceRegion.b_slice(2, 1, 1), 2) == 3
    assert count_points(SliceRegion.std_cell((2, 1), closed=True), 1) == 1
    with pytest.raises(ValueError):
        count_points(SliceRegion.cube(2, 1), 0)


def test_ehrhart_polynomial_of_triangle():
    poly = ehrhart_polynomial(SliceRegion.b_slice(2, 1, 1))
    assert poly.coeffs == (Fraction(0), Fraction(1, 2), Fraction(1, 2))
    assert ehrhart_polynomial(SliceRegion.b_slice(2, 1, 1), workers=3) == poly


def test_small_slice_series():
    assert b_polynomial(2, 1, 1).coeffs == (0, 1)
    assert b_polynomial(2, 1, 2).coeffs == (1,)
    assert a_polynomial(2, 1, 1).coeffs == (0, 1)
    assert a_polynomial(2, 1, 2).coeffs == (0, 0, 1)
    assert [b_polynomial(2, 2, k).coeffs for k in range(1, 5)] == [(0, 1), (0, 2, 1), (0, 3), (1,)]


def test_slice_conventions_outside_range():
    assert a_polynomial(0, 3, 0).coeffs == (1,)
    assert b_polynomial(2, 1, 0).is_zero()
    assert a_polynomial(2, 1, 5).is_zero()
    assert a_polynomial(1, 2, -1).is_zero()


def test_cube_series_is_eulerian():
    assert cube_series(3, 1, closed=True).coeffs == (1, 4, 1)
    assert cube_series(3, 1, closed=False).coeffs == (0, 1, 4, 1)
    assert cube_series(2, 2, closed=True).coeffs == (1, 6, 1)
    assert eulerian_polynomial(4).coeffs == (1, 11, 11, 1)


def test_std_cell_series():
    assert ehrhart_series(SliceRegion.std_cell((2, 1), closed=True)).coeffs == (0, 1)
    assert ehrhart_series(SliceRegion.std_cell((1, 2), closed=False)).coeffs == (0, 1)


def test_series_from_non_integral_polynomial_rejected():
    with pytest.raises(ValueError):
        series_from_polynomial(RatPolynomial((Fraction(1, 2),)), 0)


@pytest.mark.parametrize("check,args", [
    (verify_dp_matches_naive, (3, 2, 3)),
    (verify_interpolation, (3, 2)),
    (verify_interpolation, (2, 2, 3)),
    (verify_cell_lemmas, (3,)),
    (verify_cell_decomposition, (4,)),
    (verify_eulerian_series, (6,)),
    (verify_a_series, (3, 2)),
    (verify_b_series, (3, 2)),
    (verify_inclusion_exclusion, (3, 2)),
    (verify_slice_additivity, (3, 3)),
])
def test_lattice_checks_pass(check, args):
    assert check(*args).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 2), st.integers(1, 4), st.data())
def test_dp_count_matches_enumeration(n, r, t, data):
    k = data.draw(st.integers(1, r * n))
    for region in (SliceRegion.a_slice(n, r, k), SliceRegion.b_slice(n, r, k)):
        assert count_points(region, t) == count_points_naive(region, t)
