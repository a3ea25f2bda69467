from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bijections import (GridPoint, alpha, alpha_star, block_involution, color_blocks, cstd, fdes_point,
                        phi, phi_inv, std, verify_alpha, verify_alpha_star, verify_block_involution,
                        verify_cstd_floor, verify_involution_example, verify_phi_grid, verify_std_example)
from permstats import ColoredPermutation, cdes, ceil_div, fdes, fdes_star, fexc


@st.composite
def colored_permutations(draw, max_n=6, max_r=3):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_r))
    sigma = draw(st.permutations(range(1, n + 1)))
    colors = draw(st.lists(st.integers(0, r - 1), min_size=n, max_size=n))
    return ColoredPermutation(tuple(sigma), tuple(colors), r)


@st.composite
def grid_points(draw, max_n=4, max_r=3, max_t=4):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_r))
    t = draw(st.integers(1, max_t))
    numerators = draw(st.lists(st.integers(0, r * t - 1), min_size=n, max_size=n))
    return GridPoint(tuple(Fraction(a, t) for a in numerators), r, t)


def test_standardization():
    assert std((1, 5, 2, 7, 6, 3, 4)) == (1, 5, 2, 7, 6, 3, 4)
    assert std((Fraction(1, 2), 0, Fraction(1, 2))) == (2, 1, 3)
    assert std((3, 3, 3)) == (1, 2, 3)
    assert std(()) == ()
    assert verify_std_example().passed


def test_cstd_example():
    v = GridPoint((Fraction(3, 2), Fraction(1, 5), Fraction(27, 10)), r=3, t=10)
    p = cstd(v)
    assert p.sigma == (2, 1, 3)
    assert p.colors == (1, 0, 2)


def test_phi_example():
    a = GridPoint((1, Fraction(1, 2)), r=2, t=2)
    assert phi(a).coords == (Fraction(1), Fraction(3, 2))
    assert fdes_point(a) == Fraction(5, 2)
    assert phi_inv(phi(a)) == a


def test_grid_point_validation():
    with pytest.raises(ValueError):
        GridPoint((2,), r=2)
    with pytest.raises(ValueError):
        GridPoint((Fraction(1, 3),), r=2, t=2)
    assert GridPoint((2,), r=2, closed=True).coords == (Fraction(2),)
    with pytest.raises(ValueError):
        cstd(GridPoint((2,), r=2, closed=True))


def test_alpha_shifts_colors_after_descents():
    p = ColoredPermutation((2, 1), (0, 0), 2)
    assert alpha(p).colors == (0, 1)
    identity = ColoredPermutation((1, 2, 3), (1, 0, 1), 2)
    assert alpha(identity).colors == (1, 1, 0)


def test_block_involution_example():
    p = ColoredPermutation((8, 2, 7, 1, 4, 3, 5, 6), (1, 0, 2, 2, 1, 0, 1, 1), 3)
    assert len(color_blocks(p)) == 6
    image = block_involution(p)
    assert image.sigma == (8, 2, 4, 7, 1, 3, 5, 6)
    assert image.colors == (1, 0, 1, 2, 2, 0, 1, 1)
    assert verify_involution_example().passed


def test_zero_colored_word_is_fixed():
    p = ColoredPermutation((3, 1, 2), (0, 0, 0), 4)
    assert block_involution(p) == p


@pytest.mark.parametrize("check,args", [
    (verify_phi_grid, (3, 2, 2)),
    (verify_cstd_floor, (3, 2, 2)),
    (verify_alpha, (4, 3)),
    (verify_alpha_star, (4, 3)),
    (verify_block_involution, (4, 3)),
])
def test_bijection_checks_pass(check, args):
    assert check(*args).passed


@settings(max_examples=80)
@given(grid_points())
def test_phi_round_trip(a):
    b = phi(a)
    assert phi_inv(b) == a
    assert sum(b.coords) == fdes_point(a)


@settings(max_examples=80)
@given(colored_permutations())
def test_block_involution_properties(p):
    image = block_involution(p)
    assert block_involution(image) == p
    assert fexc(image) == fexc(p)
    assert ceil_div(fdes(p), p.r) == ceil_div(fdes_star(image), p.r)


@settings(max_examples=80)
@given(colored_permutations())
def test_alpha_turns_cdes_into_flag_descents(p):
    assert alpha(p).sigma == p.sigma
    assert fdes(alpha(p)) == cdes(p)
    assert fdes_star(alpha_star(p)) == cdes(p)
