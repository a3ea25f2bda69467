import pytest
from hypothesis import given, settings, strategies as st

import permstats
from permstats import (ColoredPermutation, all_colored, ceil_div, cdes, cover, des, des_perm, des_star,
                       distribution, enumerate_colored, fdes, fdes_star, fexc, find_fexc_fdes_witness,
                       find_joint_difference, flag_eulerian, flag_eulerian_row, get_statistic,
                       graded_polynomials, inverse, joint_distribution,
                       verify_equidistribution, verify_fexc_fdes_not_equidistributed,
                       verify_li_equidistribution, verify_pair_equidistribution, verify_total_mass)

EXAMPLE = ColoredPermutation((8, 2, 7, 1, 4, 3, 5, 6), (1, 0, 2, 2, 1, 0, 1, 1), 3)
EXAMPLE_STAR = ColoredPermutation((8, 2, 4, 7, 1, 3, 5, 6), (1, 0, 1, 2, 2, 0, 1, 1), 3)


@st.composite
def colored_permutations(draw, max_n=5, max_r=3):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_r))
    sigma = draw(st.permutations(range(1, n + 1)))
    colors = draw(st.lists(st.integers(0, r - 1), min_size=n, max_size=n))
    return ColoredPermutation(tuple(sigma), tuple(colors), r)


def test_enumeration_sizes():
    assert len(list(enumerate_colored(0, 3))) == 1
    assert len(all_colored(3, 2)) == 48
    assert len(set(all_colored(3, 2))) == 48
    assert [p.sigma for p in enumerate_colored(2, 1)] == [(1, 2), (2, 1)]


def test_invalid_colored_permutation():
    with pytest.raises(ValueError):
        ColoredPermutation((1, 1), (0, 0), 1)
    with pytest.raises(ValueError):
        ColoredPermutation((1, 2), (0, 2), 2)
    with pytest.raises(ValueError):
        next(enumerate_colored(-1, 2))


def test_classical_statistics():
    assert des_perm((1, 5, 2, 7, 6, 3, 4)) == 3
    assert inverse((2, 3, 1)) == (3, 1, 2)
    assert cover((2, 3, 1)) == 1
    assert ceil_div(13, 3) == 5
    assert ceil_div(0, 3) == 0


def test_worked_example_statistics():
    assert des(EXAMPLE) == 4
    assert fdes(EXAMPLE) == 13
    assert fexc(EXAMPLE) == 8
    assert des_star(EXAMPLE_STAR) == 4
    assert fdes_star(EXAMPLE_STAR) == 13


def test_cdes_of_small_example():
    assert cdes(ColoredPermutation((2, 1), (2, 1), 3)) == 4


def test_flag_statistics_need_a_letter():
    empty = ColoredPermutation((), (), 2)
    with pytest.raises(ValueError):
        fdes(empty)
    assert get_statistic("fdes")(empty) == 0


def test_fexc_of_uncolored_permutation_is_excedance_count():
    assert fexc(ColoredPermutation.uncolored((2, 3, 1))) == 2


def test_flag_eulerian_conventions():
    assert flag_eulerian(0, 2, 0) == 1
    assert flag_eulerian(3, 1, 0) == 0
    assert flag_eulerian(3, 1, 4) == 0
    assert [flag_eulerian(3, 1, k) for k in range(1, 4)] == [1, 4, 1]
    assert sum(flag_eulerian(2, 2, k) for k in range(1, 5)) == 8


def test_flag_eulerian_row_single_pass():
    assert flag_eulerian_row(0, 3) == [1]
    assert flag_eulerian_row(3, 1) == [1, 4, 1]
    assert flag_eulerian_row(2, 2) == [1, 3, 3, 1]
    assert flag_eulerian_row(3, 2) == [flag_eulerian(3, 2, k) for k in range(1, 7)]


def test_flag_eulerian_row_streams_without_caching(monkeypatch):
    monkeypatch.setattr(permstats, "_ENUMERATION_CACHE", {})
    assert sum(flag_eulerian_row(4, 2)) == 384
    assert permstats._ENUMERATION_CACHE == {}


def test_joint_difference_same_with_workers():
    pairs = (("fexc", "fdes"), ("fexc", "fdes_star"))
    assert find_joint_difference(2, 2, *pairs, workers=3) == find_joint_difference(2, 2, *pairs)
    assert verify_pair_equidistribution(3, 2, workers=4).passed


def test_unknown_statistic():
    with pytest.raises(ValueError):
        distribution(2, 1, "maj")


def test_joint_distribution_small_cases():
    assert joint_distribution(2, 1, "fdes", "ides") == {(0, 0): 1, (1, 1): 1}
    assert joint_distribution(0, 3, "fexc", "fdes") == {(0, 0): 1}


def test_joint_distribution_independent_of_chunking():
    sequential = joint_distribution(3, 2, "fexc", "fdes")
    assert joint_distribution(3, 2, "fexc", "fdes", chunks=5, workers=3) == sequential
    assert joint_distribution(3, 2, "fexc", "fdes", chunks=1000) == sequential


def test_graded_polynomials_for_two_colors():
    # sum over fexc = 4 - k of z^ceil(fdes*/2) at n = r = 2
    graded = graded_polynomials(2, 2, "fexc", "ceil_fdes_star_r")
    assert graded[0].coeffs == (1,)
    assert graded[1].coeffs == (0, 3)
    assert graded[2].coeffs == (0, 2, 1)
    assert graded[3].coeffs == (0, 1)


def test_first_fexc_fdes_witness():
    witness = find_fexc_fdes_witness(4, 3)
    assert (witness["n"], witness["r"]) == (2, 2)
    assert witness["value"] == (1, 1)


@pytest.mark.parametrize("check", [verify_equidistribution, verify_pair_equidistribution,
                                   verify_li_equidistribution, verify_total_mass])
def test_equidistribution_checks_pass(check):
    assert check(4, 2).passed


def test_negative_result_found_and_vacuous():
    found = verify_fexc_fdes_not_equidistributed(3, 2)
    assert found.passed and "found" in found.details
    assert verify_fexc_fdes_not_equidistributed(1, 3).details["vacuous"] is True


@settings(max_examples=60)
@given(colored_permutations())
def test_flag_statistics_ranges(p):
    assert 0 <= fdes(p) <= p.r * p.n - 1
    assert fdes(p) == p.r * des(p) + p.colors[-1]
    assert 0 <= fexc(p) <= p.r * p.n - 1
