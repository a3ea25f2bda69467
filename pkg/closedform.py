"""
Closed-form Ehrhart polynomials of the slices, the flag Eulerian closed
formula and the classical Eulerian formula, plus two independent
constant-term oracles for the slice counts.

Two binomial semantics are kept apart here. PolyBinomial is the polynomial
binomial (falling factorial over n!), valid for every t. comb_or_zero is the
counting binomial, zero whenever the top is negative.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal

import sympy as sp

from lattice import SliceRegion, count_points, ehrhart_polynomial
from permstats import flag_eulerian_row
from polynomials import RatPolynomial
from verdicts import VerdictReport

logger = logging.getLogger(__name__)

SliceFamily = Literal["A", "B"]

_T = sp.Symbol("t")
_Q = sp.Symbol("q")


@dataclass(frozen=True)
class PolyBinomial:
    """binom(offset + slope * t, n) as a polynomial in t."""

    offset: int
    slope: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"binomial bottom n={self.n} must be >= 0")

    def expand(self) -> RatPolynomial:
        return _expand_binomial(self.offset, self.slope, self.n)


@lru_cache(maxsize=1024)
def _expand_binomial(offset: int, slope: int, n: int) -> RatPolynomial:
    expr = sp.expand_func(sp.binomial(offset + slope * _T, n))
    poly = sp.Poly(sp.expand(expr), _T)
    coeffs = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    return RatPolynomial(tuple(Fraction(int(c.p), int(c.q)) for c in coeffs))


def _check_level(n: int, r: int, k: int) -> None:
    if n < 1 or r < 1:
        raise ValueError(f"closed forms need n >= 1 and r >= 1, got n={n} r={r}")
    if not 1 <= k <= r * n:
        raise ValueError(f"level k={k} outside 1..{r * n}")


def _alternating_closed(n: int, r: int, k: int, shift: Callable[[int], int]) -> RatPolynomial:
    """
    sum_{j <= (k-1)/r} (-1)^(j+1) binom(n, j) binom(c_j + (k-1-rj) t, n)
      - sum_{j <= k/r} (-1)^(j+1) binom(n, j) binom(c_j + (k-rj) t, n)
    with c_j = shift(j).
    """
    total = RatPolynomial.zero()
    for j in range((k - 1) // r + 1):
        term = PolyBinomial(shift(j), k - 1 - r * j, n).expand()
        total = total + term.scale((-1) ** (j + 1) * math.comb(n, j))
    for j in range(k // r + 1):
        term = PolyBinomial(shift(j), k - r * j, n).expand()
        total = total - term.scale((-1) ** (j + 1) * math.comb(n, j))
    return total


def ehrhart_a_closed(n: int, r: int, k: int) -> RatPolynomial:
    _check_level(n, r, k)
    return _alternating_closed(n, r, k, lambda j: n - 1)


def ehrhart_b_closed(n: int, r: int, k: int) -> RatPolynomial:
    _check_level(n, r, k)
    return _alternating_closed(n, r, k, lambda j: n - j - 1)


def flag_eulerian_closed(n: int, r: int, k: int) -> int:
    """Number of colored permutations with fdes = k - 1, in closed form."""
    _check_level(n, r, k)
    first = sum(math.comb(n, j) * (-1) ** (j + 1) * (k - r * j - 1) ** n
                for j in range((k - 1) // r + 1))
    second = sum(math.comb(n, j) * (-1) ** (j + 1) * (k - r * j) ** n
                 for j in range(k // r + 1))
    return first - second


def eulerian_closed(n: int, k: int) -> int:
    """Number of permutations of 1..n with k - 1 descents."""
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"eulerian_closed needs n >= 1 and 1 <= k <= n, got n={n} k={k}")
    return sum(math.comb(n + 1, j) * (-1) ** j * (k - j) ** n for j in range(k))


# ---------------- Constant-term oracles ----------------

def _window(n: int, r: int, k: int, t: int, family: SliceFamily):
    """Box size and inclusive sum window of the t-th dilate of a slice."""
    if family not in ("A", "B"):
        raise ValueError(f"unknown slice family {family!r}")
    _check_level(n, r, k)
    if t < 1:
        raise ValueError(f"dilation t={t} must be >= 1")
    box = r * t if family == "A" else r * t + 1
    high = k * t if family == "B" and k == r * n else k * t - 1
    return box, k * t - t, high


def constant_term_count(n: int, r: int, k: int, t: int, family: SliceFamily = "A") -> int:
    """
    Slice count as a sum of coefficients of [box]_q^n, where
    [m]_q = 1 + q + ... + q^(m-1). Equivalent to taking the constant term of
    q^(-s) [box]_q^n for every admissible sum s.
    """
    box, low, high = _window(n, r, k, t, family)
    q_integer = sp.Poly(sum(_Q ** i for i in range(box)), _Q)
    power = q_integer ** n
    return int(sum(power.nth(i) for i in range(low, high + 1)))


def comb_or_zero(top: int, bottom: int) -> int:
    """binom(top, bottom) with the convention binom(top, bottom) = 0 for top < 0."""
    if top < 0 or bottom < 0:
        return 0
    return math.comb(top, bottom)


def convention_binomial_count(n: int, r: int, k: int, t: int, family: SliceFamily = "A") -> int:
    """Slice count by inclusion-exclusion over the coordinates that overflow the box."""
    box, low, high = _window(n, r, k, t, family)

    def at_most(total: int) -> int:
        return sum((-1) ** j * math.comb(n, j) * comb_or_zero(total - j * box + n, n)
                   for j in range(n + 1))

    return at_most(high) - at_most(low - 1)


# ---------------- Identity checks ----------------

def _check_closed(identity: str, closed_form, make_region, max_n: int, max_r: int) -> VerdictReport:
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for k in range(1, r * n + 1):
                closed = closed_form(n, r, k)
                interpolated = ehrhart_polynomial(make_region(n, r, k))
                if closed != interpolated:
                    return VerdictReport.failure(identity, params,
                                                 {"n": n, "r": r, "k": k,
                                                  "closed_form": list(closed.coeffs),
                                                  "interpolated": list(interpolated.coeffs)})
    return VerdictReport.success(identity, params)


def verify_a_closed(max_n: int, max_r: int) -> VerdictReport:
    """Closed-form A-slice polynomials match interpolation; n! * leading coeff is A_{n,k}."""
    report = _check_closed("closedform.a_closed", ehrhart_a_closed, SliceRegion.a_slice, max_n, max_r)
    if not report.passed:
        return report
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            row = flag_eulerian_row(n, r)
            for k in range(1, r * n + 1):
                volume = ehrhart_a_closed(n, r, k)[n] * math.factorial(n)
                if volume != row[k - 1]:
                    return VerdictReport.failure("closedform.a_closed", report.params,
                                                 {"n": n, "r": r, "k": k, "scaled_volume": volume,
                                                  "flag_eulerian": row[k - 1]})
    return report


def verify_b_closed(max_n: int, max_r: int) -> VerdictReport:
    """Closed-form B-slice polynomials match interpolation and sum to (rt + 1)^n."""
    report = _check_closed("closedform.b_closed", ehrhart_b_closed, SliceRegion.b_slice, max_n, max_r)
    if not report.passed:
        return report
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            total = RatPolynomial.zero()
            for k in range(1, r * n + 1):
                total = total + ehrhart_b_closed(n, r, k)
            cube = RatPolynomial.one()
            for _ in range(n):
                cube = cube * RatPolynomial.linear(1, r)
            if total != cube:
                return VerdictReport.failure("closedform.b_closed", report.params,
                                             {"n": n, "r": r, "slice_sum": list(total.coeffs),
                                              "cube": list(cube.coeffs)})
    return report


def verify_flag_eulerian_closed(max_n: int, max_r: int) -> VerdictReport:
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            row = flag_eulerian_row(n, r)
            for k in range(1, r * n + 1):
                closed, counted = flag_eulerian_closed(n, r, k), row[k - 1]
                if closed != counted:
                    return VerdictReport.failure("closedform.flag_eulerian", params,
                                                 {"n": n, "r": r, "k": k, "closed_form": closed,
                                                  "enumerated": counted})
    return VerdictReport.success("closedform.flag_eulerian", params)


def verify_eulerian_specialization(max_n: int = 6) -> VerdictReport:
    """At r = 1 the flag Eulerian closed form, the Eulerian closed form and descents over S_n agree."""
    params = {"max_n": max_n}
    for n in range(1, max_n + 1):
        counted = flag_eulerian_row(n, 1)
        for k in range(1, n + 1):
            flag, classical = flag_eulerian_closed(n, 1, k), eulerian_closed(n, k)
            if not flag == classical == counted[k - 1]:
                return VerdictReport.failure("closedform.eulerian_specialization", params,
                                             {"n": n, "k": k, "flag_eulerian": flag, "eulerian": classical,
                                              "enumerated": counted[k - 1]})
    return VerdictReport.success("closedform.eulerian_specialization", params)


def verify_constant_term(max_n: int = 3, max_r: int = 3, max_t: int = 5) -> VerdictReport:
    """Both constant-term oracles agree with the lattice counter."""
    params = {"max_n": max_n, "max_r": max_r, "max_t": max_t}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for k in range(1, r * n + 1):
                for family, make in (("A", SliceRegion.a_slice), ("B", SliceRegion.b_slice)):
                    region = make(n, r, k)
                    for t in range(1, max_t + 1):
                        counted = count_points(region, t)
                        q_count = constant_term_count(n, r, k, t, family)
                        binomial_count = convention_binomial_count(n, r, k, t, family)
                        if not counted == q_count == binomial_count:
                            return VerdictReport.failure("closedform.constant_term", params,
                                                         {"region": region.describe(), "t": t,
                                                          "count": counted, "q_series": q_count,
                                                          "convention_binomial": binomial_count})
    return VerdictReport.success("closedform.constant_term", params)
