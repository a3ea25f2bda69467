"""
Exact lattice-point counting for the slice regions of [0, r)^n and [0, r]^n,
the unit cube cells S_sigma / T_sigma, Ehrhart polynomials by interpolation
and Ehrhart series (h*-polynomials).
"""

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from bijections import std
from permstats import des_perm, distribution, graded_polynomials, inverse
from polynomials import IntPolynomial, RatPolynomial
from verdicts import VerdictReport, first_mismatch

logger = logging.getLogger(__name__)


class RegionFamily(str, Enum):
    A_SLICE = "A-slice"
    B_SLICE = "B-slice"
    CUBE_CLOSED = "full-cube-closed"
    CUBE_HALFOPEN = "full-cube-halfopen"
    STD_CELL_CLOSED = "std-cell-closed"
    STD_CELL_HALFOPEN = "std-cell-halfopen"


SLICE_FAMILIES = (RegionFamily.A_SLICE, RegionFamily.B_SLICE)
CELL_FAMILIES = (RegionFamily.STD_CELL_CLOSED, RegionFamily.STD_CELL_HALFOPEN)


@dataclass(frozen=True)
class SliceRegion:
    """
    One of the region families whose dilates are counted.

    Slices use the level k (1 <= k <= rn); cells use sigma and always have r = 1.
    """

    n: int
    r: int
    family: RegionFamily
    k: Optional[int] = None
    sigma: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "family", RegionFamily(self.family))
        if self.n < 0:
            raise ValueError(f"dimension n={self.n} must be >= 0")
        if self.r < 1:
            raise ValueError(f"upper bound r={self.r} must be >= 1")
        if self.family in SLICE_FAMILIES:
            if self.k is None or not 1 <= self.k <= self.r * self.n:
                raise ValueError(f"level k={self.k} outside 1..{self.r * self.n} for {self.family.value}")
        if self.family in CELL_FAMILIES:
            if self.sigma is None:
                raise ValueError(f"{self.family.value} needs a permutation")
            sigma = tuple(self.sigma)
            if sorted(sigma) != list(range(1, self.n + 1)):
                raise ValueError(f"{sigma} is not a permutation of 1..{self.n}")
            if self.r != 1:
                raise ValueError("standardization cells live in the unit cube (r = 1)")
            object.__setattr__(self, "sigma", sigma)

    @classmethod
    def a_slice(cls, n: int, r: int, k: int) -> "SliceRegion":
        return cls(n, r, RegionFamily.A_SLICE, k=k)

    @classmethod
    def b_slice(cls, n: int, r: int, k: int) -> "SliceRegion":
        return cls(n, r, RegionFamily.B_SLICE, k=k)

    @classmethod
    def cube(cls, n: int, r: int, closed: bool = True) -> "SliceRegion":
        family = RegionFamily.CUBE_CLOSED if closed else RegionFamily.CUBE_HALFOPEN
        return cls(n, r, family)

    @classmethod
    def std_cell(cls, sigma, closed: bool = True) -> "SliceRegion":
        sigma = tuple(sigma)
        family = RegionFamily.STD_CELL_CLOSED if closed else RegionFamily.STD_CELL_HALFOPEN
        return cls(len(sigma), 1, family, sigma=sigma)

    @property
    def closed(self) -> bool:
        return self.family in (RegionFamily.B_SLICE, RegionFamily.CUBE_CLOSED,
                               RegionFamily.STD_CELL_CLOSED)

    def describe(self) -> str:
        if self.family in SLICE_FAMILIES:
            return f"{self.family.value}(n={self.n}, r={self.r}, k={self.k})"
        if self.family in CELL_FAMILIES:
            return f"{self.family.value}({''.join(map(str, self.sigma))})"
        return f"{self.family.value}(n={self.n}, r={self.r})"


# ---------------- Counting ----------------

def _coordinate_max(region: SliceRegion, t: int) -> int:
    """Largest integer coordinate of the t-th dilate."""
    return region.r * t if region.closed else region.r * t - 1


def _sum_window(region: SliceRegion, t: int) -> Tuple[int, int]:
    """Inclusive bounds on the coordinate sum of a dilated slice."""
    low = region.k * t - t
    if region.family == RegionFamily.B_SLICE and region.k == region.r * region.n:
        return low, region.k * t
    return low, region.k * t - 1


def _box_sum_counts(n: int, top: int) -> List[int]:
    """counts[s] = #{v in {0..top}^n : sum v = s}, by prefix-sum convolution."""
    counts = [1]
    for _ in range(n):
        prefix = [0]
        for c in counts:
            prefix.append(prefix[-1] + c)
        size = len(counts) + top
        counts = [prefix[min(s, len(counts) - 1) + 1] - prefix[max(0, s - top)]
                  for s in range(size)]
    return counts


@lru_cache(maxsize=128)
def _std_buckets(n: int, t: int, closed: bool) -> Counter:
    """Standardizations of every integer point of [0, t]^n (or [0, t)^n)."""
    top = t if closed else t - 1
    return Counter(std(v) for v in itertools.product(range(top + 1), repeat=n))


def _check_dilation(t: int) -> None:
    if t < 1:
        raise ValueError(f"dilation t={t} must be >= 1")


def count_points(region: SliceRegion, t: int) -> int:
    """Number of integer points of t * region."""
    _check_dilation(t)
    if region.family in CELL_FAMILIES:
        return _std_buckets(region.n, t, region.closed).get(region.sigma, 0)
    top = _coordinate_max(region, t)
    if region.family in (RegionFamily.CUBE_CLOSED, RegionFamily.CUBE_HALFOPEN):
        return (top + 1) ** region.n
    low, high = _sum_window(region, t)
    counts = _box_sum_counts(region.n, top)
    return sum(counts[low:min(high, len(counts) - 1) + 1])


def count_points_naive(region: SliceRegion, t: int) -> int:
    """Brute-force enumeration of the dilated region."""
    _check_dilation(t)
    if region.family in CELL_FAMILIES:
        top = t if region.closed else t - 1
        return sum(1 for v in itertools.product(range(top + 1), repeat=region.n)
                   if std(v) == region.sigma)
    top = _coordinate_max(region, t)
    if region.family in (RegionFamily.CUBE_CLOSED, RegionFamily.CUBE_HALFOPEN):
        return sum(1 for _ in itertools.product(range(top + 1), repeat=region.n))
    low, high = _sum_window(region, t)
    return sum(1 for v in itertools.product(range(top + 1), repeat=region.n)
               if low <= sum(v) <= high)


# ---------------- Ehrhart polynomials and series ----------------

def ehrhart_polynomial(region: SliceRegion, workers: Optional[int] = None) -> RatPolynomial:
    """
    Interpolate the counts at t = 1..n+1 and confirm the result at t = n+2.

    Args:
        region: region to dilate
        workers: optional thread count for the independent counts

    Returns:
        The Ehrhart polynomial, with n! * coefficient integral
    """
    n = region.n
    nodes = list(range(1, n + 3))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda t: count_points(region, t), nodes))
    else:
        values = [count_points(region, t) for t in nodes]

    poly = RatPolynomial.interpolate(list(zip(nodes[:-1], values[:-1])))
    if poly.evaluate(nodes[-1]) != values[-1]:
        raise ValueError(f"counts of {region.describe()} are not given by a polynomial of degree <= {n}")
    scale = math.factorial(n)
    for c in poly.coeffs:
        if (c * scale).denominator != 1:
            raise ValueError(f"coefficient {c} of {region.describe()} has denominator not dividing {n}!")
    return poly


def series_from_polynomial(poly: RatPolynomial, n: int) -> IntPolynomial:
    """
    (1 - z)^(n+1) * sum_t poly(t) z^t, for poly of degree <= n, computed on
    the first n+2 terms and truncated at degree n+1.
    """
    values = [poly.evaluate(t) for t in range(n + 2)]
    for t, v in enumerate(values):
        if v.denominator != 1:
            raise ValueError(f"polynomial value {v} at t={t} is not an integer")
    partial = IntPolynomial(tuple(int(v) for v in values))
    product = partial * (IntPolynomial((1, -1)) ** (n + 1))
    return IntPolynomial(product.coeffs[:n + 2])


def ehrhart_series(region: SliceRegion) -> IntPolynomial:
    return series_from_polynomial(ehrhart_polynomial(region), region.n)


def cube_series(n: int, r: int, closed: bool = True) -> IntPolynomial:
    """E* of [0, r]^n (closed) or [0, r)^n, from (rt + 1)^n or (rt)^n."""
    base = RatPolynomial.linear(1 if closed else 0, r)
    poly = RatPolynomial.one()
    for _ in range(n):
        poly = poly * base
    return series_from_polynomial(poly, n)


def _slice_polynomial(n: int, r: int, k: int, make) -> IntPolynomial:
    if n < 0 or r < 1:
        raise ValueError(f"invalid dimensions n={n} r={r}")
    if k == 0:
        return IntPolynomial.one() if n == 0 else IntPolynomial.zero()
    if not 1 <= k <= r * n:
        return IntPolynomial.zero()
    return ehrhart_series(make(n, r, k))


def a_polynomial(n: int, r: int, k: int) -> IntPolynomial:
    """Ehrhart series of the A-slice, with A_{n,0} = delta_{n0} and 0 out of range."""
    return _slice_polynomial(n, r, k, SliceRegion.a_slice)


def b_polynomial(n: int, r: int, k: int) -> IntPolynomial:
    """Ehrhart series of the B-slice, with B_{n,0} = delta_{n0} and 0 out of range."""
    return _slice_polynomial(n, r, k, SliceRegion.b_slice)


def eulerian_polynomial(n: int) -> IntPolynomial:
    """A_n(z) = sum over S_n of z^des, by enumeration."""
    return IntPolynomial.from_dict(distribution(n, 1, "des_perm"))


# ---------------- Identity checks ----------------

def _slices(n: int, r: int):
    for k in range(1, r * n + 1):
        yield SliceRegion.a_slice(n, r, k)
        yield SliceRegion.b_slice(n, r, k)


def verify_dp_matches_naive(max_n: int = 3, max_r: int = 2, max_t: int = 3) -> VerdictReport:
    params = {"max_n": max_n, "max_r": max_r, "max_t": max_t}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for region in _slices(n, r):
                for t in range(1, max_t + 1):
                    fast, slow = count_points(region, t), count_points_naive(region, t)
                    if fast != slow:
                        return VerdictReport.failure("lattice.dp_matches_naive", params,
                                                     {"region": region.describe(), "t": t,
                                                      "dp": fast, "naive": slow})
    return VerdictReport.success("lattice.dp_matches_naive", params)


def verify_interpolation(max_n: int, max_r: int, workers: Optional[int] = None) -> VerdictReport:
    """Interpolants reproduce the counts at t = 1..n+3; series are nonnegative."""
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for region in _slices(n, r):
                poly = ehrhart_polynomial(region, workers)
                for t in range(1, n + 4):
                    if poly.evaluate(t) != count_points(region, t):
                        return VerdictReport.failure("lattice.interpolation", params,
                                                     {"region": region.describe(), "t": t,
                                                      "polynomial": poly.evaluate(t),
                                                      "count": count_points(region, t)})
                series = series_from_polynomial(poly, n)
                if not series.is_nonnegative():
                    return VerdictReport.failure("lattice.interpolation", params,
                                                 {"region": region.describe(),
                                                  "series": series.to_strings(),
                                                  "reason": "negative Ehrhart series coefficient"})
    return VerdictReport.success("lattice.interpolation", params)


def verify_cell_lemmas(max_n: int = 4) -> VerdictReport:
    """E*(S_sigma) = z^des(sigma^-1) and E*(T_sigma) = z^(des(sigma^-1)+1)."""
    params = {"max_n": max_n}
    for n in range(1, max_n + 1):
        for sigma in itertools.permutations(range(1, n + 1)):
            d = des_perm(inverse(sigma))
            for closed, exponent in ((True, d), (False, d + 1)):
                region = SliceRegion.std_cell(sigma, closed)
                series = ehrhart_series(region)
                if series != IntPolynomial.monomial(exponent):
                    return VerdictReport.failure("lattice.cell_lemmas", params,
                                                 {"region": region.describe(),
                                                  "series": series.to_strings(),
                                                  "expected_exponent": exponent})
    return VerdictReport.success("lattice.cell_lemmas", params)


def verify_cell_decomposition(max_n: int = 5) -> VerdictReport:
    """
    Summing the cell series over S_n gives A_n(z) for the closed cube and
    z A_n(z) for the half-open one; A_n(z) = (1-z)^(n+1) sum (t+1)^n z^t.
    """
    params = {"max_n": max_n}
    for n in range(1, max_n + 1):
        eulerian = eulerian_polynomial(n)
        closed_total = IntPolynomial.zero()
        open_total = IntPolynomial.zero()
        for sigma in itertools.permutations(range(1, n + 1)):
            closed_total = closed_total + ehrhart_series(SliceRegion.std_cell(sigma, True))
            open_total = open_total + ehrhart_series(SliceRegion.std_cell(sigma, False))
        checks = (
            ("closed_cells", closed_total, eulerian),
            ("halfopen_cells", open_total, eulerian.shift(1)),
            ("closed_cube", cube_series(n, 1, True), eulerian),
            ("halfopen_cube", cube_series(n, 1, False), eulerian.shift(1)),
        )
        for label, got, expected in checks:
            if got != expected:
                return VerdictReport.failure("lattice.cell_decomposition", params,
                                             {"n": n, "check": label, "series": got.to_strings(),
                                              "expected": expected.to_strings()})
    return VerdictReport.success("lattice.cell_decomposition", params)


def verify_eulerian_series(max_n: int = 6) -> VerdictReport:
    """A_n(z) = (1-z)^(n+1) sum_t (t+1)^n z^t as a truncated series."""
    params = {"max_n": max_n}
    for n in range(0, max_n + 1):
        series = series_from_polynomial(_power(RatPolynomial.linear(1, 1), n), n)
        if series != eulerian_polynomial(n):
            return VerdictReport.failure("lattice.eulerian_series", params,
                                         {"n": n, "series": series.to_strings(),
                                          "enumerated": eulerian_polynomial(n).to_strings()})
    return VerdictReport.success("lattice.eulerian_series", params)


def _power(base: RatPolynomial, exponent: int) -> RatPolynomial:
    result = RatPolynomial.one()
    for _ in range(exponent):
        result = result * base
    return result


def verify_a_series(max_n: int, max_r: int) -> VerdictReport:
    """A_{n,k}(z) = sum over fdes = k-1 of z^(des(sigma^-1)+1)."""
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            combinatorial = graded_polynomials(n, r, "fdes", "ides", offset=1)
            for k in range(1, r * n + 1):
                got = a_polynomial(n, r, k)
                expected = combinatorial.get(k - 1, IntPolynomial.zero())
                if got != expected:
                    return VerdictReport.failure("lattice.a_series", params,
                                                 {"n": n, "r": r, "k": k, "ehrhart": got.to_strings(),
                                                  "combinatorial": expected.to_strings()})
    return VerdictReport.success("lattice.a_series", params)


def b_combinatorial(n: int, r: int, grade: str, weight: str) -> Dict[int, IntPolynomial]:
    """k -> sum over {grade = rn - k} of z^weight."""
    table = graded_polynomials(n, r, grade, weight)
    return {r * n - g: poly for g, poly in table.items()}


B_SUMS = {
    "fexc_ceil_fdes_star": ("fexc", "ceil_fdes_star_r"),
    "fexc_ceil_fdes": ("fexc", "ceil_fdes_r"),
    "cdes_cover_cef": ("cdes", "cover_cef"),
}


def verify_b_series(max_n: int, max_r: int) -> VerdictReport:
    """
    B_{n,k}(z) equals each of the sums over fexc = rn - k of z^ceil(fdes*/r)
    and z^ceil(fdes/r), and the sum over cdes = rn - k of z^(cover + cef).
    """
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            ehrhart = {k: b_polynomial(n, r, k) for k in range(0, r * n + 1)}
            ehrhart = {k: p for k, p in ehrhart.items() if not p.is_zero()}
            for label, (grade, weight) in B_SUMS.items():
                mismatch = first_mismatch(ehrhart, b_combinatorial(n, r, grade, weight),
                                          "ehrhart", label, default=IntPolynomial.zero())
                if mismatch:
                    return VerdictReport.failure("lattice.b_series", params,
                                                 {"n": n, "r": r, "sum": label, **mismatch})
    return VerdictReport.success("lattice.b_series", params)


def verify_inclusion_exclusion(max_n: int, max_r: int) -> VerdictReport:
    """B_{n,k}(z) = sum_j binom(n, j) (1-z)^j A_{n-j, k-rj}(z)."""
    params = {"max_n": max_n, "max_r": max_r}
    one_minus_z = IntPolynomial((1, -1))
    for n in range(0, max_n + 1):
        for r in range(1, max_r + 1):
            for k in range(0, r * n + 1):
                total = IntPolynomial.zero()
                for j in range(0, n + 1):
                    total = total + (one_minus_z ** j) * a_polynomial(n - j, r, k - r * j) * math.comb(n, j)
                expected = b_polynomial(n, r, k)
                if total != expected:
                    return VerdictReport.failure("lattice.inclusion_exclusion", params,
                                                 {"n": n, "r": r, "k": k,
                                                  "b_polynomial": expected.to_strings(),
                                                  "alternating_sum": total.to_strings()})
    return VerdictReport.success("lattice.inclusion_exclusion", params)


def verify_slice_additivity(max_n: int, max_r: int) -> VerdictReport:
    """The B-slices tile [0, r]^n and the A-slices tile [0, r)^n."""
    params = {"max_n": max_n, "max_r": max_r}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for family, make, closed in (("B", b_polynomial, True), ("A", a_polynomial, False)):
                total = IntPolynomial.zero()
                for k in range(1, r * n + 1):
                    total = total + make(n, r, k)
                cube = cube_series(n, r, closed)
                if total != cube:
                    return VerdictReport.failure("lattice.slice_additivity", params,
                                                 {"n": n, "r": r, "family": family,
                                                  "slice_sum": total.to_strings(),
                                                  "cube": cube.to_strings()})
    return VerdictReport.success("lattice.slice_additivity", params)
