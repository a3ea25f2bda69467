"""
Colored permutations and their statistics.

A colored permutation is a pair (sigma, c): sigma is a permutation of 1..n
(stored 1-based) and c a color vector with entries in 0..r-1.
"""

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from polynomials import IntPolynomial
from verdicts import VerdictReport, first_mismatch

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class ColoredPermutation:
    sigma: Permutation
    colors: Tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.r < 1:
            raise ValueError(f"color modulus r={self.r} must be >= 1")
        if len(self.sigma) != len(self.colors):
            raise ValueError(f"sigma has length {len(self.sigma)} but colors has {len(self.colors)}")
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of 1..{len(self.sigma)}")
        for c in self.colors:
            if not 0 <= c < self.r:
                raise ValueError(f"color {c} outside 0..{self.r - 1}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def letters(self) -> List[Tuple[int, int]]:
        """The word (sigma_1, c_1) ... (sigma_n, c_n)."""
        return list(zip(self.sigma, self.colors))

    @classmethod
    def from_letters(cls, letters: Sequence[Tuple[int, int]], r: int) -> "ColoredPermutation":
        return cls(tuple(s for s, _ in letters), tuple(c for _, c in letters), r)

    @classmethod
    def uncolored(cls, sigma: Sequence[int]) -> "ColoredPermutation":
        return cls(tuple(sigma), (0,) * len(sigma), 1)

    def __str__(self) -> str:
        return " ".join(f"({s},{c})" for s, c in self.letters()) or "()"


# Enumerations are reused by every statistic table; keep one copy per (n, r)
_ENUMERATION_CACHE: Dict[Tuple[int, int], Tuple[ColoredPermutation, ...]] = {}


def _check_size(n: int, r: int) -> None:
    if n < 0:
        raise ValueError(f"length n={n} must be >= 0")
    if r < 1:
        raise ValueError(f"color modulus r={r} must be >= 1")


def enumerate_colored(n: int, r: int) -> Iterator[ColoredPermutation]:
    """
    All r^n * n! colored permutations of length n, in lexicographic order
    of (sigma, colors).
    """
    _check_size(n, r)
    for sigma in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(r), repeat=n):
            yield ColoredPermutation(sigma, colors, r)


def all_colored(n: int, r: int) -> Tuple[ColoredPermutation, ...]:
    """Cached tuple form of enumerate_colored."""
    key = (n, r)
    if key not in _ENUMERATION_CACHE:
        _check_size(n, r)
        logger.info(f"Enumerating colored permutations n={n} r={r}")
        _ENUMERATION_CACHE[key] = tuple(enumerate_colored(n, r))
    return _ENUMERATION_CACHE[key]


# ---------------- Permutation statistics ----------------

def des_perm(sigma: Sequence) -> int:
    """Number of positions i with sigma_i > sigma_{i+1}."""
    return sum(1 for a, b in zip(sigma, sigma[1:]) if a > b)


def inverse(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, value in enumerate(sigma, start=1):
        inv[value - 1] = i
    return tuple(inv)


def des(p: ColoredPermutation) -> int:
    count = 0
    for i in range(p.n - 1):
        ci, cj = p.colors[i], p.colors[i + 1]
        if ci > cj or (ci == cj and p.sigma[i] > p.sigma[i + 1]):
            count += 1
    return count


def fdes(p: ColoredPermutation) -> int:
    """Flag descent number r.des + c_n."""
    if p.n == 0:
        raise ValueError("fdes is undefined for the empty colored permutation")
    return p.r * des(p) + p.colors[-1]


def des_star(p: ColoredPermutation) -> int:
    count = 0
    for i in range(p.n - 1):
        ci, cj = p.colors[i], p.colors[i + 1]
        if ci < cj or (ci == cj and p.sigma[i] > p.sigma[i + 1]):
            count += 1
    return count


def fdes_star(p: ColoredPermutation) -> int:
    """Flag descent number r.des* + c_1."""
    if p.n == 0:
        raise ValueError("fdes_star is undefined for the empty colored permutation")
    return p.r * des_star(p) + p.colors[0]


def fexc(p: ColoredPermutation) -> int:
    """r times the zero-colored excedences plus the color sum."""
    zero_excedences = sum(1 for i, (s, c) in enumerate(p.letters(), start=1) if s > i and c == 0)
    return p.r * zero_excedences + sum(p.colors)


def cdes(p: ColoredPermutation) -> int:
    """Chromatic descent number des(sigma) + color sum."""
    return des_perm(p.sigma) + sum(p.colors)


def cover(sigma: Sequence[int]) -> int:
    # sigma^{-1}(0) = 0
    inv = (0,) + inverse(sigma)
    return sum(1 for i in range(1, len(sigma) + 1) if inv[i - 1] + 1 < inv[i])


def cef(p: ColoredPermutation) -> int:
    # sigma(0) = 0
    padded = (0,) + p.sigma
    return sum(1 for i in range(1, p.n + 1)
               if p.colors[i - 1] > 0 and padded[i - 1] + 1 == padded[i])


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _flag_or_zero(stat: Callable[[ColoredPermutation], int]) -> Callable[[ColoredPermutation], int]:
    # The empty permutation gets 0 so generating functions have a constant term
    def wrapped(p: ColoredPermutation) -> int:
        return stat(p) if p.n > 0 else 0
    wrapped.__name__ = stat.__name__
    return wrapped


_fdes0 = _flag_or_zero(fdes)
_fdes_star0 = _flag_or_zero(fdes_star)

# Closed registry of statistic names usable in joint distributions
STATISTICS: Dict[str, Callable[[ColoredPermutation], int]] = {
    "des_perm": lambda p: des_perm(p.sigma),
    "ides": lambda p: des_perm(inverse(p.sigma)),
    "des": des,
    "fdes": _fdes0,
    "des_star": des_star,
    "fdes_star": _fdes_star0,
    "fexc": fexc,
    "cdes": cdes,
    "cover": lambda p: cover(p.sigma),
    "cef": cef,
    "cover_cef": lambda p: cover(p.sigma) + cef(p),
    "ceil_fdes_r": lambda p: ceil_div(_fdes0(p), p.r),
    "ceil_fdes_star_r": lambda p: ceil_div(_fdes_star0(p), p.r),
}


def get_statistic(name: str) -> Callable[[ColoredPermutation], int]:
    if name not in STATISTICS:
        raise ValueError(f"unknown statistic {name!r}; expected one of {sorted(STATISTICS)}")
    return STATISTICS[name]


def get_all_statistics() -> List[str]:
    return list(STATISTICS.keys())


# ---------------- Distributions ----------------

def flag_eulerian(n: int, r: int, k: int) -> int:
    """
    Number of colored permutations with fdes = k - 1, by enumeration.

    Follows the conventions A_{0,0} = 1, A_{n,0} = 0 for n > 0, and 0 for any
    k outside 1..rn.
    """
    _check_size(n, r)
    if n == 0:
        return 1 if k == 0 else 0
    if not 1 <= k <= r * n:
        return 0
    return flag_eulerian_row(n, r)[k - 1]


def flag_eulerian_row(n: int, r: int) -> List[int]:
    """
    [A_{n,1}, ..., A_{n,rn}] from a single pass over the colored permutations
    ([1] for n = 0). Streams the enumeration unless it is already cached.
    """
    _check_size(n, r)
    if n == 0:
        return [1]
    source = _ENUMERATION_CACHE.get((n, r)) or enumerate_colored(n, r)
    counts = Counter(fdes(p) for p in source)
    return [counts.get(k - 1, 0) for k in range(1, r * n + 1)]


def distribution(n: int, r: int, stat: str) -> Dict[int, int]:
    f = get_statistic(stat)
    return dict(Counter(f(p) for p in all_colored(n, r)))


def _count_pairs(chunk: Sequence[ColoredPermutation],
                 fa: Callable[[ColoredPermutation], int],
                 fb: Callable[[ColoredPermutation], int]) -> Counter:
    return Counter((fa(p), fb(p)) for p in chunk)


def joint_distribution(n: int, r: int, stat_a: str, stat_b: str,
                       chunks: int = 1, workers: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """
    Table of counts indexed by (stat_a value, stat_b value).

    Args:
        n: length
        r: color modulus
        stat_a: name from STATISTICS
        stat_b: name from STATISTICS
        chunks: number of contiguous pieces the enumeration is split into
        workers: thread count used to reduce the pieces (None means sequential)

    Returns:
        Dict of counts; identical for every choice of chunks and workers
    """
    fa, fb = get_statistic(stat_a), get_statistic(stat_b)
    items = all_colored(n, r)
    chunks = max(1, min(chunks, len(items)))
    size = -(-len(items) // chunks)
    pieces = [items[i:i + size] for i in range(0, len(items), size)] or [()]

    total: Counter = Counter()
    if workers and workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for partial in pool.map(lambda piece: _count_pairs(piece, fa, fb), pieces):
                total.update(partial)
    else:
        for piece in pieces:
            total.update(_count_pairs(piece, fa, fb))
    return dict(total)


def graded_polynomials(n: int, r: int, grade: str, weight: str,
                       offset: int = 0) -> Dict[int, IntPolynomial]:
    """Map k -> sum over {grade = k} of z^(weight + offset)."""
    table = joint_distribution(n, r, grade, weight)
    terms: Dict[int, Dict[int, int]] = {}
    for (g, w), count in table.items():
        row = terms.setdefault(g, {})
        row[w + offset] = row.get(w + offset, 0) + count
    return {g: IntPolynomial.from_dict(row) for g, row in terms.items()}


def bivariate_polynomial(n: int, r: int, stat_y: str, stat_z: str,
                         offset_y: int = 0, offset_z: int = 0) -> Dict[Tuple[int, int], int]:
    """Sum of y^(stat_y + offset_y) z^(stat_z + offset_z) as an exponent table."""
    table = joint_distribution(n, r, stat_y, stat_z)
    return {(a + offset_y, b + offset_z): c for (a, b), c in table.items()}


def find_joint_difference(n: int, r: int, pair_a: Tuple[str, str],
                          pair_b: Tuple[str, str], workers: Optional[int] = None) -> Optional[Dict]:
    """First value where the joint distributions of two statistic pairs differ."""
    chunks = workers or 1
    ja = joint_distribution(n, r, *pair_a, chunks=chunks, workers=workers)
    jb = joint_distribution(n, r, *pair_b, chunks=chunks, workers=workers)
    for key in sorted(set(ja) | set(jb)):
        if ja.get(key, 0) != jb.get(key, 0):
            return {"n": n, "r": r, "value": key,
                    "count_" + "_".join(pair_a): ja.get(key, 0),
                    "count_" + "_".join(pair_b): jb.get(key, 0)}
    return None


# ---------------- Identity checks ----------------

def _grid(max_n: int, max_r: int, min_n: int = 0):
    for r in range(1, max_r + 1):
        for n in range(min_n, max_n + 1):
            yield n, r


def verify_equidistribution(max_n: int, max_r: int) -> VerdictReport:
    """fdes, fdes* and cdes have the same distribution."""
    params = {"max_n": max_n, "max_r": max_r}
    for n, r in _grid(max_n, max_r):
        base = distribution(n, r, "fdes")
        for other in ("fdes_star", "cdes"):
            mismatch = first_mismatch(base, distribution(n, r, other), "fdes", other)
            if mismatch:
                return VerdictReport.failure("permstats.equidistribution", params,
                                             {"n": n, "r": r, **mismatch})
    return VerdictReport.success("permstats.equidistribution", params)


def verify_pair_equidistribution(max_n: int, max_r: int, workers: Optional[int] = None) -> VerdictReport:
    """(fexc, ceil(fdes/r)) and (fexc, ceil(fdes*/r)) are equidistributed."""
    params = {"max_n": max_n, "max_r": max_r}
    for n, r in _grid(max_n, max_r):
        witness = find_joint_difference(n, r, ("fexc", "ceil_fdes_r"), ("fexc", "ceil_fdes_star_r"),
                                        workers)
        if witness:
            return VerdictReport.failure("permstats.pair_equidistribution", params, witness)
    return VerdictReport.success("permstats.pair_equidistribution", params)


def find_fexc_fdes_witness(max_n: int, max_r: int) -> Optional[Dict]:
    """Smallest (n, r) where (fexc, fdes) and (fexc, fdes*) are not equidistributed."""
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            witness = find_joint_difference(n, r, ("fexc", "fdes"), ("fexc", "fdes_star"))
            if witness:
                return witness
    return None


def verify_fexc_fdes_not_equidistributed(max_n: int, max_r: int) -> VerdictReport:
    """
    The pairs (fexc, fdes) and (fexc, fdes*) differ somewhere; the first
    difference appears at n = 2, r = 2, so smaller bounds pass vacuously.
    """
    params = {"max_n": max_n, "max_r": max_r}
    witness = find_fexc_fdes_witness(max_n, max_r)
    if witness:
        return VerdictReport.success("permstats.fexc_fdes_negative", params, found=witness)
    if max_n < 2 or max_r < 2:
        return VerdictReport.success("permstats.fexc_fdes_negative", params, vacuous=True)
    return VerdictReport.failure("permstats.fexc_fdes_negative", params,
                                 {"searched": {"max_n": max_n, "max_r": max_r},
                                  "reason": "no pair of differing joint distributions found"})


def verify_li_equidistribution(max_n: int, max_r: int) -> VerdictReport:
    """sum_{fexc=k} z^ceil(fdes/r) = sum_{cdes=k} z^(cover+cef) for every k."""
    params = {"max_n": max_n, "max_r": max_r}
    for n, r in _grid(max_n, max_r):
        left = graded_polynomials(n, r, "fexc", "ceil_fdes_r")
        right = graded_polynomials(n, r, "cdes", "cover_cef")
        mismatch = first_mismatch(left, right, "fexc_side", "cdes_side", default=IntPolynomial.zero())
        if mismatch:
            return VerdictReport.failure("permstats.li_equidistribution", params,
                                         {"n": n, "r": r, **mismatch})
    return VerdictReport.success("permstats.li_equidistribution", params)


def verify_total_mass(max_n: int, max_r: int) -> VerdictReport:
    """sum of y^fexc at y = 1 is r^n n!, and the flag Eulerian numbers sum to it too."""
    params = {"max_n": max_n, "max_r": max_r}
    for n, r in _grid(max_n, max_r):
        expected = r ** n * math.factorial(n)
        fexc_mass = sum(distribution(n, r, "fexc").values())
        eulerian_mass = sum(flag_eulerian_row(n, r))
        if fexc_mass != expected or eulerian_mass != expected:
            return VerdictReport.failure("permstats.total_mass", params,
                                         {"n": n, "r": r, "expected": expected,
                                          "fexc_mass": fexc_mass, "eulerian_mass": eulerian_mass})
    return VerdictReport.success("permstats.total_mass", params)
