"""
Standardization, colored standardization, the map phi on the half-open cube
[0, r)^n and its inverse, the color maps alpha / alpha*, and the block
involution on colored permutations.

Points are exact: coordinates are Fractions on a grid of denominator t.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from permstats import (ColoredPermutation, all_colored, cdes, ceil_div, fdes, fdes_star,
                       fexc)
from verdicts import VerdictReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridPoint:
    """A point of [0, r)^n (or [0, r]^n when closed) with coordinates in (1/t)Z."""

    coords: Tuple[Fraction, ...]
    r: int
    t: int = 1
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if self.r < 1:
            raise ValueError(f"upper bound r={self.r} must be >= 1")
        if self.t < 1:
            raise ValueError(f"denominator t={self.t} must be >= 1")
        for c in self.coords:
            if c < 0 or c > self.r or (c == self.r and not self.closed):
                bracket = "]" if self.closed else ")"
                raise ValueError(f"coordinate {c} outside [0, {self.r}{bracket}")
            if (c * self.t).denominator != 1:
                raise ValueError(f"coordinate {c} is not a multiple of 1/{self.t}")

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def grid(cls, n: int, r: int, t: int) -> Iterator["GridPoint"]:
        """All half-open grid points of [0, r)^n with denominator t."""
        steps = [Fraction(j, t) for j in range(r * t)]
        for coords in itertools.product(steps, repeat=n):
            yield cls(coords, r, t)


def std(values: Sequence) -> Tuple[int, ...]:
    """
    Standardization: the permutation sigma with v_i <= v_j iff sigma_i < sigma_j
    for i < j. Equal values are ranked left to right.
    """
    if not values:
        return ()
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    sigma = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        sigma[i] = rank
    return tuple(sigma)


def des_values(values: Sequence) -> int:
    return sum(1 for a, b in zip(values, values[1:]) if a > b)


def _require_half_open(v: GridPoint) -> None:
    for c in v.coords:
        if c < 0 or c >= v.r:
            raise ValueError(f"coordinate {c} outside [0, {v.r})")


def cstd(v: GridPoint) -> ColoredPermutation:
    """Colors are floors, sigma standardizes the fractional parts."""
    _require_half_open(v)
    colors = tuple(math.floor(c) for c in v.coords)
    fractional = [c - math.floor(c) for c in v.coords]
    return ColoredPermutation(std(fractional), colors, v.r)


def fdes_point(v: GridPoint) -> Fraction:
    if v.n == 0:
        raise ValueError("fdes_point needs a nonempty point")
    return v.r * des_values(v.coords) + v.coords[-1]


def phi(a: GridPoint) -> GridPoint:
    """b_i = a_i - a_{i-1}, plus r when a_{i-1} > a_i (with a_0 = 0)."""
    _require_half_open(a)
    previous = Fraction(0)
    b = []
    for ai in a.coords:
        step = ai - previous
        b.append(step if previous <= ai else step + a.r)
        previous = ai
    return GridPoint(tuple(b), a.r, a.t)


def phi_inv(b: GridPoint) -> GridPoint:
    """a_i = (b_1 + ... + b_i) mod r, taken in [0, r)."""
    _require_half_open(b)
    total = Fraction(0)
    a = []
    for bi in b.coords:
        total += bi
        a.append(total % b.r)
    return GridPoint(tuple(a), b.r, b.t)


def alpha(p: ColoredPermutation) -> ColoredPermutation:
    """c'_i = c_1 + ... + c_i + des(sigma_1..sigma_i) mod r."""
    colors = []
    running = 0
    for i in range(p.n):
        running += p.colors[i]
        if i > 0 and p.sigma[i - 1] > p.sigma[i]:
            running += 1
        colors.append(running % p.r)
    return ColoredPermutation(p.sigma, tuple(colors), p.r)


def alpha_star(p: ColoredPermutation) -> ColoredPermutation:
    """c''_i = c_i + ... + c_n + des(sigma_i..sigma_n) mod r."""
    colors = [0] * p.n
    running = 0
    for i in reversed(range(p.n)):
        running += p.colors[i]
        if i < p.n - 1 and p.sigma[i] > p.sigma[i + 1]:
            running += 1
        colors[i] = running % p.r
    return ColoredPermutation(p.sigma, tuple(colors), p.r)


def color_blocks(p: ColoredPermutation) -> List[List[Tuple[int, int]]]:
    """Factor the letter word into the fewest blocks of constant color."""
    blocks: List[List[Tuple[int, int]]] = []
    for letter in p.letters():
        if blocks and blocks[-1][0][1] == letter[1]:
            blocks[-1].append(letter)
        else:
            blocks.append([letter])
    return blocks


def block_involution(p: ColoredPermutation) -> ColoredPermutation:
    """
    Zero-colored blocks stay in place; each maximal run of nonzero-colored
    blocks is written in reverse block order.
    """
    out: List[Tuple[int, int]] = []
    run: List[List[Tuple[int, int]]] = []
    for block in color_blocks(p):
        if block[0][1] == 0:
            for b in reversed(run):
                out.extend(b)
            run = []
            out.extend(block)
        else:
            run.append(block)
    for b in reversed(run):
        out.extend(b)
    return ColoredPermutation.from_letters(out, p.r)


# ---------------- Identity checks ----------------

def verify_std_example() -> VerdictReport:
    x, y, z = 1, 2, 3
    got = std((x, y, x, z, y, x, x))
    expected = (1, 5, 2, 7, 6, 3, 4)
    if got != expected:
        return VerdictReport.failure("bijections.std_example", {},
                                     {"expected": list(expected), "actual": list(got)})
    return VerdictReport.success("bijections.std_example", {})


def verify_phi_grid(max_n: int, max_r: int, max_t: int) -> VerdictReport:
    """
    phi and phi_inv are inverse bijections of every half-open grid, and the
    coordinate sum of phi(a) is fdes_point(a) (so level sets are transported).
    """
    params = {"max_n": max_n, "max_r": max_r, "max_t": max_t}
    checked = 0
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for t in range(1, max_t + 1):
                images = set()
                for a in GridPoint.grid(n, r, t):
                    b = phi(a)
                    checked += 1
                    if phi_inv(b) != a:
                        return VerdictReport.failure("bijections.phi_grid", params,
                                                     {"point": list(a.coords), "phi": list(b.coords),
                                                      "reason": "phi_inv(phi(a)) != a"})
                    if phi(phi_inv(a)) != a:
                        return VerdictReport.failure("bijections.phi_grid", params,
                                                     {"point": list(a.coords),
                                                      "reason": "phi(phi_inv(b)) != b"})
                    if sum(b.coords) != fdes_point(a):
                        return VerdictReport.failure("bijections.phi_grid", params,
                                                     {"point": list(a.coords), "sum_phi": sum(b.coords),
                                                      "fdes_point": fdes_point(a)})
                    images.add(b.coords)
                if len(images) != (r * t) ** n:
                    return VerdictReport.failure("bijections.phi_grid", params,
                                                 {"n": n, "r": r, "t": t, "image_size": len(images),
                                                  "grid_size": (r * t) ** n})
    return VerdictReport.success("bijections.phi_grid", params, points=checked)


def verify_cstd_floor(max_n: int, max_r: int, max_t: int) -> VerdictReport:
    """floor(fdes_point(v)) = fdes(cstd(v)) on every grid point."""
    params = {"max_n": max_n, "max_r": max_r, "max_t": max_t}
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for t in range(1, max_t + 1):
                for v in GridPoint.grid(n, r, t):
                    left = math.floor(fdes_point(v))
                    right = fdes(cstd(v))
                    if left != right:
                        return VerdictReport.failure("bijections.cstd_floor", params,
                                                     {"point": list(v.coords), "floor_fdes": left,
                                                      "fdes_cstd": right})
    return VerdictReport.success("bijections.cstd_floor", params)


def _check_color_map(name: str, mapping, flag, max_n: int, max_r: int) -> VerdictReport:
    params = {"max_n": max_n, "max_r": max_r}
    for r in range(1, max_r + 1):
        for n in range(1, max_n + 1):
            images = set()
            for p in all_colored(n, r):
                q = mapping(p)
                if q.sigma != p.sigma:
                    return VerdictReport.failure(name, params, {"input": str(p), "image": str(q),
                                                                "reason": "sigma changed"})
                if flag(q) != cdes(p):
                    return VerdictReport.failure(name, params, {"input": str(p), "image": str(q),
                                                                "flag": flag(q), "cdes": cdes(p)})
                images.add(q)
            expected = r ** n * math.factorial(n)
            if len(images) != expected:
                return VerdictReport.failure(name, params, {"n": n, "r": r, "image_size": len(images),
                                                            "expected": expected})
    return VerdictReport.success(name, params)


def verify_alpha(max_n: int, max_r: int) -> VerdictReport:
    """fdes(alpha(p)) = cdes(p), and alpha is a bijection."""
    return _check_color_map("bijections.alpha", alpha, fdes, max_n, max_r)


def verify_alpha_star(max_n: int, max_r: int) -> VerdictReport:
    """fdes*(alpha*(p)) = cdes(p), and alpha* is a bijection."""
    return _check_color_map("bijections.alpha_star", alpha_star, fdes_star, max_n, max_r)


def verify_block_involution(max_n: int, max_r: int) -> VerdictReport:
    """I is an involution preserving fexc and sending ceil(fdes/r) to ceil(fdes*/r)."""
    params = {"max_n": max_n, "max_r": max_r}
    for r in range(1, max_r + 1):
        for n in range(1, max_n + 1):
            for p in all_colored(n, r):
                q = block_involution(p)
                witness: Dict[str, Any] = {}
                if block_involution(q) != p:
                    witness = {"reason": "I(I(p)) != p"}
                elif fexc(q) != fexc(p):
                    witness = {"reason": "fexc changed", "fexc": fexc(p), "fexc_image": fexc(q)}
                elif ceil_div(fdes(p), r) != ceil_div(fdes_star(q), r):
                    witness = {"reason": "ceil(fdes/r) != ceil(fdes*(I)/r)",
                               "ceil_fdes": ceil_div(fdes(p), r),
                               "ceil_fdes_star_image": ceil_div(fdes_star(q), r)}
                if witness:
                    return VerdictReport.failure("bijections.block_involution", params,
                                                 {"input": str(p), "image": str(q), **witness})
    return VerdictReport.success("bijections.block_involution", params)


def verify_involution_example() -> VerdictReport:
    letters = [(8, 1), (2, 0), (7, 2), (1, 2), (4, 1), (3, 0), (5, 1), (6, 1)]
    expected = [(8, 1), (2, 0), (4, 1), (7, 2), (1, 2), (3, 0), (5, 1), (6, 1)]
    got = block_involution(ColoredPermutation.from_letters(letters, 3)).letters()
    if got != expected:
        return VerdictReport.failure("bijections.involution_example", {"r": 3},
                                     {"expected": expected, "actual": got})
    return VerdictReport.success("bijections.involution_example", {"r": 3})
