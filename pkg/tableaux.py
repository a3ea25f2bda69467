"""
Young diagrams (French notation: row 0 is the bottom row), standard and
semistandard tableaux, and the SYT-descent form of the Ehrhart series of
s_lambda(1^t).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from lattice import series_from_polynomial
from permstats import joint_distribution
from polynomials import IntPolynomial, RatPolynomial
from verdicts import VerdictReport, first_mismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class YoungDiagram:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts {parts} must all be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts {parts} must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def cells(self) -> Iterator[Tuple[int, int]]:
        for row, length in enumerate(self.parts):
            for col in range(length):
                yield row, col

    def hook(self, row: int, col: int) -> int:
        arm = self.parts[row] - col - 1
        leg = sum(1 for above in self.parts[row + 1:] if above > col)
        return arm + leg + 1

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class StandardTableau:
    """Rows listed bottom to top; rows increase rightwards, columns upwards."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        YoungDiagram(tuple(len(row) for row in rows))
        entries = sorted(v for row in rows for v in row)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError(f"entries of {rows} are not 1..{len(entries)}")
        for row in rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError(f"row {row} is not increasing")
        for below, above in zip(rows, rows[1:]):
            if any(above[j] <= below[j] for j in range(len(above))):
                raise ValueError(f"column increase fails between {below} and {above}")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def row_of(self) -> Dict[int, int]:
        return {v: i for i, row in enumerate(self.rows) for v in row}


def partitions(n: int) -> List[YoungDiagram]:
    """All partitions of n, largest first part first."""
    if n < 0:
        raise ValueError(f"n={n} must be >= 0")
    out: List[YoungDiagram] = []

    def build(remaining: int, bound: int, prefix: Tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(YoungDiagram(prefix))
            return
        for part in range(min(remaining, bound), 0, -1):
            build(remaining - part, part, prefix + (part,))

    build(n, n, ())
    return out


def hook_length_count(shape: YoungDiagram) -> int:
    product = 1
    for row, col in shape.cells():
        product *= shape.hook(row, col)
    return math.factorial(shape.size) // product


def enumerate_syt(shape: YoungDiagram) -> Iterator[StandardTableau]:
    """Standard tableaux of the shape, placing 1..n in turn, lowest row first."""
    n = shape.size
    rows: List[List[int]] = [[] for _ in shape.parts]

    def place(value: int) -> Iterator[StandardTableau]:
        if value > n:
            yield StandardTableau(tuple(tuple(row) for row in rows))
            return
        for i, length in enumerate(shape.parts):
            if len(rows[i]) < length and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(value)
                yield from place(value + 1)
                rows[i].pop()

    yield from place(1)


def all_syt(shape: YoungDiagram) -> Tuple[StandardTableau, ...]:
    tableaux = tuple(enumerate_syt(shape))
    expected = hook_length_count(shape)
    if len(tableaux) != expected:
        raise RuntimeError(f"enumerated {len(tableaux)} tableaux of shape {shape}, hook length gives {expected}")
    return tableaux


def des_tableau(tableau: StandardTableau) -> int:
    """Entries i whose successor i+1 sits in a higher row."""
    row_of = tableau.row_of()
    return sum(1 for i in range(1, tableau.size) if row_of[i + 1] > row_of[i])


def schur_ones(shape: YoungDiagram, t: int) -> int:
    """
    Number of semistandard tableaux of the shape with entries in 1..t:
    weakly increasing rows, strictly increasing columns.
    """
    if t < 0:
        raise ValueError(f"t={t} must be >= 0")
    return _count_rows(shape.parts, t, 0, ())


@lru_cache(maxsize=None)
def _count_rows(parts: Tuple[int, ...], t: int, index: int, below: Tuple[int, ...]) -> int:
    if index == len(parts):
        return 1
    total = 0
    for row in _rows_over(parts[index], t, below):
        total += _count_rows(parts, t, index + 1, row)
    return total


def _rows_over(length: int, t: int, below: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Weakly increasing rows in 1..t lying strictly above `below`."""
    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        j = len(prefix)
        if j == length:
            yield prefix
            return
        low = prefix[-1] if prefix else 1
        if below:
            low = max(low, below[j] + 1)
        for v in range(low, t + 1):
            yield from extend(prefix + (v,))

    yield from extend(())


def schur_ones_hook_content(shape: YoungDiagram, t: int) -> int:
    """prod over cells of (t + col - row) / hook."""
    value = Fraction(1)
    for row, col in shape.cells():
        value *= Fraction(t + col - row, shape.hook(row, col))
    if value.denominator != 1:
        raise ValueError(f"hook-content value {value} for {shape} is not an integer")
    return int(value)


def descent_polynomial(shape: YoungDiagram) -> IntPolynomial:
    """sum over standard tableaux of z^(des + 1)."""
    return IntPolynomial.from_exponents(des_tableau(T) + 1 for T in all_syt(shape))


# ---------------- Identity checks ----------------

def verify_syt_counts(max_size: int = 8) -> VerdictReport:
    params = {"max_size": max_size}
    for n in range(1, max_size + 1):
        for shape in partitions(n):
            counted = sum(1 for _ in enumerate_syt(shape))
            if counted != hook_length_count(shape):
                return VerdictReport.failure("tableaux.syt_counts", params,
                                             {"shape": str(shape), "enumerated": counted,
                                              "hook_length": hook_length_count(shape)})
    return VerdictReport.success("tableaux.syt_counts", params)


def verify_hook_content(max_size: int = 6, max_t: int = 6) -> VerdictReport:
    params = {"max_size": max_size, "max_t": max_t}
    for n in range(1, max_size + 1):
        for shape in partitions(n):
            for t in range(0, max_t + 1):
                counted, formula = schur_ones(shape, t), schur_ones_hook_content(shape, t)
                if counted != formula:
                    return VerdictReport.failure("tableaux.hook_content", params,
                                                 {"shape": str(shape), "t": t, "enumerated": counted,
                                                  "hook_content": formula})
    return VerdictReport.success("tableaux.hook_content", params)


def verify_sytdes(shape: YoungDiagram) -> VerdictReport:
    """(1 - z)^(n+1) sum_t s_lambda(1^t) z^t = sum over SYT of z^(des+1)."""
    n = shape.size
    params = {"shape": str(shape)}
    poly = RatPolynomial.interpolate([(t, schur_ones(shape, t)) for t in range(n + 1)])
    check_t = n + 1
    if poly.evaluate(check_t) != schur_ones(shape, check_t):
        return VerdictReport.failure("tableaux.sytdes", params,
                                     {"t": check_t, "interpolated": poly.evaluate(check_t),
                                      "enumerated": schur_ones(shape, check_t)})
    left = series_from_polynomial(poly, n)
    right = descent_polynomial(shape)
    if left != right:
        return VerdictReport.failure("tableaux.sytdes", params,
                                     {"ehrhart_series": left.to_strings(), "syt_descents": right.to_strings()})
    return VerdictReport.success("tableaux.sytdes", params)


def verify_sytdes_all(max_size: int = 7) -> VerdictReport:
    params = {"max_size": max_size}
    for n in range(1, max_size + 1):
        for shape in partitions(n):
            report = verify_sytdes(shape)
            if not report.passed:
                return VerdictReport.failure("tableaux.sytdes", params, report.witness)
    return VerdictReport.success("tableaux.sytdes", params)


def verify_rsk_identity(max_n: int = 5) -> VerdictReport:
    """
    sum over shapes of (sum_P y^(des P + 1)) (sum_Q z^(des Q + 1)) equals
    the joint distribution of (des + 1, des(sigma^-1) + 1) over S_n.
    """
    params = {"max_n": max_n}
    for n in range(1, max_n + 1):
        pairs: Dict[Tuple[int, int], int] = {}
        for shape in partitions(n):
            descents = descent_polynomial(shape)
            for a, ca in enumerate(descents.coeffs):
                for b, cb in enumerate(descents.coeffs):
                    if ca and cb:
                        pairs[(a, b)] = pairs.get((a, b), 0) + ca * cb
        permutations = {(a + 1, b + 1): c for (a, b), c in joint_distribution(n, 1, "fdes", "ides").items()}
        mismatch = first_mismatch(pairs, permutations, "tableau_pairs", "permutations")
        if mismatch:
            return VerdictReport.failure("tableaux.rsk_identity", params, {"n": n, **mismatch})
    return VerdictReport.success("tableaux.rsk_identity", params)
