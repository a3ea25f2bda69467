"""
Truncated power series in (x, y, z) with exact rational coefficients, and the
generating-function identities checked on them.

A TruncSeries keeps every coefficient with x-degree <= Nx, y-degree <= Ny and
z-degree <= Nz. All exponents are nonnegative, so arithmetic in this quotient
ring is exact: every stored coefficient of a sum, product or reciprocal is the
true one. In exponential normalization the entry (n, a, b) is the coefficient
of x^n/n! y^a z^b.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Literal, Optional, Tuple, Union

import numpy as np

from lattice import b_polynomial, cube_series
from permstats import distribution, graded_polynomials, joint_distribution
from polynomials import IntPolynomial
from verdicts import Stopwatch, VerdictReport

logger = logging.getLogger(__name__)

Orders = Tuple[int, int, int]
Index = Tuple[int, int, int]
Scalar = Union[int, Fraction]


class TruncationError(ValueError):
    """Raised for incompatible orders, too small a margin, or a non-unit inverse."""


class TruncSeries:
    def __init__(self, orders: Orders, coeffs: Optional[np.ndarray] = None,
                 exponential: bool = False):
        if any(o < 0 for o in orders):
            raise TruncationError(f"truncation orders {orders} must be nonnegative")
        self.orders: Orders = tuple(int(o) for o in orders)
        self.exponential = exponential
        shape = tuple(o + 1 for o in self.orders)
        if coeffs is None:
            coeffs = np.full(shape, Fraction(0), dtype=object)
        elif coeffs.shape != shape:
            raise TruncationError(f"coefficient array of shape {coeffs.shape} does not match orders {orders}")
        self.coeffs = coeffs

    # ---------- constructors ----------

    @classmethod
    def zeros(cls, orders: Orders, exponential: bool = False) -> "TruncSeries":
        return cls(orders, exponential=exponential)

    @classmethod
    def one(cls, orders: Orders, exponential: bool = False) -> "TruncSeries":
        return cls.monomial(orders, (0, 0, 0), 1, exponential)

    @classmethod
    def monomial(cls, orders: Orders, index: Index, coeff: Scalar = 1,
                 exponential: bool = False) -> "TruncSeries":
        return cls.from_terms(orders, {index: coeff}, exponential)

    @classmethod
    def from_terms(cls, orders: Orders, terms: Dict[Index, Scalar],
                   exponential: bool = False) -> "TruncSeries":
        """Series with the given coefficients; terms beyond the orders are dropped."""
        series = cls(orders, exponential=exponential)
        for (i, j, k), c in terms.items():
            if min(i, j, k) < 0:
                raise TruncationError(f"negative exponent in {(i, j, k)}")
            if i <= orders[0] and j <= orders[1] and k <= orders[2]:
                series.coeffs[i, j, k] += Fraction(c)
        return series

    # ---------- access ----------

    def __getitem__(self, index: Index) -> Fraction:
        i, j, k = index
        if 0 <= i <= self.orders[0] and 0 <= j <= self.orders[1] and 0 <= k <= self.orders[2]:
            return self.coeffs[i, j, k]
        return Fraction(0)

    def terms(self) -> Iterator[Tuple[Index, Fraction]]:
        """Nonzero coefficients in lexicographic order of exponents."""
        for idx in zip(*np.nonzero(self.coeffs)):
            key = tuple(int(v) for v in idx)
            yield key, self.coeffs[key]

    def x_slice(self, n: int) -> Dict[Tuple[int, int], Fraction]:
        return {(j, k): c for (i, j, k), c in self.terms() if i == n}

    def copy(self) -> "TruncSeries":
        return TruncSeries(self.orders, self.coeffs.copy(), self.exponential)

    # ---------- arithmetic ----------

    def _check_compatible(self, other: "TruncSeries") -> None:
        if self.orders != other.orders:
            raise TruncationError(f"truncation orders differ: {self.orders} vs {other.orders}")
        if self.exponential != other.exponential:
            raise TruncationError("cannot combine exponential and ordinary normalizations")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        return TruncSeries(self.orders, self.coeffs + other.coeffs, self.exponential)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        return TruncSeries(self.orders, self.coeffs - other.coeffs, self.exponential)

    def __neg__(self) -> "TruncSeries":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "TruncSeries":
        return TruncSeries(self.orders, self.coeffs * Fraction(factor), self.exponential)

    def __mul__(self, other: Union["TruncSeries", Scalar]) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        nx, ny, nz = self.orders
        out = np.full(self.coeffs.shape, Fraction(0), dtype=object)
        right = list(other.terms())
        for (i1, j1, k1), a in self.terms():
            for (i2, j2, k2), b in right:
                i, j, k = i1 + i2, j1 + j2, k1 + k2
                if i > nx or j > ny or k > nz:
                    continue
                weight = a * b
                if self.exponential:
                    weight *= math.comb(i, i1)
                out[i, j, k] += weight
        return TruncSeries(self.orders, out, self.exponential)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = TruncSeries.one(self.orders, self.exponential)
        for _ in range(exponent):
            result = result * self
        return result

    def reciprocal(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be 1."""
        if self.exponential:
            return self.to_ordinary().reciprocal().to_exponential()
        if self.coeffs[0, 0, 0] != 1:
            raise TruncationError(f"cannot invert a series with constant term {self.coeffs[0, 0, 0]}")
        rest = [(idx, c) for idx, c in self.terms() if idx != (0, 0, 0)]
        inverse = np.full(self.coeffs.shape, Fraction(0), dtype=object)
        # lexicographic order visits alpha - beta before alpha
        for alpha in np.ndindex(*self.coeffs.shape):
            total = Fraction(1) if alpha == (0, 0, 0) else Fraction(0)
            for beta, c in rest:
                if beta[0] <= alpha[0] and beta[1] <= alpha[1] and beta[2] <= alpha[2]:
                    total -= c * inverse[alpha[0] - beta[0], alpha[1] - beta[1], alpha[2] - beta[2]]
            inverse[alpha] = total
        return TruncSeries(self.orders, inverse, False)

    def shift(self, dx: int = 0, dy: int = 0, dz: int = 0) -> "TruncSeries":
        """Multiply by x^dx y^dy z^dz (ordinary normalization in x when dx > 0)."""
        if dx and self.exponential:
            raise TruncationError("x-shift is only defined for ordinary normalization")
        out = TruncSeries(self.orders, exponential=self.exponential)
        for (i, j, k), c in self.terms():
            if i + dx <= self.orders[0] and j + dy <= self.orders[1] and k + dz <= self.orders[2]:
                out.coeffs[i + dx, j + dy, k + dz] = c
        return out

    def with_orders(self, orders: Orders) -> "TruncSeries":
        """Re-truncate (or pad with zeros) to new orders."""
        return TruncSeries.from_terms(orders, dict(self.terms()), self.exponential)

    # ---------- normalization ----------

    def to_ordinary(self) -> "TruncSeries":
        """Same series, written as sum c_n x^n (divides the x^n layer by n!)."""
        if not self.exponential:
            return self.copy()
        out = self.coeffs.copy()
        for n in range(self.orders[0] + 1):
            out[n] = out[n] / math.factorial(n)
        return TruncSeries(self.orders, out, False)

    def to_exponential(self) -> "TruncSeries":
        if self.exponential:
            return self.copy()
        out = self.coeffs.copy()
        for n in range(self.orders[0] + 1):
            out[n] = out[n] * math.factorial(n)
        return TruncSeries(self.orders, out, True)

    def with_normalization(self, exponential: bool) -> "TruncSeries":
        """
        Keep the coefficient table and change its meaning:
        sum a_n x^n/n! <-> sum a_n x^n. Used to read an enumerated
        exponential series as the ordinary series of the same numbers.
        """
        return TruncSeries(self.orders, self.coeffs.copy(), exponential)

    # ---------- comparison ----------

    def compare(self, other: "TruncSeries", zone: Optional[Orders] = None) -> Optional[Dict]:
        """First coefficient (lexicographically) inside zone where the series differ."""
        self._check_compatible(other)
        zone = zone or self.orders
        if any(z < 0 or z > o for z, o in zip(zone, self.orders)):
            raise TruncationError(f"comparison zone {zone} outside orders {self.orders}")
        for idx in np.ndindex(*(z + 1 for z in zone)):
            if self.coeffs[idx] != other.coeffs[idx]:
                return {"x": idx[0], "y": idx[1], "z": idx[2],
                        "left": self.coeffs[idx], "right": other.coeffs[idx]}
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.orders == other.orders and self.exponential == other.exponential
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def __repr__(self) -> str:
        kind = "exponential" if self.exponential else "ordinary"
        return f"TruncSeries(orders={self.orders}, {kind}, terms={len(list(self.terms()))})"


# ---------------- Building blocks ----------------

def _x(orders: Orders) -> TruncSeries:
    return TruncSeries.monomial(orders, (1, 0, 0))


def _y(orders: Orders, power: int = 1) -> TruncSeries:
    return TruncSeries.monomial(orders, (0, power, 0))


def _z(orders: Orders, power: int = 1) -> TruncSeries:
    return TruncSeries.monomial(orders, (0, 0, power))


def default_orders(r: int, nx: int) -> Orders:
    if r < 1 or nx < 0:
        raise ValueError(f"invalid r={r} or Nx={nx}")
    return (nx, r * nx, nx + 1)


def _enumerated(r: int, nx: int, stat_y: str, stat_z: str, place,
                orders: Optional[Orders] = None) -> TruncSeries:
    """sum_n sum_p y^a z^b x^n/n! with (a, b) = place(n, stat_y(p), stat_z(p)); n = 0 term is 1."""
    orders = orders or default_orders(r, nx)
    terms: Dict[Index, int] = {(0, 0, 0): 1}
    for n in range(1, nx + 1):
        for (a, b), count in joint_distribution(n, r, stat_y, stat_z).items():
            key = (n,) + place(n, a, b)
            terms[key] = terms.get(key, 0) + count
    return TruncSeries.from_terms(orders, terms, exponential=True)


def build_A(r: int, nx: int, orders: Optional[Orders] = None) -> TruncSeries:
    """sum over colored permutations of y^(fdes+1) z^(des(sigma^-1)+1) x^n/n!."""
    return _enumerated(r, nx, "fdes", "ides", lambda n, a, b: (a + 1, b + 1), orders)


def build_C(r: int, nx: int, orders: Optional[Orders] = None) -> TruncSeries:
    """sum of y^(rn - fexc) z^ceil(fdes*/r) x^n/n!."""
    return _enumerated(r, nx, "fexc", "ceil_fdes_star_r", lambda n, a, b: (r * n - a, b), orders)


def build_C_fdes(r: int, nx: int, orders: Optional[Orders] = None) -> TruncSeries:
    """As build_C with ceil(fdes/r) in place of ceil(fdes*/r)."""
    return _enumerated(r, nx, "fexc", "ceil_fdes_r", lambda n, a, b: (r * n - a, b), orders)


def build_B(r: int, nx: int, orders: Optional[Orders] = None) -> TruncSeries:
    """sum of B_{n,k}(z) y^k x^n/n! from the lattice counts."""
    orders = orders or default_orders(r, nx)
    terms: Dict[Index, int] = {(0, 0, 0): 1}
    for n in range(1, nx + 1):
        for k in range(1, r * n + 1):
            for b, c in enumerate(b_polynomial(n, r, k).coeffs):
                if c:
                    terms[(n, k, b)] = c
    return TruncSeries.from_terms(orders, terms, exponential=True)


def exp_factor(r: int, orders: Orders, with_z: Literal["one_minus_z", "z", "none"] = "one_minus_z") -> TruncSeries:
    """
    e^(w y^r x) in exponential normalization, where w is (1 - z), z or 1:
    the coefficient of x^j/j! is (w y^r)^j.
    """
    terms: Dict[Index, int] = {}
    for j in range(orders[0] + 1):
        if with_z == "one_minus_z":
            for i in range(j + 1):
                terms[(j, r * j, i)] = math.comb(j, i) * (-1) ** i
        elif with_z == "z":
            terms[(j, r * j, j)] = 1
        else:
            terms[(j, r * j, 0)] = 1
    return TruncSeries.from_terms(orders, terms, exponential=True)


def beta(p: IntPolynomial, r: int) -> IntPolynomial:
    """Linear map z^k -> z^ceil(k/r)."""
    if r < 1:
        raise ValueError(f"r={r} must be >= 1")
    out: Dict[int, int] = {}
    for k, c in enumerate(p.coeffs):
        if c:
            target = -(-k // r)
            out[target] = out.get(target, 0) + c
    return IntPolynomial.from_dict({e: c for e, c in out.items() if c})


# ---------------- F_k ----------------

@lru_cache(maxsize=512)
def f_series(k: int, r: int, nx: int, ny: int) -> TruncSeries:
    """
    F_k(x, y) = (1 - x y^r)^q / (1 - x)^(q+1) * (1 - y^r) * D^-1 with q = floor(k/r) and
    D = (1 - y^r)/(1 - y) - sum_{i=1..r} y^i h^(floor((k-i)/r) + 1), h = (1 - x y^r)/(1 - x).
    """
    orders = (nx, ny, 0)
    one = TruncSeries.one(orders)
    x_yr = _x(orders) * _y(orders, r)
    inv_one_minus_x = (one - _x(orders)).reciprocal()
    h = (one - x_yr) * inv_one_minus_x
    q = k // r
    prefactor = ((one - x_yr) ** q) * (inv_one_minus_x ** (q + 1)) * (one - _y(orders, r))
    denominator = TruncSeries.zeros(orders)
    for i in range(r):
        denominator = denominator + _y(orders, i)
    for i in range(1, r + 1):
        denominator = denominator - _y(orders, i) * (h ** ((k - i) // r + 1))
    return prefactor * denominator.reciprocal()


def f_rm_simplified(m: int, r: int, nx: int, ny: int) -> TruncSeries:
    """(1 - y)/(1 - x) * (((1 - x)/(1 - x y^r))^m - y)^-1."""
    orders = (nx, ny, 0)
    one = TruncSeries.one(orders)
    ratio = (one - _x(orders)) * (one - _x(orders) * _y(orders, r)).reciprocal()
    inner = (ratio ** m) - _y(orders)
    return (one - _y(orders)) * (one - _x(orders)).reciprocal() * inner.reciprocal()


def _lift(bivariate: TruncSeries, orders: Orders, z_power: int) -> TruncSeries:
    return bivariate.with_orders(orders).shift(dz=z_power)


# ---------------- Identity checks ----------------

def _report(identity: str, params: Dict, mismatch: Optional[Dict], **details) -> VerdictReport:
    if mismatch is not None:
        logger.error(f"{identity} failed at {mismatch}")
    return VerdictReport.from_mismatch(identity, params, mismatch, **details)


def verify_exp_relation(lhs: TruncSeries, rhs_base: TruncSeries, r: int,
                        identity: str = "series.exp_relation") -> VerdictReport:
    """lhs = e^((1 - z) y^r x) * rhs_base coefficientwise."""
    if lhs.orders != rhs_base.orders:
        raise TruncationError(f"truncation orders differ: {lhs.orders} vs {rhs_base.orders}")
    if not (lhs.exponential and rhs_base.exponential):
        raise TruncationError("exponential relations need exponential normalization")
    nx, ny, nz = lhs.orders
    if ny < r * nx:
        raise TruncationError(f"y-order {ny} is below r * Nx = {r * nx}")
    product = exp_factor(r, lhs.orders) * rhs_base
    return _report(identity, {"r": r, "orders": list(lhs.orders)}, lhs.compare(product))


def verify_rel_ab(r: int, nx: int) -> VerdictReport:
    """B = e^((1 - z) y^r x) A."""
    return verify_exp_relation(build_B(r, nx), build_A(r, nx), r, "series.rel_ab")


def verify_rel_ac(r: int, nx: int) -> VerdictReport:
    """C = e^((1 - z) y^r x) A."""
    return verify_exp_relation(build_C(r, nx), build_A(r, nx), r, "series.rel_ac")


def verify_b_equals_c(r: int, nx: int) -> VerdictReport:
    b, c = build_B(r, nx), build_C(r, nx)
    return _report("series.b_equals_c", {"r": r, "nx": nx}, b.compare(c))


def verify_b_cube_marginal(r: int, nx: int) -> VerdictReport:
    """Setting y = 1 in the x^n layer of B gives the Ehrhart series of [0, r]^n."""
    params = {"r": r, "nx": nx}
    b = build_B(r, nx)
    for n in range(1, nx + 1):
        marginal: Dict[int, int] = {}
        for (_, k), c in b.x_slice(n).items():
            marginal[k] = marginal.get(k, 0) + int(c)
        got = IntPolynomial.from_dict({k: c for k, c in marginal.items() if c})
        cube = cube_series(n, r, closed=True)
        if got != cube:
            return VerdictReport.failure("series.b_cube_marginal", params,
                                         {"n": n, "marginal": got.to_strings(), "cube": cube.to_strings()})
    return VerdictReport.success("series.b_cube_marginal", params)


def verify_foata_han(r: int, nx: int, nz: Optional[int] = None) -> VerdictReport:
    """
    sum_n W_n(y, z) x^n / (1 - z^r)^n = (1 - z) sum_k z^k F_k(x, y), with
    W_n = sum of y^fexc z^fdes*. Coefficients are compared for z-degree up to
    Nz - r Nx.
    """
    nz = 2 * r * nx if nz is None else nz
    zone_z = nz - r * nx
    if zone_z < 0:
        raise TruncationError(f"z-order {nz} leaves no margin over r * Nx = {r * nx}")
    ny = r * nx
    orders = (nx, ny, nz)
    one = TruncSeries.one(orders)
    inv = (one - _z(orders, r)).reciprocal()

    left = TruncSeries.zeros(orders)
    inv_power = one
    for n in range(nx + 1):
        w = TruncSeries.from_terms(orders, {(n, a, b): c for (a, b), c
                                            in joint_distribution(n, r, "fexc", "fdes_star").items()})
        left = left + w * inv_power
        inv_power = inv_power * inv

    right = TruncSeries.zeros(orders)
    for k in range(nz + 1):
        right = right + _lift(f_series(k, r, nx, ny), orders, k)
    right = (one - _z(orders)) * right

    params = {"r": r, "nx": nx, "nz": nz}
    return _report("series.foata_han", params, left.compare(right, (nx, ny, zone_z)))


def verify_formula_beta_wn(r: int, nx: int, nz: Optional[int] = None) -> VerdictReport:
    """sum_n beta(W_n) x^n/(1 - z)^n = sum_m (z^m - z^(m+1)) F_rm(x, y)."""
    nz = nx + 1 if nz is None else nz
    ny = r * nx
    orders = (nx, ny, nz)
    one = TruncSeries.one(orders)
    inv = (one - _z(orders)).reciprocal()

    left = TruncSeries.zeros(orders)
    inv_power = one
    for n in range(nx + 1):
        w = TruncSeries.from_terms(orders, {(n, a, b): c for (a, b), c
                                            in joint_distribution(n, r, "fexc", "ceil_fdes_star_r").items()})
        left = left + w * inv_power
        inv_power = inv_power * inv

    right = TruncSeries.zeros(orders)
    for m in range(nz + 1):
        f = f_series(r * m, r, nx, ny)
        right = right + _lift(f, orders, m) - _lift(f, orders, m + 1)
    return _report("series.formula_beta_wn", {"r": r, "nx": nx, "nz": nz}, left.compare(right))


def verify_frm_simplification(r: int, nx: int, m_max: int = 3) -> VerdictReport:
    """F_k at k = rm equals (1 - y)/(1 - x) (((1 - x)/(1 - x y^r))^m - y)^-1."""
    ny = r * nx
    params = {"r": r, "nx": nx, "m_max": m_max}
    for m in range(m_max + 1):
        mismatch = f_series(r * m, r, nx, ny).compare(f_rm_simplified(m, r, nx, ny))
        if mismatch:
            return VerdictReport.failure("series.frm_simplification", params, {"m": m, **mismatch})
    return VerdictReport.success("series.frm_simplification", params)


def _ogf_rhs(side: str, r: int, orders: Orders) -> TruncSeries:
    nx, ny, nz = orders
    one = TruncSeries.one(orders)
    x, y, z = _x(orders), _y(orders), _z(orders)
    one_minus_z = one - z
    if side == "A":
        base = (one - x * (one - _y(orders, r)) * one_minus_z).reciprocal()
        prefactor = (one - y) * one_minus_z
    else:
        x_yr_w = x * _y(orders, r) * one_minus_z
        base = (one - x_yr_w) * (one - x * one_minus_z).reciprocal()
        prefactor = one_minus_z * (one - y) * (one - x_yr_w).reciprocal()
    total = TruncSeries.zeros(orders)
    base_power = one
    for m in range(nz + 1):
        total = total + ((one - y * base_power).reciprocal()).shift(dz=m)
        base_power = base_power * base
    return prefactor * total


def verify_ogf(side: Literal["A", "C"], r: int, nx: int, nz: Optional[int] = None) -> VerdictReport:
    """
    Ordinary generating functions: sum_n A_n(y, z) x^n and sum_n C_n(y, z) x^n
    against their m-sum expressions.
    """
    if side not in ("A", "C"):
        raise ValueError(f"side must be 'A' or 'C', got {side!r}")
    nz = nx + 1 if nz is None else nz
    orders = (nx, r * nx, nz)
    builder = build_A if side == "A" else build_C
    enumerated = builder(r, nx, orders).with_normalization(exponential=False)
    rhs = _ogf_rhs(side, r, orders)
    return _report(f"series.ogf_{side.lower()}", {"r": r, "nx": nx, "nz": nz}, enumerated.compare(rhs))


def verify_bijective_display(r: int, nx: int) -> VerdictReport:
    """
    e^(z y^r x) (1 + sum y^(rn - fexc) z^ceil(fdes/r) x^n/n!)
      = e^(y^r x) (1 + sum y^(fdes+1) z^(des(sigma^-1)+1) x^n/n!).
    """
    orders = default_orders(r, nx)
    left = exp_factor(r, orders, "z") * build_C_fdes(r, nx, orders)
    right = exp_factor(r, orders, "none") * build_A(r, nx, orders)
    return _report("series.bijective_display", {"r": r, "nx": nx}, left.compare(right))


def verify_beta_properties(max_r: int = 3, max_k: int = 8) -> VerdictReport:
    """
    beta(z^k - z^(k+1)) vanishes unless r | k, where it is z^m - z^(m+1);
    beta(1) = 1; and beta is not idempotent for r = 2.
    """
    params = {"max_r": max_r, "max_k": max_k}
    for r in range(1, max_r + 1):
        if beta(IntPolynomial.one(), r) != IntPolynomial.one():
            return VerdictReport.failure("series.beta", params, {"r": r, "reason": "beta(1) != 1"})
        for k in range(max_k + 1):
            diff = IntPolynomial.monomial(k) - IntPolynomial.monomial(k + 1)
            got = beta(diff, r)
            if k % r:
                expected = IntPolynomial.zero()
            else:
                m = k // r
                expected = IntPolynomial.monomial(m) - IntPolynomial.monomial(m + 1)
            if got != expected:
                return VerdictReport.failure("series.beta", params,
                                             {"r": r, "k": k, "beta": got.to_strings(),
                                              "expected": expected.to_strings()})
    counterexample = None
    for k in range(max_k + 1):
        once = beta(IntPolynomial.monomial(k), 2)
        if beta(once, 2) != once:
            counterexample = {"r": 2, "k": k, "beta": once.to_strings(),
                              "beta_beta": beta(once, 2).to_strings()}
            break
    if counterexample is None:
        return VerdictReport.failure("series.beta", params,
                                     {"reason": "beta looked idempotent at r = 2", "max_k": max_k})
    return VerdictReport.success("series.beta", params, not_idempotent=counterexample)


def verify_beta_marginal(r: int, max_n: int) -> VerdictReport:
    """beta of the fdes*-marginal of W_n per fexc is the ceil(fdes*/r)-marginal."""
    params = {"r": r, "max_n": max_n}
    for n in range(0, max_n + 1):
        raw = graded_polynomials(n, r, "fexc", "fdes_star")
        ceiled = graded_polynomials(n, r, "fexc", "ceil_fdes_star_r")
        for g in sorted(set(raw) | set(ceiled)):
            got = beta(raw.get(g, IntPolynomial.zero()), r)
            expected = ceiled.get(g, IntPolynomial.zero())
            if got != expected:
                return VerdictReport.failure("series.beta_marginal", params,
                                             {"n": n, "fexc": g, "beta": got.to_strings(),
                                              "expected": expected.to_strings()})
    return VerdictReport.success("series.beta_marginal", params)


def _a_n(n: int, r: int, orders: Orders) -> TruncSeries:
    """A_n^(r)(y, z) = sum y^(fdes+1) z^(des(sigma^-1)+1) on the (y, z) plane."""
    if n == 0:
        return TruncSeries.one(orders)
    return TruncSeries.from_terms(orders, {(0, a + 1, b + 1): c for (a, b), c
                                           in joint_distribution(n, r, "fdes", "ides").items()})


def _binomial_grid(n: int, orders: Orders) -> TruncSeries:
    return TruncSeries.from_terms(orders, {(0, i, j): math.comb(i * j + n - 1, n)
                                           for i in range(orders[1] + 1)
                                           for j in range(orders[2] + 1)})


def _timed(identity: str, params: Dict, search) -> VerdictReport:
    with Stopwatch() as watch:
        mismatch = search()
    report = _report(identity, params, mismatch)
    report.wall_ms = watch.elapsed_ms
    return report


def verify_polynomial_identities(r: int, n_max: int) -> List[VerdictReport]:
    """
    One report each for: A^(r)_n (1-y)^n = (1-y^r)^n A^(1)_n; the binomial
    expansion of A^(r)_n / ((1-y^r)^n (1-y) (1-z)^(n+1)) and its r = 1 case;
    A^(r)_n(y, 1)/((1-y^r)^n (1-y)) = sum i^n y^i; and the equality of the
    (fdes, des(sigma^-1)) and (cdes, des(sigma^-1)) distributions.
    """
    params = {"r": r, "n_max": n_max}

    def relara() -> Optional[Dict]:
        for n in range(0, n_max + 1):
            orders = (0, (r + 1) * n + 1, n + 1)
            one = TruncSeries.one(orders)
            left = _a_n(n, r, orders) * ((one - _y(orders)) ** n)
            right = ((one - _y(orders, r)) ** n) * _a_n(n, 1, orders)
            found = left.compare(right)
            if found:
                return {"n": n, **found}
        return None

    def binomial_expansion(rr: int):
        def search() -> Optional[Dict]:
            for n in range(1, n_max + 1):
                orders = (0, n + 3, n + 3)
                one = TruncSeries.one(orders)
                denominator = ((one - _y(orders, rr)) ** n) * (one - _y(orders)) * ((one - _z(orders)) ** (n + 1))
                left = _a_n(n, rr, orders) * denominator.reciprocal()
                found = left.compare(_binomial_grid(n, orders))
                if found:
                    return {"n": n, "r": rr, **found}
            return None
        return search

    def flagpol() -> Optional[Dict]:
        for n in range(1, n_max + 1):
            orders = (0, r * n + 6, 0)
            one = TruncSeries.one(orders)
            # z = 1 collapses the des(sigma^-1) grading, so counts are summed over fdes alone
            at_z_one = TruncSeries.from_terms(orders, {(0, a + 1, 0): c
                                                       for a, c in distribution(n, r, "fdes").items()})
            left = at_z_one * (((one - _y(orders, r)) ** n) * (one - _y(orders))).reciprocal()
            powers = TruncSeries.from_terms(orders, {(0, i, 0): i ** n for i in range(1, orders[1] + 1)})
            found = left.compare(powers)
            if found:
                return {"n": n, **found}
        return None

    def fdes_cdes_bivariate() -> Optional[Dict]:
        for n in range(0, n_max + 1):
            fdes_side = joint_distribution(n, r, "fdes", "ides")
            cdes_side = joint_distribution(n, r, "cdes", "ides")
            if fdes_side != cdes_side:
                key = min(k for k in set(fdes_side) | set(cdes_side)
                          if fdes_side.get(k, 0) != cdes_side.get(k, 0))
                return {"n": n, "at": key, "fdes": fdes_side.get(key, 0), "cdes": cdes_side.get(key, 0)}
        return None

    return [
        _timed("series.relara", params, relara),
        _timed("series.formula_anr", {"r": r, "n_max": n_max}, binomial_expansion(r)),
        _timed("series.garsia_gessel", {"r": 1, "n_max": n_max}, binomial_expansion(1)),
        _timed("series.flagpol", params, flagpol),
        _timed("series.fdes_cdes_bivariate", params, fdes_cdes_bivariate),
    ]
