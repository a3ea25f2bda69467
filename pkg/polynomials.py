"""
Univariate polynomials with exact coefficients.

IntPolynomial carries Ehrhart series and distribution polynomials (in z or y),
RatPolynomial carries Ehrhart polynomials (in t). Coefficients are stored
lowest degree first with no trailing zeros; the zero polynomial is empty.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def _trim(values: Sequence) -> Tuple:
    values = list(values)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        for c in self.coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise ValueError(f"IntPolynomial coefficient {c!r} is not an integer")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent}")
        return cls((0,) * exponent + (coeff,))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "IntPolynomial":
        """Sum of z^e over the given exponents (with multiplicity)."""
        counts: Dict[int, int] = {}
        for e in exponents:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            counts[e] = counts.get(e, 0) + 1
        return cls.from_dict(counts)

    @classmethod
    def from_dict(cls, terms: Dict[int, int]) -> "IntPolynomial":
        if not terms:
            return cls.zero()
        top = max(terms)
        return cls(tuple(terms.get(i, 0) for i in range(top + 1)))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, exponent: int) -> int:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(size)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError(f"negative power {exponent}")
        result = IntPolynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def evaluate(self, value: Number) -> Number:
        result: Number = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_strings(self) -> List[str]:
        """Coefficients as decimal strings, lowest degree first."""
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{i}")
        return " + ".join(parts)


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial in t with exact rational coefficients."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls) -> "RatPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "RatPolynomial":
        return cls((Fraction(1),))

    @classmethod
    def linear(cls, constant: Number, slope: Number) -> "RatPolynomial":
        return cls((Fraction(constant), Fraction(slope)))

    @classmethod
    def from_int_polynomial(cls, p: IntPolynomial) -> "RatPolynomial":
        return cls(tuple(Fraction(c) for c in p.coeffs))

    @classmethod
    def interpolate(cls, points: Sequence[Tuple[Number, Number]]) -> "RatPolynomial":
        """
        Lagrange interpolation in exact rationals.

        Args:
            points: (t_i, value_i) pairs with distinct t_i

        Returns:
            The unique polynomial of degree < len(points) through the points
        """
        xs = [Fraction(x) for x, _ in points]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        result = cls.zero()
        for i, (xi, yi) in enumerate(points):
            if yi == 0:
                continue
            basis = cls.one()
            denominator = Fraction(1)
            for j, xj in enumerate(xs):
                if j == i:
                    continue
                basis = basis * cls.linear(-xj, 1)
                denominator *= Fraction(xi) - xj
            result = result + basis.scale(Fraction(yi) / denominator)
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def scale(self, factor: Number) -> "RatPolynomial":
        return RatPolynomial(tuple(c * factor for c in self.coeffs))

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return RatPolynomial(tuple(self[i] + other[i] for i in range(size)))

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "RatPolynomial") -> "RatPolynomial":
        if self.is_zero() or other.is_zero():
            return RatPolynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolynomial(tuple(out))

    def evaluate(self, value: Number) -> Fraction:
        """Evaluate using Horner's method."""
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def to_pairs(self) -> List[Dict[str, str]]:
        """Coefficients as {"num", "den"} decimal-string pairs in lowest terms."""
        return [{"num": str(c.numerator), "den": str(c.denominator)} for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return " + ".join(parts)
