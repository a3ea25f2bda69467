import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional


def to_json_value(value: Any) -> Any:
    """Big integers as decimal strings, rationals as {"num","den"} pairs."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if hasattr(value, "coeffs"):
        return [to_json_value(c) for c in value.coeffs]
    return str(value)


@dataclass
class VerdictReport:
    """Outcome of one identity check. Failing reports always carry a witness."""

    identity: str
    params: Dict[str, Any]
    passed: bool
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)
    wall_ms: float = 0.0

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError(f"passing report for {self.identity} carries a witness")
        if not self.passed and not self.witness:
            raise ValueError(f"failing report for {self.identity} has no witness")

    @classmethod
    def success(cls, identity: str, params: Dict[str, Any], **details) -> "VerdictReport":
        return cls(identity=identity, params=params, passed=True, details=details)

    @classmethod
    def failure(cls, identity: str, params: Dict[str, Any], witness: Dict[str, Any],
                **details) -> "VerdictReport":
        return cls(identity=identity, params=params, passed=False, witness=witness,
                   details=details)

    @classmethod
    def from_mismatch(cls, identity: str, params: Dict[str, Any],
                      mismatch: Optional[Dict[str, Any]], **details) -> "VerdictReport":
        if mismatch is None:
            return cls.success(identity, params, **details)
        return cls.failure(identity, params, mismatch, **details)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "params": to_json_value(self.params),
            "passed": self.passed,
            "witness": to_json_value(self.witness),
            "details": to_json_value(self.details),
            "wall_ms": round(self.wall_ms, 3),
        }


class Stopwatch:
    """Context manager recording elapsed milliseconds."""

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        self.elapsed_ms = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = (time.perf_counter() - self._start) * 1000.0


def first_mismatch(expected: Dict[Any, Any], actual: Dict[Any, Any],
                   label_expected: str = "expected",
                   label_actual: str = "actual",
                   default: Any = 0) -> Optional[Dict[str, Any]]:
    """First key (in sorted order) whose values differ; missing keys take `default`."""
    keys = set(expected) | set(actual)
    try:
        ordered = sorted(keys)
    except TypeError:
        ordered = sorted(keys, key=repr)
    for key in ordered:
        a = expected.get(key, default)
        b = actual.get(key, default)
        if a != b:
            return {"at": key, label_expected: a, label_actual: b}
    return None
