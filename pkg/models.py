from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from errors import ParameterError, SignalError


class Method(str, Enum):
    DIRECT = "direct"
    FAST = "fast"


class InverseMethod(str, Enum):
    EXACT = "exact"
    DIRECT = "direct"


class Variant(str, Enum):
    TWO = "two"
    LEFT = "left"
    RIGHT = "right"


class QPFTParams(BaseModel):
    """Quadratic-phase quintuple (a, b, c, d, e) for one axis"""

    model_config = ConfigDict(frozen=True)

    a: float = 0.0
    b: float = 1.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0

    @field_validator("b")
    @classmethod
    def _b_nonzero(cls, value: float) -> float:
        if value == 0 or not math.isfinite(value):
            raise ParameterError("b must be nonzero")
        return value

    @classmethod
    def parse(cls, text: str) -> "QPFTParams":
        """Parse 'a,b,c,d,e' as used on the command line"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 5:
            raise ParameterError(f"expected five comma-separated values a,b,c,d,e, got {text!r}")
        try:
            a, b, c, d, e = (float(p) for p in parts)
        except ValueError as exc:
            raise ParameterError(f"non-numeric parameter in {text!r}") from exc
        if b == 0:
            raise ParameterError("b must be nonzero")
        return cls(a=a, b=b, c=c, d=d, e=e)

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.e)


class QQPFTParams(BaseModel):
    """Per-axis quintuples: mu1 drives the i-kernel, mu2 the j-kernel"""

    model_config = ConfigDict(frozen=True)

    mu1: QPFTParams = QPFTParams()
    mu2: QPFTParams = QPFTParams()

    @classmethod
    def same(cls, mu: QPFTParams) -> "QQPFTParams":
        return cls(mu1=mu, mu2=mu)

    def axis(self, s: int) -> QPFTParams:
        if s not in (1, 2):
            raise ParameterError(f"axis must be 1 or 2, got {s}")
        return self.mu1 if s == 1 else self.mu2

    @property
    def b_product(self) -> float:
        return abs(self.mu1.b * self.mu2.b)

    def describe(self) -> Dict[str, List[float]]:
        return {"mu1": list(self.mu1.as_tuple()), "mu2": list(self.mu2.as_tuple())}


class VerificationReport(BaseModel):
    """Outcome of one theorem or invariant check"""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    max_abs_error: float
    tolerance: float
    passed: bool = Field(alias="pass")
    grid: Optional[Dict[str, Any]] = None
    parameters: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    metadata: Dict[str, Any] = {}

    @model_validator(mode="after")
    def _pass_matches_error(self) -> "VerificationReport":
        if self.passed != (self.max_abs_error <= self.tolerance):
            raise ValueError("pass flag disagrees with max_abs_error and tolerance")
        return self

    @classmethod
    def check(cls, name: str, error: float, tolerance: float, **extra: Any) -> "VerificationReport":
        error = float(error)
        return cls(name=name, max_abs_error=error, tolerance=tolerance, passed=error <= tolerance, **extra)


class UPReport(BaseModel):
    """Outcome of an uncertainty-principle evaluation"""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    kind: Literal["ratio", "slack", "diagnostic"]
    lhs: float
    rhs_bound: float
    ratio_or_slack: float
    tolerance: float
    passed: bool = Field(alias="pass")
    constants: Dict[str, Any] = {}
    grid: Optional[Dict[str, Any]] = None
    metadata: Dict[str, Any] = {}

    @model_validator(mode="after")
    def _pass_matches_value(self) -> "UPReport":
        if self.kind == "ratio":
            expected = self.ratio_or_slack >= 1.0 - self.tolerance
        elif self.kind == "slack":
            expected = self.ratio_or_slack >= -self.tolerance
        else:
            return self
        if self.passed != expected:
            raise ValueError(f"pass flag disagrees with {self.kind} and tolerance")
        return self

    @classmethod
    def ratio(cls, name: str, lhs: float, rhs: float, tolerance: float, **extra: Any) -> "UPReport":
        value = float(lhs) / float(rhs)
        return cls(
            name=name, kind="ratio", lhs=float(lhs), rhs_bound=float(rhs),
            ratio_or_slack=value, tolerance=tolerance, passed=value >= 1.0 - tolerance, **extra,
        )

    @classmethod
    def slack(cls, name: str, lhs: float, rhs: float, slack: float, tolerance: float, **extra: Any) -> "UPReport":
        slack = float(slack)
        return cls(
            name=name, kind="slack", lhs=float(lhs), rhs_bound=float(rhs),
            ratio_or_slack=slack, tolerance=tolerance, passed=slack >= -tolerance, **extra,
        )


def is_failure(report: Union[VerificationReport, UPReport]) -> bool:
    """Diagnostics are informational and never fail a command"""
    return not report.passed and getattr(report, "kind", None) != "diagnostic"


class CommandResult(BaseModel):
    exit_code: int = 0
    reports: List[Union[VerificationReport, UPReport]] = []
    warnings: List[str] = []

    @classmethod
    def from_reports(cls, reports: List[Union[VerificationReport, UPReport]], warnings: Optional[List[str]] = None) -> "CommandResult":
        failed = any(is_failure(r) for r in reports)
        return cls(exit_code=1 if failed else 0, reports=reports, warnings=warnings or [])

    def payload(self) -> List[Dict[str, Any]]:
        return [r.model_dump(by_alias=True) for r in self.reports]


class GaussianSpec(BaseModel):
    """e^{-(k1 (x1-m1)² + k2 (x2-m2)²)}"""

    kind: Literal["gaussian"] = "gaussian"
    k1: float = 0.5
    k2: float = 0.5
    center: Tuple[float, float] = (0.0, 0.0)

    @field_validator("k1", "k2")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ParameterError("Gaussian rates k must be positive")
        return value


class ChirpedGaussianSpec(BaseModel):
    """e^{i(a1 x1² + d1 x1)}·amplitude·e^{-(k1 x1² + k2 x2²)}·e^{j(a2 x2² + d2 x2)}"""

    kind: Literal["chirped_gaussian"] = "chirped_gaussian"
    k1: float = 0.5
    k2: float = 0.5
    a1: float = 0.0
    a2: float = 0.0
    d1: float = 0.0
    d2: float = 0.0
    amplitude: Tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)

    @field_validator("k1", "k2")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ParameterError("Gaussian rates k must be positive")
        return value


class BoxSpec(BaseModel):
    """Indicator of |x1| ≤ half_width1, |x2| ≤ half_width2"""

    kind: Literal["box"] = "box"
    half_width1: float = 1.0
    half_width2: float = 1.0


class RandomSpec(BaseModel):
    """Seeded sum of quaternion-weighted Gaussian bumps"""

    kind: Literal["random"] = "random"
    seed: int = 0
    components: int = 4
    spread: float = 1.5
    min_width: float = 0.5
    max_width: float = 0.8


SignalSpec = Annotated[
    Union[GaussianSpec, ChirpedGaussianSpec, BoxSpec, RandomSpec],
    Field(discriminator="kind"),
]

_signal_spec_adapter: TypeAdapter = TypeAdapter(SignalSpec)


def parse_signal_spec(data: Dict[str, Any]) -> Union[GaussianSpec, ChirpedGaussianSpec, BoxSpec, RandomSpec]:
    """Validate a closed-form descriptor given as a plain mapping"""
    try:
        return _signal_spec_adapter.validate_python(data)
    except ValidationError as exc:
        raise SignalError(f"unknown or invalid signal descriptor {data!r}: {exc.errors()[0]['msg']}") from exc
