"""
Uncertainty-principle functionals for the Q-QPFT

Every check returns a UPReport. Ratios compare the two sides directly;
slacks are normalized (by ‖f‖₂² or by the bound) so that scaling f by a real
constant leaves every report unchanged.
"""

import logging
import math
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from scipy.special import digamma
from scipy.stats import linregress

from algebra.signal import (
    Grid2D,
    GridMask,
    QSignal2D,
    concentration_epsilon,
    energy,
    lp_norm,
    moment,
)
from errors import ParameterError, SignalError
from models import QQPFTParams, UPReport
from transforms.qft import hausdorff_young_constant
from transforms.qqpft import QQPFTPlan, build_plan

logger = logging.getLogger(__name__)

LogConstant = Literal["paper", "corrected"]

# ln(2π²) - 2ψ(1/2) as printed, and ψ(1/2) + ln 2 for the 1/(2π) angular convention
D_PAPER = math.log(2.0 * math.pi**2) - 2.0 * float(digamma(0.5))
D_CORRECTED = float(digamma(0.5)) + math.log(2.0)

HARDY_CRITICAL = 0.25


def _require_energy(f: QSignal2D) -> float:
    total = energy(f)
    if total == 0:
        raise SignalError("signal is zero; uncertainty functionals are undefined")
    return total


def _spectrum(f: QSignal2D, params: QQPFTParams, plan: Optional[QQPFTPlan]) -> QSignal2D:
    return (plan or build_plan(f.grid, params)).forward(f)


def _constants(params: QQPFTParams, **extra: Any) -> Dict[str, Any]:
    return {"b1": params.mu1.b, "b2": params.mu2.b, **extra}


def heisenberg_ratio(
    f: QSignal2D,
    params: QQPFTParams,
    s: int = 1,
    tolerance: float = 1e-6,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """∫x_s²|f|² · ∫w_s²|Q[f]|² against ‖f‖⁴/(4 b_s²)"""
    total = _require_energy(f)
    b = params.axis(s).b
    Q = _spectrum(f, params, plan)
    spatial = moment(f, "axis_spread", s)
    spectral = moment(Q, "axis_spread", s)
    return UPReport.ratio(
        f"heisenberg-{s}",
        spatial * spectral,
        total**2 / (4.0 * b**2),
        tolerance,
        constants=_constants(params, axis=s),
        grid=f.grid.describe(),
        metadata={"spatial_spread": spatial, "spectral_spread": spectral},
    )


def directional_ratio(
    f: QSignal2D,
    params: QQPFTParams,
    tolerance: float = 1e-6,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """∫|x|²|f|² · ∫|w|²|Q[f]|² against ‖f‖⁴/|b|², |b|² = b1² + b2²"""
    total = _require_energy(f)
    b_squared = params.mu1.b**2 + params.mu2.b**2
    Q = _spectrum(f, params, plan)
    spatial = moment(f, "radial")
    spectral = moment(Q, "radial")
    return UPReport.ratio(
        "directional",
        spatial * spectral,
        total**2 / b_squared,
        tolerance,
        constants=_constants(params, b_squared=b_squared),
        grid=f.grid.describe(),
        metadata={"spatial_spread": spatial, "spectral_spread": spectral},
    )


def log_constant(constant: LogConstant) -> float:
    if constant == "paper":
        return D_PAPER
    if constant == "corrected":
        return D_CORRECTED
    raise ParameterError(f"log constant must be 'paper' or 'corrected', got {constant!r}")


def log_up_slack(
    f: QSignal2D,
    params: QQPFTParams,
    constant: LogConstant = "corrected",
    tolerance: float = 1e-4,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """∫ln|x||f|² + ∫ln|w||Q[f]|² against (D - ln|b|)·‖f‖².

    The slack is divided by ‖f‖² so it does not scale with the signal;
    the raw difference is kept in the metadata as lhs_minus_rhs.

    Only defined for b1 = b2. With the printed constant the inequality is
    evaluated and reported but never counted as a failure.
    """
    if params.mu1.b != params.mu2.b:
        raise ParameterError("logarithmic uncertainty needs b1 == b2")
    total = _require_energy(f)
    d = log_constant(constant)
    Q = _spectrum(f, params, plan)
    spatial = moment(f, "log_radial")
    spectral = moment(Q, "log_radial")
    lhs = spatial + spectral
    rhs = (d - math.log(abs(params.mu1.b))) * total
    slack = (lhs - rhs) / total
    extra = dict(
        constants=_constants(params, D=d, variant=constant),
        grid=f.grid.describe(),
        metadata={
            "spatial_log_moment": spatial,
            "spectral_log_moment": spectral,
            "lhs_minus_rhs": lhs - rhs,
            "inequality_holds": slack >= 0,
        },
    )
    if constant == "paper":
        if slack < 0:
            logger.info("printed logarithmic constant violated: lhs=%.6g rhs=%.6g", lhs, rhs)
        return UPReport(
            name="log-paper", kind="diagnostic", lhs=lhs, rhs_bound=rhs,
            ratio_or_slack=slack, tolerance=tolerance, passed=True, **extra,
        )
    return UPReport.slack("log-corrected", lhs, rhs, slack, tolerance, **extra)


def donoho_stark_check(
    f: QSignal2D,
    params: QQPFTParams,
    e1: GridMask,
    e2: GridMask,
    tolerance: float = 1e-6,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """|E1|·|E2| against (2π/|b1 b2|)·max(0, 1 - ε1 - ε2)²"""
    _require_energy(f)
    Q = _spectrum(f, params, plan)
    e2.grid.require_match(Q.grid, "frequency mask and spectrum")
    eps1 = concentration_epsilon(f, e1)
    eps2 = concentration_epsilon(Q, e2)
    product = e1.measure() * e2.measure()
    b = params.b_product
    deficit = max(0.0, 1.0 - eps1 - eps2) ** 2
    bound = 2.0 * math.pi / b * deficit
    return UPReport.slack(
        "donoho-stark",
        product,
        bound,
        product - bound,
        tolerance,
        constants=_constants(params, b_product=b),
        grid=f.grid.describe(),
        metadata={
            "epsilon1": eps1,
            "epsilon2": eps2,
            "measure1": e1.measure(),
            "measure2": e2.measure(),
            "sharp_bound": (2.0 * math.pi) ** 2 / b * deficit,
        },
    )


def hausdorff_young_slack(
    f: QSignal2D,
    params: QQPFTParams,
    pp: float,
    tolerance: float = 1e-9,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """‖Q[f]‖_q ≤ (2π)^{1/q-1/p}·|b1 b2|^{1/2-1/q}·‖f‖_p; slack relative to the bound"""
    if not 1.0 <= pp <= 2.0:
        raise ParameterError(f"Hausdorff-Young exponent must lie in [1, 2], got {pp}")
    _require_energy(f)
    q, constant = hausdorff_young_constant(pp)
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    Q = _spectrum(f, params, plan)
    lhs = lp_norm(Q, q)
    rhs = constant * params.b_product ** (0.5 - inv_q) * lp_norm(f, pp)
    return UPReport.slack(
        f"hausdorff-young-p{pp:g}",
        lhs,
        rhs,
        (rhs - lhs) / rhs,
        tolerance,
        constants=_constants(params, p=pp, q=q),
        grid=f.grid.describe(),
    )


def decay_rate_fit(g: QSignal2D, min_samples: int = 100) -> Tuple[float, float, float]:
    """Least-squares fit ln|g| ≈ ln c - α|x|² over |g| > 1e-12·max|g|.

    Returns (α, c, r²).
    """
    magnitude = g.abs()
    peak = float(magnitude.max(initial=0.0))
    support = magnitude > 1e-12 * peak
    count = int(np.count_nonzero(support))
    if peak == 0 or count < min_samples:
        raise SignalError(f"decay fit needs at least {min_samples} samples above the floor, got {count}")
    x1, x2 = g.grid.mesh()
    radius_sq = (x1**2 + x2**2)[support]
    fit = linregress(-radius_sq, np.log(magnitude[support]))
    return float(fit.slope), float(math.exp(fit.intercept)), float(fit.rvalue**2)


def _rescaled(Q: QSignal2D, params: QQPFTParams) -> QSignal2D:
    """w ↦ Q[f](w/b): the same samples on coordinates multiplied by |b|"""
    b1, b2 = abs(params.mu1.b), abs(params.mu2.b)
    grid = Grid2D(
        n1=Q.grid.n1, n2=Q.grid.n2, dx1=Q.grid.dx1 * b1, dx2=Q.grid.dx2 * b2,
        x1_0=Q.grid.x1_0 * b1, x2_0=Q.grid.x2_0 * b2,
    )
    return Q.with_samples(Q.samples, grid)


def hardy_case(product: float, tolerance: float) -> int:
    if abs(product - HARDY_CRITICAL) <= tolerance:
        return 2
    return 1 if product > HARDY_CRITICAL else 3


def hardy_report(
    f: QSignal2D,
    params: QQPFTParams,
    tolerance: float = 1e-4,
    r2_floor: float = 1.0 - 1e-8,
    plan: Optional[QQPFTPlan] = None,
) -> UPReport:
    """Gaussian decay rates of f and of its transform against the critical ¼.

    Diagnostic only: the flag reports whether both fits are trustworthy.
    """
    Q = _spectrum(f, params, plan)
    alpha, c_f, r2_f = decay_rate_fit(f)
    beta, c_q, r2_q = decay_rate_fit(_rescaled(Q, params))
    product = alpha * beta
    return UPReport(
        name="hardy",
        kind="diagnostic",
        lhs=product,
        rhs_bound=HARDY_CRITICAL,
        ratio_or_slack=product - HARDY_CRITICAL,
        tolerance=tolerance,
        passed=r2_f >= r2_floor and r2_q >= r2_floor,
        constants=_constants(params, case=hardy_case(product, tolerance)),
        grid=f.grid.describe(),
        metadata={"alpha_hat": alpha, "beta_hat": beta, "c_f": c_f, "c_q": c_q, "r2_f": r2_f, "r2_q": r2_q},
    )


class UncertaintyAnalyzer:
    """Runs every uncertainty functional on one signal with a shared plan"""

    def __init__(
        self,
        f: QSignal2D,
        params: QQPFTParams,
        tolerance: float = 1e-6,
        log_tolerance: float = 1e-4,
        r2_floor: float = 1.0 - 1e-8,
    ):
        self.f = f
        self.params = params
        self.tolerance = tolerance
        self.log_tolerance = log_tolerance
        self.r2_floor = r2_floor
        self.plan = build_plan(f.grid, params)

    def analyze(
        self,
        e1: Optional[GridMask] = None,
        e2: Optional[GridMask] = None,
        log_constant: Optional[LogConstant] = None,
    ) -> List[UPReport]:
        """All reports; the log check runs only when b1 == b2"""
        f, params, plan = self.f, self.params, self.plan
        reports = [
            heisenberg_ratio(f, params, 1, self.tolerance, plan),
            heisenberg_ratio(f, params, 2, self.tolerance, plan),
            directional_ratio(f, params, self.tolerance, plan),
        ]
        if params.mu1.b == params.mu2.b:
            constants: List[LogConstant] = [log_constant] if log_constant else ["corrected", "paper"]
            reports.extend(log_up_slack(f, params, c, self.log_tolerance, plan) for c in constants)
        else:
            logger.info("skipping logarithmic check: b1 != b2")
        for pp in (1.0, 4.0 / 3.0, 2.0):
            reports.append(hausdorff_young_slack(f, params, pp, plan=plan))
        if e1 is not None and e2 is not None:
            reports.append(donoho_stark_check(f, params, e1, e2, self.tolerance, plan))
        try:
            reports.append(hardy_report(f, params, r2_floor=self.r2_floor, plan=plan))
        except SignalError as exc:
            logger.info("skipping Hardy diagnostic: %s", exc)
        return reports
