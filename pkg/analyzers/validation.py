"""
Theorem validation suites for the Q-QPFT
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from algebra.quaternion import J, Quaternion, qmul
from algebra.signal import (
    Grid2D,
    QSignal2D,
    energy,
    inner_product,
    sample_function,
    scalar_inner,
)
from analyzers.uncertainty import hausdorff_young_slack
from config import Settings
from errors import ParameterError
from models import GaussianSpec, QPFTParams, QQPFTParams, RandomSpec, VerificationReport
from transforms.qft import iqft, qft_direct, qft_fast
from transforms.qpft1d import qpft_left2d, qpft_right2d, right_sided_parseval_check
from transforms.qqpft import (
    build_plan,
    evaluate_direct,
    forward_direct,
    forward_sided,
    gaussian_oracle,
    inverse,
    special_case_params,
    verify_modulation,
    verify_shift,
)

logger = logging.getLogger(__name__)


def _params(mu1: Tuple[float, ...], mu2: Tuple[float, ...]) -> QQPFTParams:
    return QQPFTParams(mu1=QPFTParams(**dict(zip("abcde", mu1))), mu2=QPFTParams(**dict(zip("abcde", mu2))))


# Parameter sweep shared by the suites; covers negative b and every phase term
PARAMETER_SWEEP: List[QQPFTParams] = [
    _params((0, 1, 0, 0, 0), (0, 1, 0, 0, 0)),
    _params((1, 2, 0, 1, 0), (0, 1, 1, 0, 1)),
    _params((1, -1, 1, 1, 1), (1, 2, 1, 0, 0)),
    _params((0, -1, 0, 0, 0), (1, -1, 0, 1, 1)),
    _params((0.5, 2, 1, 0, 1), (1, 1, 1, 1, 1)),
]

# Chirped kernels for the covariance suites (a ≠ 0 moves the shifted spectrum)
COVARIANCE_SWEEP: List[QQPFTParams] = [
    _params((1, 1, 0, 0, 0), (1, 1, 0, 0, 0)),
    _params((0, 1, 1, 0, 0), (0, 1, 1, 0, 0)),
    _params((1, 2, 1, 1, 1), (0.5, -1, 1, 1, 0)),
]

SUITE_NAMES = (
    "roundtrip",
    "parseval",
    "fast-vs-direct",
    "linearity",
    "shift",
    "modulation",
    "hausdorff-young",
    "special-cases",
    "split-lemma",
    "gaussian-oracle",
)


def _max_abs(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b), initial=0.0))


def _relative(error: float, scale: float) -> float:
    return error / scale if scale > 0 else error


class TheoremValidator:
    """Runs named invariant suites on seeded signals"""

    def __init__(self, settings: Settings, n: Optional[int] = None, extent: Optional[float] = None, seed: Optional[int] = None):
        self.settings = settings
        self.tolerances = settings.tolerances
        self.seed = settings.seed if seed is None else seed
        self.grid = Grid2D.from_extent(n or settings.n, extent or settings.extent)
        self._suites: Dict[str, Callable[[], List[VerificationReport]]] = {
            "roundtrip": self._validate_roundtrip,
            "parseval": self._validate_parseval,
            "fast-vs-direct": self._validate_fast_vs_direct,
            "linearity": self._validate_linearity,
            "shift": self._validate_shift,
            "modulation": self._validate_modulation,
            "hausdorff-young": self._validate_hausdorff_young,
            "special-cases": self._validate_special_cases,
            "split-lemma": self._validate_split_lemma,
            "gaussian-oracle": self._validate_gaussian_oracle,
        }

    def validate(self, suite: str = "all") -> List[VerificationReport]:
        """Run one suite, or every suite in definition order"""
        if suite == "all":
            names = list(SUITE_NAMES)
        elif suite in self._suites:
            names = [suite]
        else:
            raise ParameterError(f"unknown suite {suite!r}; expected all or one of {', '.join(SUITE_NAMES)}")
        reports: List[VerificationReport] = []
        for name in names:
            logger.debug("running suite %s on %s", name, self.grid.shape)
            reports.extend(self._suites[name]())
        return reports

    def _signal(self, offset: int = 0) -> QSignal2D:
        return sample_function(self.grid, RandomSpec(seed=self.seed + offset))

    def _report(
        self,
        name: str,
        error: float,
        tolerance: float,
        params: Optional[QQPFTParams] = None,
        grid: Optional[Grid2D] = None,
        **metadata: object,
    ) -> VerificationReport:
        return VerificationReport.check(
            name,
            error,
            tolerance,
            grid=(grid or self.grid).describe(),
            parameters=params.describe() if params else None,
            seed=self.seed,
            metadata=metadata,
        )

    def _validate_roundtrip(self) -> List[VerificationReport]:
        """Exact inverse of the fast path, the QFT inverse and the quadrature inverse"""
        f = self._signal()
        reports = [self._report("roundtrip-qft", _max_abs(iqft(qft_fast(f), f.grid).samples, f.samples), self.tolerances.round_trip)]
        for params in PARAMETER_SWEEP:
            plan = build_plan(f.grid, params)
            F = plan.forward(f)
            exact = plan.inverse(F)
            direct = inverse(F, params, "direct", space_grid=f.grid)
            reports.append(self._report("roundtrip-exact", _max_abs(exact.samples, f.samples), self.tolerances.round_trip, params))
            reports.append(
                self._report("roundtrip-direct", _max_abs(direct.samples, f.samples), self.tolerances.quadrature_inverse, params)
            )
        return reports

    def _validate_parseval(self) -> List[VerificationReport]:
        """Norm and scalar inner product preservation; full quaternion discrepancy reported"""
        f, g = self._signal(), self._signal(1)
        norm_f, norm_g = math.sqrt(energy(f)), math.sqrt(energy(g))
        reports = []
        for params in PARAMETER_SWEEP:
            plan = build_plan(f.grid, params)
            Qf, Qg = plan.forward(f), plan.forward(g)
            norm_error = _relative(abs(math.sqrt(energy(Qf)) - norm_f), norm_f)
            inner_error = _relative(abs(scalar_inner(Qf, Qg) - scalar_inner(f, g)), norm_f * norm_g)
            full = _relative((inner_product(Qf, Qg) - inner_product(f, g)).norm(), norm_f * norm_g)
            reports.append(self._report("parseval-norm", norm_error, self.tolerances.parseval, params))
            reports.append(
                self._report("parseval-inner", inner_error, self.tolerances.parseval_inner, params, quaternion_inner_error=full)
            )
            right = right_sided_parseval_check(f, g, params.mu2, self.tolerances.parseval_inner)
            reports.append(right.model_copy(update={"seed": self.seed}))
        return reports

    def _validate_fast_vs_direct(self) -> List[VerificationReport]:
        f = self._signal()
        reports = [self._report("qft-fast-vs-direct", _max_abs(qft_fast(f).samples, qft_direct(f).samples), self.tolerances.fast_vs_direct)]
        for params in PARAMETER_SWEEP:
            fast = build_plan(f.grid, params).forward(f)
            direct = forward_direct(f, params)
            assert isinstance(direct, QSignal2D)
            reports.append(self._report("fast-vs-direct", _max_abs(fast.samples, direct.samples), self.tolerances.fast_vs_direct, params))
        return reports

    def _validate_linearity(self) -> List[VerificationReport]:
        """Real-scalar linearity; left quaternion scalars are reported, not asserted"""
        f, g = self._signal(), self._signal(1)
        alpha, beta = 2.5, -0.75
        q = Quaternion(1.0, -2.0, 0.5, 3.0)
        reports = []
        for params in PARAMETER_SWEEP:
            plan = build_plan(f.grid, params)
            Qf, Qg = plan.forward(f), plan.forward(g)
            combined = plan.forward(f * alpha + g * beta)
            expected = Qf * alpha + Qg * beta
            scaled = plan.forward(f.with_samples(qmul(q.to_array(), f.samples)))
            left_error = _max_abs(scaled.samples, qmul(q.to_array(), Qf.samples))
            reports.append(
                self._report(
                    "linearity",
                    _max_abs(combined.samples, expected.samples),
                    self.tolerances.fast_vs_direct,
                    params,
                    left_quaternion_scalar_error=left_error,
                )
            )
        return reports

    def _covariance_signals(self) -> List[Tuple[str, QSignal2D]]:
        return [("gaussian", sample_function(self.grid, GaussianSpec())), ("random", self._signal())]

    def _validate_shift(self) -> List[VerificationReport]:
        k = (2 * self.grid.dx1, -self.grid.dx2)
        reports = []
        for label, f in self._covariance_signals():
            for params in COVARIANCE_SWEEP:
                report = verify_shift(f, params, k, self.tolerances.covariance)
                reports.append(report.model_copy(update={"name": f"shift-{label}", "seed": self.seed}))
        return reports

    def _validate_modulation(self) -> List[VerificationReport]:
        reports = []
        for label, f in self._covariance_signals():
            for params in COVARIANCE_SWEEP:
                freq = self.grid.frequency_grid(params.mu1.b, params.mu2.b)
                w0 = (4 * freq.dx1 * params.mu1.b, -2 * freq.dx2 * params.mu2.b)
                report = verify_modulation(f, params, w0, self.tolerances.covariance)
                reports.append(report.model_copy(update={"name": f"modulation-{label}", "seed": self.seed}))
        return reports

    def _validate_hausdorff_young(self) -> List[VerificationReport]:
        f = self._signal()
        reports = []
        for params in PARAMETER_SWEEP:
            plan = build_plan(f.grid, params)
            for pp in (1.0, 4.0 / 3.0, 2.0):
                up = hausdorff_young_slack(f, params, pp, self.tolerances.hausdorff_young, plan)
                violation = max(0.0, -up.ratio_or_slack)
                reports.append(self._report(up.name, violation, self.tolerances.hausdorff_young, params, slack=up.ratio_or_slack))
            # p = 2 is an identity, so the slack itself must vanish
            reports.append(self._report("hausdorff-young-p2-equality", abs(up.ratio_or_slack), self.tolerances.hausdorff_young, params))
        return reports

    def _validate_special_cases(self) -> List[VerificationReport]:
        """Reduction to the QFT at μ = (0, -1, 0, 0, 0) per axis"""
        qft_params = special_case_params("qft")
        frqft = special_case_params("frqft", theta=math.pi / 2)
        reports = [self._report("frqft-equals-qft", 0.0 if frqft == qft_params else 1.0, 0.0, frqft)]
        f = QSignal2D.from_real(self.grid, self._signal().samples[..., 0])
        reduced = build_plan(f.grid, qft_params).forward(f)
        reference = qft_fast(f)
        # b = -1 reverses both frequency axes
        mirrored = np.flip(reference.abs(), axis=(0, 1))
        reports.append(self._report("qft-reduction", _max_abs(reduced.abs(), mirrored), self.tolerances.special_cases, qft_params))
        plain = QQPFTParams()
        reports.append(
            self._report("fourier-modulus", _max_abs(build_plan(f.grid, plain).forward(f).abs(), reference.abs()), self.tolerances.special_cases, plain)
        )
        return reports

    def _validate_split_lemma(self) -> List[VerificationReport]:
        """Two-sided transform from sided transforms of the symplectic parts"""
        f = self._signal()
        p, s = f.split()
        f_p = QSignal2D.from_parts(f.grid, p, np.zeros_like(p))
        f_q = QSignal2D.from_parts(f.grid, s, np.zeros_like(s))
        reports = []
        for params in PARAMETER_SWEEP:
            two = forward_sided(f, params, "two")
            rebuilt = forward_sided(f_p, params, "right").samples + qmul(forward_sided(f_q, params, "right").samples, J)
            reports.append(self._report("split-lemma-right", _max_abs(two.samples, rebuilt), self.tolerances.split_lemma, params))

            swapped = forward_sided(f, params, "two", kernel_order="ji")
            rebuilt = forward_sided(f_p, params, "left", kernel_order="ji").samples + qmul(
                forward_sided(f_q, params, "left", kernel_order="ji", conjugate_i=True).samples, J
            )
            reports.append(self._report("split-lemma-left", _max_abs(swapped.samples, rebuilt), self.tolerances.split_lemma, params))

            composed = qpft_right2d(qpft_left2d(f, params.mu1), params.mu2)
            reports.append(self._report("sided-composition", _max_abs(composed.samples, two.samples), self.tolerances.split_lemma, params))
        return reports

    def _validate_gaussian_oracle(self) -> List[VerificationReport]:
        """Closed form against quadrature on a fine grid, independent of --n"""
        grid = Grid2D.from_extent(256, 20.0)
        reports = []
        for k1, k2 in ((0.5, 0.5), (1.0, 0.5)):
            f = sample_function(grid, GaussianSpec(k1=k1, k2=k2))
            for params in PARAMETER_SWEEP[:3]:
                freq = grid.frequency_grid(params.mu1.b, params.mu2.b)
                idx = grid.n1 // 2 + np.array([-8, -4, 0, 4, 8])
                w1, w2 = freq.axis(1).coordinates()[idx], freq.axis(2).coordinates()[idx]
                numeric = evaluate_direct(f, params, w1, w2)
                exact = np.array([[gaussian_oracle(params, k1, k2, (a, b)).to_array() for b in w2] for a in w1])
                reports.append(
                    self._report("gaussian-oracle", _max_abs(numeric, exact), self.tolerances.gaussian_oracle, params, grid, k=[k1, k2])
                )
        return reports
