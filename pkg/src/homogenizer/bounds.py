"""Closed-form resource bounds for single and repeated homogenization.

Distances are Bloch-vector distances. ``d`` is the initial distance between
system and reservoir states, ``delta``/``Delta`` the tolerated final distance.
Real-valued bounds are integerised conservatively: reservoir sizes are rounded
up, reuse counts down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional

import numpy as np

from . import gates
from .dynamics import cswap_step, pswap_cross_coefficient, pswap_step
from .errors import DomainError
from .qcore import bloch_fidelity, bloch_vector

# absorbs rounding when a real bound lands on an integer
INTEGER_SLACK = 1e-12


class Formula(str, Enum):
    SINGLE_USE = "single_use"
    REUSE_COUNT = "reuse_count"
    REUSE_RESERVOIR = "reuse_reservoir"


@dataclass
class BoundReport:
    formula: Formula
    inputs: dict[str, float]
    raw: Optional[float] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    s_squared_limit: Optional[float] = None
    feasible: bool = True
    unbounded: bool = False
    reason: str = ""
    extras: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"formula": self.formula.value}
        out.update(self.inputs)
        for key in ("raw", "n_min", "n_max", "s_squared_limit", "feasible",
                    "unbounded", "reason"):
            out[key] = getattr(self, key)
        out.update(self.extras)
        return out


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def _distance(d: float) -> float:
    d = _positive("d", d)
    if d > 2 + INTEGER_SLACK:
        raise DomainError(f"Bloch distance d={d!r} exceeds 2")
    return d


def _ceil(x: float) -> int:
    return max(0, math.ceil(x - INTEGER_SLACK))


def _floor(x: float) -> int:
    return max(0, math.floor(x + INTEGER_SLACK))


def min_reservoir_single(delta: float, d: float) -> BoundReport:
    """Smallest reservoir for one homogenization within ``delta``.

    The coupling is pinned by the reservoir condition to ``s^2 = delta/d``;
    the system then needs ``N >= ln(delta/d) / ln(1 - delta/d)`` interactions.
    """
    delta = _positive("delta", delta)
    d = _distance(d)
    inputs = {"delta": delta, "d": d}
    ratio = delta / d
    if ratio >= 1:
        return BoundReport(Formula.SINGLE_USE, inputs, raw=0.0, n_min=0,
                           s_squared_limit=1.0, reason="already within delta")
    raw = math.log(ratio) / math.log1p(-ratio)
    return BoundReport(Formula.SINGLE_USE, inputs, raw=raw, n_min=_ceil(raw),
                       s_squared_limit=ratio)


def max_reuse_count(delta: float, d: float, eta: float) -> BoundReport:
    """Largest number of systems before reservoir qubit 1 drifts past ``delta``.

    Inverts ``c^(2n) >= 1 - delta/d``.
    """
    delta = _positive("delta", delta)
    d = _distance(d)
    c, s = gates.coupling(eta)
    inputs = {"delta": delta, "d": d, "eta": float(eta)}
    ratio = delta / d
    if ratio >= 1:
        return BoundReport(Formula.REUSE_COUNT, inputs, unbounded=True,
                           reason="constraint vacuous for delta >= d")
    if s == 0.0:
        return BoundReport(Formula.REUSE_COUNT, inputs, unbounded=True,
                           reason="eta = 0 leaves the reservoir untouched")
    if c < 1e-300 or eta >= math.pi / 2:
        return BoundReport(Formula.REUSE_COUNT, inputs, raw=0.0, n_max=0, feasible=False,
                           reason="a full swap moves reservoir qubit 1 by d")
    raw = math.log1p(-ratio) / (2 * math.log(c))
    n_max = _floor(raw)
    return BoundReport(Formula.REUSE_COUNT, inputs, raw=raw, n_max=n_max,
                       feasible=n_max >= 1,
                       reason="" if n_max >= 1 else "coupling too strong for a single use")


def design_coupling(Delta: float, d: float, n: int) -> float:
    """Coupling with ``c^(2n) = 1 - Delta/d``, the one the reuse bound assumes.

    At this angle the reservoir condition is tight and the worst-case system
    convergence rate ``1 - epsilon/d'`` equals ``c^2``.
    """
    Delta = _positive("Delta", Delta)
    d = _distance(d)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if Delta >= d:
        return math.pi / 2
    return math.acos(math.sqrt((1 - Delta / d) ** (1.0 / n)))


def min_reservoir_reuse(Delta: float, d: float, eta: float, n: int) -> BoundReport:
    """Reservoir size so that ``n`` systems and every reservoir qubit end within ``Delta``.

    Worst case: every reservoir qubit is as degraded as qubit 1 before the last
    pass, at distance ``d' = c^(2(n-1)) d`` from the system's start, and each
    system may be at most ``epsilon = Delta - d(1 - c^(2(n-1)))`` from it. With
    ``x = (d - Delta) / (d c^(2(n-1)))`` this gives ``N >= ln(1 - x) / ln(x)``.

    Infeasible regions are reported in-band. ``extras['n_min_at_coupling']``
    holds the worst-case count ``ln(epsilon/d') / ln(c^2)`` for the supplied
    coupling, which coincides with ``n_min`` only at :func:`design_coupling`.
    """
    Delta = _positive("Delta", Delta)
    d = _distance(d)
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    c, _ = gates.coupling(eta)
    inputs = {"Delta": Delta, "d": d, "eta": float(eta), "n": n}
    report = BoundReport(Formula.REUSE_RESERVOIR, inputs)
    if Delta >= d:
        report.raw, report.n_min = 0.0, 0
        report.reason = "already within Delta"
        return report

    c2 = c * c
    worn = c2 ** (n - 1)
    eps = Delta - d * (1 - worn)
    d_prime = worn * d
    report.extras.update(
        epsilon=eps,
        d_prime=d_prime,
        design_eta=design_coupling(Delta, d, n),
        reservoir_distance=d * (1 - c2 ** n),
    )
    if eps <= 0 or worn == 0:
        report.feasible = False
        report.reason = "coupling too strong: reservoir qubit 1 is already Delta away"
        return report

    x = (d - Delta) / d_prime
    report.raw = math.log1p(-x) / math.log(x)
    report.n_min = _ceil(report.raw)
    report.s_squared_limit = min(1.0, eps / d_prime)
    if 0 < c2 < 1:
        report.extras["n_min_at_coupling"] = _ceil(math.log(eps / d_prime) / math.log(c2))
    else:
        report.extras["n_min_at_coupling"] = None
    if d * (1 - c2 ** n) > Delta + INTEGER_SLACK:
        report.feasible = False
        report.reason = f"reservoir qubit 1 drifts beyond Delta within {n} uses"
    return report


def fidelity_pair(system, reservoir, eta: float) -> tuple[float, float]:
    """Fidelity with the reservoir state after one controlled / partial swap."""
    beta = bloch_vector(system)
    alpha = bloch_vector(reservoir)
    f_inc = bloch_fidelity(cswap_step(beta, alpha, eta).system, alpha)
    f_coh = bloch_fidelity(pswap_step(beta, alpha, eta).system, alpha)
    return f_inc, f_coh


def printed_fidelity_dot_term(system, reservoir, eta: float) -> tuple[float, float]:
    """Return ``(c^2 b.a + s^2, c^2 b.a + s^2 |a|^2)``.

    The first is the dot-product term as tabulated, the second the general
    form used by :func:`fidelity_pair`; they agree for pure reservoir states.
    """
    b = bloch_vector(system)
    a = bloch_vector(reservoir)
    c, s = gates.coupling(eta)
    dot = float(b @ a)
    return c * c * dot + s * s, c * c * dot + s * s * float(a @ a)


def fidelity_gap_bound(alpha: float) -> float:
    """Tabulated bound on ``(F_inc - F_coh) / F_inc`` for reservoir length ``alpha``.

    Encodes a unit system vector perpendicular to the reservoir vector and
    ``c = s = 1/sqrt(2)``.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    root = math.sqrt(max(0.0, 1 - alpha * alpha))
    a = math.sqrt(3 - alpha * alpha)
    b = math.sqrt(3 - alpha * alpha - alpha / 2)
    return root * (a - b) / (3 + root * a)


def fidelity_gap_consistent(alpha: float, beta: float = 1.0,
                            eta: float = math.pi / 4) -> float:
    """Closed-form gap for perpendicular vectors with consistent algebra.

    Uses ``|c^2 b + s^2 a|^2 = c^4 b^2 + s^4 a^2`` and the oracle-fixed
    cross-term coefficient, so it matches :func:`measured_fidelity_gap`.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    c, s = gates.coupling(eta)
    k = pswap_cross_coefficient()
    mix = 1 - c ** 4 * beta ** 2 - s ** 4 * alpha ** 2
    root = math.sqrt(max(0.0, 1 - alpha * alpha))
    coh = max(0.0, mix - (k * c * s * alpha * beta) ** 2)
    inc_sqrt = math.sqrt(max(0.0, mix))
    num = root * (inc_sqrt - math.sqrt(coh))
    den = 1 + s * s * alpha * alpha + root * inc_sqrt
    return num / den


def measured_fidelity_gap(alpha: float, beta: float = 1.0,
                          eta: float = math.pi / 4) -> float:
    """``(F_inc - F_coh) / F_inc`` from the step maps, system along x, reservoir along z."""
    f_inc, f_coh = fidelity_pair([beta, 0.0, 0.0], [0.0, 0.0, alpha], eta)
    return (f_inc - f_coh) / f_inc


def scan(fn: Callable[[float], float], start: float, stop: float,
         step: float) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate ``fn`` on the inclusive grid ``start, start+step, ..., stop``."""
    if step <= 0:
        raise DomainError(f"scan step must be positive, got {step!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count < 1:
        raise DomainError(f"empty scan {start}:{stop}:{step}")
    xs = start + step * np.arange(count)
    xs = np.clip(xs, min(start, stop), max(start, stop))
    return xs, np.array([fn(float(x)) for x in xs])
