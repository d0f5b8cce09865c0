"""Modulus functions with vanishing iterates, and the iteration horizon.

An admissible modulus is nondecreasing, right-continuous, and its
iterates converge to zero from every start. Those three properties force
phi(t) < t for t > 0 and phi(0) = 0, and they keep the solver's stopping
horizon finite: for any target levels there is an N after which the
iterates stay below min(epsilon, lambda).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Tuple, Union

from .errors import HorizonExceeded, InvalidK, PhiInvalid
from .report import LawCheck, Report

DECAY_THRESHOLD = 1e-6
DEFAULT_ITER_CAP = 10 ** 6
DEFAULT_HORIZON_CAP = 10 ** 6

_WITNESS_CAP = 8


def crossing_time(d: float) -> float:
    """The unique t with t / (t + d) == 1 - t, in closed form.

    Strictly increasing and concave in d, with values in [0, 1).
    """
    if d < 0.0:
        raise ValueError("d must be nonnegative")
    return 0.5 * (math.sqrt(d * d + 4.0 * d) - d)


def _check_nonneg(t: float) -> None:
    if t < 0.0:
        raise ValueError("modulus argument must be nonnegative")


@dataclass(frozen=True)
class LinearPhi:
    """t -> k * t with ratio k in (0, 1)."""

    k: float

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise InvalidK(f"linear ratio must lie in (0, 1), got {self.k!r}")

    def eval(self, t: float) -> float:
        _check_nonneg(t)
        return self.k * t


@dataclass(frozen=True)
class RationalPhi:
    """t -> t / (1 + t); the n-th iterate is t / (1 + n*t)."""

    def eval(self, t: float) -> float:
        _check_nonneg(t)
        return t / (1.0 + t)


@dataclass(frozen=True)
class InducedPhi:
    """Threshold-conjugate modulus for the standard fuzzy metric.

    Maps the crossing time of a metric gap d to the crossing time of the
    contracted gap k * d, for gaps up to the diameter ``cap``; beyond the
    cap's crossing time it continues linearly with slope k. By
    construction eval(crossing_time(d)) == crossing_time(k * d) for
    d <= cap, so a plain metric k-contraction on a space of diameter
    <= cap satisfies the transformed-contraction implication with this
    modulus.
    """

    k: float
    cap: float
    tau_cap: float = field(init=False, repr=False)
    anchor: float = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise InvalidK(f"ratio must lie in (0, 1), got {self.k!r}")
        if self.cap <= 0.0:
            raise ValueError("cap must be positive")
        object.__setattr__(self, "tau_cap", crossing_time(self.cap))
        object.__setattr__(self, "anchor", crossing_time(self.k * self.cap))

    def eval(self, t: float) -> float:
        _check_nonneg(t)
        if t == 0.0:
            return 0.0
        if t <= self.tau_cap:
            return crossing_time(self.k * t * t / (1.0 - t))
        return self.anchor + self.k * (t - self.tau_cap)


@dataclass(frozen=True)
class TablePhi:
    """Right-continuous step function given by (t, value) breakpoints.

    The value at a breakpoint is the new step value (taken from the
    right), which makes right-continuity structural. Before the first
    breakpoint the value is 0; after the last it stays constant. Nothing
    here forces admissibility: verify_phi_class reports violations.
    """

    points: Tuple[Tuple[float, float], ...]
    _ts: Tuple[float, ...] = field(init=False, repr=False)
    _values: Tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        pts = tuple((float(t), float(v)) for t, v in self.points)
        if not pts:
            raise ValueError("table modulus needs at least one breakpoint")
        ts = tuple(t for t, _ in pts)
        if any(t < 0.0 for t in ts):
            raise ValueError("breakpoint times must be nonnegative")
        if any(ts[i] >= ts[i + 1] for i in range(len(ts) - 1)):
            raise ValueError("breakpoint times must be strictly increasing")
        if any(v < 0.0 for _, v in pts):
            raise ValueError("breakpoint values must be nonnegative")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_ts", ts)
        object.__setattr__(self, "_values", tuple(v for _, v in pts))

    def eval(self, t: float) -> float:
        _check_nonneg(t)
        i = bisect.bisect_right(self._ts, t) - 1
        return self._values[i] if i >= 0 else 0.0


PhiFunction = Union[LinearPhi, RationalPhi, InducedPhi, TablePhi]


def iterate(phi: PhiFunction, t: float, n: int) -> float:
    """n-fold application of ``phi.eval`` starting from t."""
    _check_nonneg(t)
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    value = t
    for _ in range(n):
        value = phi.eval(value)
    return value


def horizon(
    phi: PhiFunction,
    t0: float,
    epsilon: float,
    lam: float,
    cap: int = DEFAULT_HORIZON_CAP,
) -> int:
    """Least N with iterate(phi, t0, N) <= min(epsilon, lam).

    Raises HorizonExceeded when the iterates have not dropped below the
    target after ``cap`` steps, which signals an inadmissible modulus.
    """
    if t0 <= 0.0:
        raise ValueError("t0 must be positive")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie strictly between 0 and 1")
    target = min(epsilon, lam)
    value = t0
    n = 0
    while value > target:
        value = phi.eval(value)
        n += 1
        if n > cap:
            raise HorizonExceeded(
                f"iterates still above {target!r} after {cap} steps"
            )
    return n


def verify_phi_class(
    phi: PhiFunction,
    grid: int = 16,
    t_max: float = 2.0,
    iter_cap: int = DEFAULT_ITER_CAP,
) -> Report:
    """Check admissibility on a grid over (0, t_max].

    Laws: ``nondecreasing`` (exact, on adjacent grid points),
    ``below_identity`` (phi(t) < t strictly), and ``iterates_vanish``
    (iterates fall below DECAY_THRESHOLD within ``iter_cap`` steps).
    When monotonicity holds, decay from the largest grid point bounds
    decay from all smaller ones, so only that start is iterated.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    ts = [t_max * i / grid for i in range(1, grid + 1)]
    values = [phi.eval(t) for t in ts]

    mono = []
    for i in range(len(ts) - 1):
        if values[i] > values[i + 1]:
            mono.append((ts[i], ts[i + 1], values[i], values[i + 1]))
    monotone_ok = not mono

    below = [(t, v) for t, v in zip(ts, values) if not v < t]

    decay = []
    starts = [ts[-1]] if monotone_ok else ts
    for t in starts:
        value = t
        steps = 0
        while value > DECAY_THRESHOLD:
            value = phi.eval(value)
            steps += 1
            if steps > iter_cap:
                decay.append((t, value, steps))
                break

    laws = (
        LawCheck("nondecreasing", monotone_ok, len(ts) - 1, tuple(mono[:_WITNESS_CAP])),
        LawCheck("below_identity", not below, len(ts), tuple(below[:_WITNESS_CAP])),
        LawCheck("iterates_vanish", not decay, len(starts), tuple(decay[:_WITNESS_CAP])),
    )
    return Report(laws=laws)


def ensure_phi_class(phi: PhiFunction, t_max: float = 2.0) -> None:
    """Raise PhiInvalid unless ``phi`` passes verify_phi_class."""
    report = verify_phi_class(phi, t_max=t_max)
    if not report.passed:
        raise PhiInvalid(
            f"modulus failed admissibility checks: {', '.join(report.failures())}",
            report=report,
        )
