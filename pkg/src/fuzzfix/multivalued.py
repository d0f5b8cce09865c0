"""Set-valued contractions, fuzzy-closure membership, and the orbit solver.

The set-valued condition quantifies an existential inside the
implication: past the pair's crossing time, every image point u of the
first argument needs some image point v of the second with
membership(u, v, phi(t)) > 1 - phi(t). The orbit solver follows the
constructive chain that this guarantees, choosing the best admissible
successor at each shrinking scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .contraction import (
    ETA_LADDER,
    MAX_COUNTEREXAMPLES,
    ContractionReport,
    CounterExample,
)
from .errors import NoAdmissibleSuccessor, NotDemicompact, UnknownPoint
from .fmspace import (
    FiniteSpace,
    FuzzyMetric,
    Point,
    Space,
    is_cauchy_window,
    threshold,
)
from .maps import BijectionSpec
from .phi import PhiFunction, ensure_phi_class, horizon
from .solver import SolverConfig
from .tnorm import Grade


@dataclass(frozen=True)
class SetValuedMap:
    """Finite-valued map point -> nonempty tuple of points.

    The domain is the image table's key set; iteration order follows the
    table, so orbits are reproducible for a fixed configuration.
    """

    images: Dict[Point, Tuple[Point, ...]]

    def __post_init__(self):
        if not self.images:
            raise ValueError("set-valued map needs a nonempty domain")
        table = {key: tuple(values) for key, values in self.images.items()}
        if any(not values for values in table.values()):
            raise ValueError("every image set must be nonempty")
        object.__setattr__(self, "images", table)

    def domain(self) -> Tuple[Point, ...]:
        return tuple(self.images)

    def image(self, p: Point) -> Tuple[Point, ...]:
        try:
            return self.images[p]
        except KeyError:
            raise UnknownPoint(f"{p!r} is not in the set-valued map's domain") from None


def validate_setvalued(space: Space, T: SetValuedMap) -> None:
    for key, values in T.images.items():
        if not space.contains(key):
            raise ValueError(f"domain point {key!r} lies outside the space")
        for v in values:
            if not space.contains(v):
                raise ValueError(f"image point {v!r} lies outside the space")


def check_demicompact_finite(space: Space) -> bool:
    """True only for finite spaces, where every orbit has a constant
    subsequence. Continuum spaces are never inferred demicompact, even
    when they happen to be compact; callers must assert the property."""
    return isinstance(space, FiniteSpace)


def in_fuzzy_closure(
    fm: FuzzyMetric,
    points: Sequence[Point],
    y: Point,
    levels: Sequence[Tuple[float, Grade]],
) -> bool:
    """True iff at every (epsilon, lam) level some point of the set is
    within the entourage of y. Exact for finite sets, where it reduces
    to a zero-distance member."""
    if not points:
        raise ValueError("closure membership needs a nonempty set")
    if not levels:
        raise ValueError("closure membership needs at least one level")
    for epsilon, lam in levels:
        if not any(
            fm.membership(x, y, epsilon) > 1.0 - lam for x in points
        ):
            return False
    return True


def select_successor(
    fm: FuzzyMetric,
    T: SetValuedMap,
    g: BijectionSpec,
    phi: PhiFunction,
    u: Point,
    y: Point,
    t: float,
) -> Point:
    """The image point of T(g(y)) closest to u at scale phi(t).

    Maximizes membership(u, v, phi(t)); ties break toward the earlier
    point in canonical order. Raises NoAdmissibleSuccessor when even the
    maximizer misses the strict bound, i.e. the contraction condition
    fails at this step.
    """
    if t <= 0.0:
        raise ValueError("t must be positive")
    space = fm.space
    scaled = phi.eval(t)
    candidates = T.image(g.apply(space, y))
    best = None
    best_grade = -1.0
    for v in sorted(candidates, key=space.point_key):
        grade = fm.membership(u, v, scaled)
        if grade > best_grade:
            best = v
            best_grade = grade
    if not best_grade > 1.0 - scaled:
        raise NoAdmissibleSuccessor(
            f"no image point of {y!r} is admissible at scale {scaled!r} "
            f"(best grade {best_grade!r})"
        )
    return best


def check_setvalued_contraction(
    fm: FuzzyMetric,
    T: SetValuedMap,
    g: BijectionSpec,
    phi: PhiFunction,
    pairs: Optional[Sequence[Tuple[Point, Point]]] = None,
) -> ContractionReport:
    """Threshold-reduced check of the set-valued contraction condition.

    With ``pairs`` omitted, every ordered pair of points whose g-image
    lies in the map's domain is checked (finite spaces); continuum
    spaces need an explicit pair plan. A counterexample records the u
    with no admissible v, with the consequent being the best achievable
    grade at that scale.
    """
    ensure_phi_class(phi)
    space = fm.space
    g.validate_bijection(space)
    validate_setvalued(space, T)
    if pairs is None:
        if not isinstance(space, FiniteSpace):
            raise ValueError("an explicit pair plan is required on continuum spaces")
        eligible = [x for x in space.labels if g.apply(space, x) in T.images]
        pairs = [(x, y) for x in eligible for y in eligible]
    found: List[CounterExample] = []
    for x, y in pairs:
        gx, gy = g.apply(space, x), g.apply(space, y)
        tau_g = threshold(fm, gx, gy)
        for u in T.image(gx):
            for eta in ETA_LADDER:
                t = tau_g + eta
                scaled = phi.eval(t)
                best = max(fm.membership(u, v, scaled) for v in T.image(gy))
                if not best > 1.0 - scaled:
                    found.append(
                        CounterExample(
                            x, y, t, fm.membership(gx, gy, t), best, u=u
                        )
                    )
                    break
    found.sort(
        key=lambda ce: (
            space.point_key(ce.x),
            space.point_key(ce.y),
            space.point_key(ce.u),
            ce.t,
        )
    )
    return ContractionReport(
        passed=not found,
        checked_pairs=len(pairs),
        counterexamples=tuple(found[:MAX_COUNTEREXAMPLES]),
        method="threshold-reduction",
    )


@dataclass(frozen=True)
class MemberEvidence:
    epsilon: float
    lam: Grade
    witness: Point
    grade: Grade
    passed: bool


@dataclass(frozen=True)
class OrbitResult:
    point: Point
    orbit: Tuple[Point, ...]
    member_check: Tuple[MemberEvidence, ...]
    in_image_of_carried: bool
    in_image: Optional[bool]
    converged: bool


def solve_inclusion(
    fm: FuzzyMetric,
    T: SetValuedMap,
    g: BijectionSpec,
    phi: PhiFunction,
    cfg: SolverConfig,
    assume_demicompact: bool = False,
) -> OrbitResult:
    """Build the successor orbit from cfg.start and test the limit point.

    Step n picks x_{n+1} = select_successor(u=x_n, y=x_n, t_n) with
    t_n = iterate(phi, t0, n), which maintains the chain bound
    membership(x_{n+1}, x_n, t_{n+1}) > 1 - t_{n+1}. Stopping mirrors
    the single-valued solver: trailing window Cauchy at or past the
    horizon, else max_iter with converged=False.

    The limit point x is then tested for closure membership in the image
    of its g-carried point at shrinking levels (``member_check``, summary
    ``in_image_of_carried``) and, when x itself is in the domain, for
    x in T(x) (``in_image``). The two coincide for the identity
    bijection; both are reported.
    """
    space = fm.space
    ensure_phi_class(phi, t_max=max(cfg.t0, 2.0))
    g.validate_bijection(space)
    validate_setvalued(space, T)
    if not check_demicompact_finite(space) and not assume_demicompact:
        raise NotDemicompact(
            "set-valued solve on a continuum space requires assume_demicompact=True"
        )
    if not space.contains(cfg.start):
        raise UnknownPoint(f"start point {cfg.start!r} lies outside the space")

    n_horizon = horizon(phi, cfg.t0, cfg.epsilon, cfg.lam)
    orbit = [cfg.start]
    window_points = [cfg.start]
    x = cfg.start
    t = cfg.t0
    stopped = False
    for n in range(1, cfg.max_iter + 1):
        x_next = select_successor(fm, T, g, phi, u=x, y=x, t=t)
        orbit.append(x_next)
        window_points.append(x_next)
        if len(window_points) > cfg.window:
            window_points.pop(0)
        x = x_next
        t = phi.eval(t)
        if n >= n_horizon and is_cauchy_window(
            fm, window_points, cfg.epsilon, cfg.lam
        ):
            stopped = True
            break

    levels = (
        (cfg.epsilon, cfg.lam),
        (cfg.epsilon / 4.0, cfg.lam / 4.0),
        (cfg.epsilon / 16.0, cfg.lam / 16.0),
    )
    carried_image = T.image(g.apply(space, x))
    evidence = []
    for epsilon, lam in levels:
        best = None
        best_grade = -1.0
        for v in sorted(carried_image, key=space.point_key):
            grade = fm.membership(v, x, epsilon)
            if grade > best_grade:
                best = v
                best_grade = grade
        evidence.append(
            MemberEvidence(epsilon, lam, best, best_grade, best_grade > 1.0 - lam)
        )
    in_carried = all(e.passed for e in evidence)
    in_image = None
    if x in T.images:
        in_image = in_fuzzy_closure(fm, T.image(x), x, levels)
    return OrbitResult(
        point=x,
        orbit=tuple(orbit),
        member_check=tuple(evidence),
        in_image_of_carried=in_carried,
        in_image=in_image,
        converged=stopped,
    )
