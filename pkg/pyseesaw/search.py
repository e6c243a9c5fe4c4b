# -*- coding: utf-8 -*-

"""
Exhaustive and local search over the lever geometry.

Candidates are scored with the closed-form model only; the frame oracle checks the top few afterwards.
"""

from __future__ import annotations

import itertools
import logging
import math
import typing
from enum import Enum

import numpy as np

from . import consts
from .exceptions import ConstraintError, DesignSpaceError, SeesawError
from .fem import oracle_displacement_ratio
from .mechanics import (
    DisplacementConvention,
    LoadCase,
    Material,
    SeesawGeometry,
    ThicknessAssignment,
    displacement_ratio,
    max_bending_stress,
    support_rotation,
)
from .optics import ScrewSpec, tuning_accuracy

logger = logging.getLogger(__name__)


class Reason(Enum):
    Printability = "printability"
    Strength = "strength"
    Parasitic = "parasitic"
    RatioRange = "ratio-range"


class ParameterRange:
    def __init__(self, low: float, high: float, steps: int = 1):
        if not (0 < low <= high):
            raise DesignSpaceError(f"Range must satisfy 0 < low <= high, got ({low!r}, {high!r})")
        if not (isinstance(steps, int) and steps >= 1):
            raise DesignSpaceError(f"Step count must be a positive integer, got {steps!r}")
        if steps == 1 and low != high:
            raise DesignSpaceError(f"A single step needs low == high, got ({low!r}, {high!r})")

        self.low = float(low)
        self.high = float(high)
        self.steps = steps

    @classmethod
    def fixed(cls, value: float) -> ParameterRange:
        return cls(value, value, 1)

    @property
    def is_fixed(self) -> bool:
        return self.low == self.high

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.low])
        return np.linspace(self.low, self.high, self.steps)

    def clip(self, value: float) -> float:
        return min(max(value, self.low), self.high)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParameterRange) and (self.low, self.high, self.steps) == (
            other.low,
            other.high,
            other.steps,
        )

    def __repr__(self):
        return f"ParameterRange({self.low:g}, {self.high:g}, {self.steps})"


class DesignSpace:
    def __init__(
        self,
        ranges: typing.Dict[str, ParameterRange],
        material: Material,
        screw: ScrewSpec,
        thickness_assignment: ThicknessAssignment = ThicknessAssignment.AsPrinted,
        convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
        cap: int = consts.DEFAULT_CANDIDATE_CAP,
    ):
        missing = set(SeesawGeometry.FIELDS) - set(ranges)
        unknown = set(ranges) - set(SeesawGeometry.FIELDS)
        if missing or unknown:
            raise DesignSpaceError(
                f"Ranges must cover exactly {SeesawGeometry.FIELDS}, missing={missing} unknown={unknown}"
            )

        self.ranges = {name: ranges[name] for name in SeesawGeometry.FIELDS}
        self.material = material
        self.screw = screw
        self.thickness_assignment = thickness_assignment
        self.convention = convention
        self.cap = cap

        if self.size > cap:
            raise DesignSpaceError(f"Design space holds {self.size} candidates, above the cap of {cap}")

    @classmethod
    def around(cls, geom: SeesawGeometry, material: Material, screw: ScrewSpec, **kwargs) -> DesignSpace:
        """Single-point space at `geom`."""
        ranges = {name: ParameterRange.fixed(getattr(geom, name)) for name in SeesawGeometry.FIELDS}
        kwargs.setdefault("thickness_assignment", geom.thickness_assignment)
        return cls(ranges, material, screw, **kwargs)

    @property
    def size(self) -> int:
        return math.prod(r.steps for r in self.ranges.values())

    def grid(self) -> typing.Iterator[typing.Tuple[float, ...]]:
        return itertools.product(*(r.values() for r in self.ranges.values()))

    def geometry(self, values: typing.Sequence[float]) -> SeesawGeometry:
        return SeesawGeometry(*(float(v) for v in values), thickness_assignment=self.thickness_assignment)

    def contains(self, geom: SeesawGeometry) -> bool:
        return all(r.low <= getattr(geom, name) <= r.high for name, r in self.ranges.items())


class DesignConstraints:
    def __init__(
        self,
        min_feature: float = consts.DEFAULT_MIN_FEATURE_MM,
        required_stroke: float = consts.DEFAULT_REQUIRED_STROKE_MM,
        safety_factor: float = consts.DEFAULT_SAFETY_FACTOR,
        max_parasitic_fraction: float = consts.DEFAULT_MAX_PARASITIC_FRACTION,
        target_dz: typing.Optional[float] = None,
        target_ratio: typing.Optional[float] = None,
        min_ratio: float = consts.DEFAULT_MIN_RATIO,
    ):
        if not min_feature > 0:
            raise ConstraintError(f"The field min_feature has an invalid value: {min_feature!r}")
        if not required_stroke > 0:
            raise ConstraintError(f"The field required_stroke has an invalid value: {required_stroke!r}")
        if not safety_factor >= 1:
            raise ConstraintError(f"The field safety_factor has an invalid value: {safety_factor!r}")
        if not max_parasitic_fraction > 0:
            raise ConstraintError(f"The field max_parasitic_fraction has an invalid value: {max_parasitic_fraction!r}")
        if (target_dz is None) == (target_ratio is None):
            raise ConstraintError("Exactly one of target_dz / target_ratio must be set")
        for name, target in (("target_dz", target_dz), ("target_ratio", target_ratio)):
            if target is not None and not target > 0:
                raise ConstraintError(f"The field {name} has an invalid value: {target!r}")

        self.min_feature = min_feature
        self.required_stroke = required_stroke
        self.safety_factor = safety_factor
        self.max_parasitic_fraction = max_parasitic_fraction
        self.target_dz = target_dz
        self.target_ratio = target_ratio
        self.min_ratio = min_ratio

    def replace(self, **changes) -> DesignConstraints:
        params = dict(vars(self))
        params.update(changes)
        return DesignConstraints(**params)

    def __repr__(self):
        target = f"target_dz={self.target_dz}" if self.target_dz is not None else f"target_ratio={self.target_ratio}"
        return f"DesignConstraints({target}, stroke={self.required_stroke}, sf={self.safety_factor})"


class DesignCandidate:
    def __init__(
        self,
        geometry: SeesawGeometry,
        achieved_ratio: float,
        achieved_dz: float,
        max_stress_at_stroke: float,
        parasitic_fraction: float,
        reasons: typing.FrozenSet[Reason],
        objective_score: float,
    ):
        self.geometry = geometry
        self.achieved_ratio = achieved_ratio
        self.achieved_dz = achieved_dz
        self.max_stress_at_stroke = max_stress_at_stroke
        self.parasitic_fraction = parasitic_fraction
        self.reasons = reasons
        self.objective_score = objective_score

    @property
    def feasible(self) -> bool:
        return not self.reasons

    def sort_key(self) -> tuple:
        # stresses of candidates that differ only in width agree up to rounding
        stress = float(f"{self.max_stress_at_stroke:.9g}")
        return (self.objective_score, stress, self.geometry.lengths())

    def __eq__(self, other) -> bool:
        return isinstance(other, DesignCandidate) and self.as_dict() == other.as_dict()

    def __repr__(self):
        return (
            f"DesignCandidate({self.geometry!r}, ratio={self.achieved_ratio:.6g}, dz={self.achieved_dz:.6g} um, "
            f"score={self.objective_score:.6g}, feasible={self.feasible})"
        )

    def as_dict(self) -> dict:
        ret = {name: getattr(self.geometry, name) for name in SeesawGeometry.FIELDS}
        ret.update(
            {
                "achieved_ratio": self.achieved_ratio,
                "achieved_dz": self.achieved_dz,
                "max_stress_at_stroke": self.max_stress_at_stroke,
                "parasitic_fraction": self.parasitic_fraction,
                "feasible": self.feasible,
                "reasons": sorted(r.value for r in self.reasons),
                "objective_score": self.objective_score,
            }
        )
        return ret


class SearchResult:
    def __init__(self, ranked: typing.List[DesignCandidate], census: typing.Dict[Reason, int], evaluated: int):
        self.ranked = ranked
        self.census = census
        self.evaluated = evaluated

    @property
    def best(self) -> typing.Optional[DesignCandidate]:
        return self.ranked[0] if self.ranked else None

    @property
    def is_empty(self) -> bool:
        return not self.ranked

    def with_candidate(self, candidate: DesignCandidate) -> SearchResult:
        """Same result with an extra feasible candidate (e.g. a refined one) placed by rank."""
        if not candidate.feasible:
            raise ConstraintError(f"Only feasible candidates can be ranked, got {candidate!r}")
        if candidate in self.ranked:
            return SearchResult(list(self.ranked), dict(self.census), self.evaluated)

        ranked = sorted(self.ranked + [candidate], key=DesignCandidate.sort_key)
        return SearchResult(ranked, dict(self.census), self.evaluated)

    def __repr__(self):
        return f"SearchResult(feasible={len(self.ranked)}, evaluated={self.evaluated})"


def evaluate_candidate(geom: SeesawGeometry, space: DesignSpace, constraints: DesignConstraints) -> DesignCandidate:
    reasons = set()

    if min(geom.lengths()) < constraints.min_feature:
        reasons.add(Reason.Printability)

    try:
        ratio = displacement_ratio(geom, space.convention)
        dz = tuning_accuracy(space.screw, ratio).delta_z

        # per-newton joint response; the P arm follows the joint rotation rigidly
        w2, theta2 = support_rotation(
            geom.l1, geom.l2, geom.supporting_section.second_moment, space.material.youngs_modulus
        )
        w3 = geom.passive_arm * theta2
        stroke_force = constraints.required_stroke / w3
        stress = max(max_bending_stress(geom, LoadCase.from_force(stroke_force)))
        parasitic = w2 / w3
    except SeesawError as e:
        logger.debug("Candidate %r is degenerate: %s", geom, e)
        return DesignCandidate(geom, math.nan, math.nan, math.inf, math.inf, frozenset({Reason.Printability}), math.inf)

    if stress * constraints.safety_factor > space.material.bending_strength:
        reasons.add(Reason.Strength)
    if parasitic > constraints.max_parasitic_fraction:
        reasons.add(Reason.Parasitic)
    if ratio <= constraints.min_ratio:
        reasons.add(Reason.RatioRange)

    if constraints.target_ratio is not None:
        score = abs(ratio - constraints.target_ratio)
    else:
        score = abs(dz - constraints.target_dz)

    return DesignCandidate(geom, ratio, dz, stress, parasitic, frozenset(reasons), score)


def grid_search(space: DesignSpace, constraints: DesignConstraints) -> SearchResult:
    """
    Evaluate every grid point, keep the feasible ones ranked by objective score, then lower stress, then geometry.
    Infeasible candidates are counted once per failed constraint.
    """
    if space.size > space.cap:
        raise DesignSpaceError(f"Design space holds {space.size} candidates, above the cap of {space.cap}")

    logger.debug("Searching %d candidates", space.size)

    feasible = []
    census = {reason: 0 for reason in Reason}
    evaluated = 0
    for values in space.grid():
        candidate = evaluate_candidate(space.geometry(values), space, constraints)
        evaluated += 1
        if candidate.feasible:
            feasible.append(candidate)
        for reason in candidate.reasons:
            census[reason] += 1

    feasible.sort(key=DesignCandidate.sort_key)

    if not feasible:
        logger.warning("No feasible candidate among %d: %s", evaluated, {r.value: n for r, n in census.items()})

    return SearchResult(feasible, census, evaluated)


def local_refine(
    start: DesignCandidate,
    space: DesignSpace,
    constraints: DesignConstraints,
    max_iters: int = consts.DEFAULT_REFINE_ITERS,
) -> typing.Tuple[DesignCandidate, typing.List[float]]:
    """
    Coordinate descent over the non-fixed parameters. Each sweep tries +/- step on every parameter and keeps strict
    improvements that stay feasible and in range; a sweep without improvement halves all steps. Stops when every step
    is below REFINE_MIN_STEP_MM or after `max_iters` sweeps. Returns the best candidate and the objective trace.
    """
    if not start.feasible:
        raise ConstraintError(f"Refinement must start from a feasible candidate, got {start!r}")

    steps = {}
    for name, r in space.ranges.items():
        if not r.is_fixed:
            steps[name] = (r.high - r.low) / max(r.steps - 1, 1)

    best = start
    trace = [start.objective_score]

    for iteration in range(max_iters):
        if not steps or max(steps.values()) < consts.REFINE_MIN_STEP_MM:
            break

        improved = False
        for name in SeesawGeometry.FIELDS:
            if name not in steps:
                continue
            current = getattr(best.geometry, name)
            for direction in (1.0, -1.0):
                value = space.ranges[name].clip(current + direction * steps[name])
                if value == current:
                    continue
                candidate = evaluate_candidate(best.geometry.replace(**{name: value}), space, constraints)
                if candidate.feasible and candidate.objective_score < best.objective_score:
                    best = candidate
                    improved = True
                    break

        if improved:
            trace.append(best.objective_score)
        else:
            steps = {name: step / 2 for name, step in steps.items()}

        logger.debug("Refine sweep %d: score %.6g", iteration, best.objective_score)

    return best, trace


def validate_top_k(
    result: SearchResult,
    space: DesignSpace,
    k: int = consts.DEFAULT_TOP_K,
    elements_per_segment: int = consts.DEFAULT_ELEMENTS_PER_SEGMENT,
) -> typing.List[typing.Tuple[DesignCandidate, float]]:
    """Frame-oracle displacement ratio of the k best candidates, under the space's convention."""
    ret = []
    for candidate in result.ranked[:k]:
        ratio = oracle_displacement_ratio(candidate.geometry, space.material, space.convention, elements_per_segment)
        ret.append((candidate, ratio))
    return ret
