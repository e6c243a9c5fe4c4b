import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pyseesaw.exceptions import ConstraintError, DesignSpaceError
from pyseesaw.mechanics import (
    RESIN,
    DisplacementConvention,
    LoadCase,
    SeesawGeometry,
    ThicknessAssignment,
    displacement_ratio,
    solve_load_case,
)
from pyseesaw.optics import ScrewSpec, tuning_accuracy
from pyseesaw.search import (
    DesignConstraints,
    DesignSpace,
    ParameterRange,
    Reason,
    evaluate_candidate,
    grid_search,
    local_refine,
    validate_top_k,
)

SCREW = ScrewSpec.from_degrees(2.0, 5.0)

GRID = {
    "l1": (20.0, 30.0, 3),
    "l2": (4.0, 8.0, 3),
    "l3": (25.0, 25.0, 1),
    "t1": (2.5, 3.5, 3),
    "t2": (1.5, 1.5, 1),
    "b": (8.0, 8.0, 1),
}

RANDOM_BOUNDS = {
    "l1": (10.0, 40.0),
    "l2": (3.0, 12.0),
    "l3": (10.0, 40.0),
    "t1": (1.0, 4.0),
    "t2": (1.0, 4.0),
    "b": (4.0, 12.0),
}

DEFLECTION = DisplacementConvention.PaperDeflection


def make_space(grid=GRID, assignment=ThicknessAssignment.Swapped, **kwargs):
    ranges = {name: ParameterRange(*bounds) for name, bounds in grid.items()}
    return DesignSpace(ranges, RESIN, SCREW, thickness_assignment=assignment, **kwargs)


def naive_search(grid, constraints, assignment=ThicknessAssignment.Swapped, convention=DEFLECTION):
    """Plain enumeration ranked by (score, stress at stroke, geometry) from the solved load case."""
    axes = [np.linspace(low, high, steps) if steps > 1 else np.array([low]) for low, high, steps in grid.values()]
    feasible = []
    for values in itertools.product(*axes):
        geom = SeesawGeometry(*(float(v) for v in values), thickness_assignment=assignment)
        if min(geom.lengths()) < constraints.min_feature:
            continue
        # a tiny load keeps any geometry in the small-angle regime; everything below is linear in it
        state = solve_load_case(geom, RESIN, LoadCase.from_force(1e-6), convention)
        stress = constraints.required_stroke / state.w3 * state.sigma_max
        if stress * constraints.safety_factor > RESIN.bending_strength:
            continue
        if state.w2 / state.w3 > constraints.max_parasitic_fraction:
            continue
        if state.ratio <= constraints.min_ratio:
            continue
        score = abs(state.ratio - constraints.target_ratio)
        feasible.append((score, float(f"{stress:.9g}"), geom.lengths()))
    return [lengths for _, _, lengths in sorted(feasible)]


def random_grid(rng):
    grid = {}
    for name, (low, high) in RANDOM_BOUNDS.items():
        steps = int(rng.integers(1, 5))
        if steps == 1:
            value = float(rng.uniform(low, high))
            grid[name] = (value, value, 1)
        else:
            a, b = sorted(rng.uniform(low, high, size=2))
            grid[name] = (float(a), float(b), steps)
    return grid


def test_parameter_range():
    assert_allclose(ParameterRange(4, 8, 5).values(), (4, 5, 6, 7, 8))
    assert ParameterRange.fixed(3).is_fixed
    assert ParameterRange(4, 8, 5).clip(9) == 8
    with pytest.raises(DesignSpaceError):
        ParameterRange(0, 8, 5)
    with pytest.raises(DesignSpaceError):
        ParameterRange(8, 4, 5)
    with pytest.raises(DesignSpaceError):
        ParameterRange(4, 8, 1)


def test_space_cap():
    assert make_space().size == 27
    with pytest.raises(DesignSpaceError):
        make_space(cap=10)


def test_space_requires_all_parameters():
    ranges = {name: ParameterRange(*bounds) for name, bounds in GRID.items() if name != "b"}
    with pytest.raises(DesignSpaceError):
        DesignSpace(ranges, RESIN, SCREW)


def test_constraints_validation():
    with pytest.raises(ConstraintError):
        DesignConstraints()
    with pytest.raises(ConstraintError):
        DesignConstraints(target_ratio=11, target_dz=2.5)
    with pytest.raises(ConstraintError):
        DesignConstraints(target_ratio=11, safety_factor=0.5)
    assert DesignConstraints(target_ratio=11).replace(required_stroke=1.0).required_stroke == 1.0


def test_grid_search_matches_naive_enumeration():
    constraints = DesignConstraints(target_ratio=11)
    result = grid_search(make_space(), constraints)

    assert [c.geometry.lengths() for c in result.ranked] == naive_search(GRID, constraints)
    assert result.evaluated == 27
    assert len(result.ranked) == 18
    assert result.census == {Reason.Printability: 0, Reason.Strength: 9, Reason.Parasitic: 0, Reason.RatioRange: 0}


def test_grid_search_matches_naive_enumeration_random_spaces():
    rng = np.random.default_rng(43)
    feasible_total = 0
    for _ in range(3):
        grid = random_grid(rng)
        assignment = list(ThicknessAssignment)[rng.integers(2)]
        convention = list(DisplacementConvention)[rng.integers(2)]
        constraints = DesignConstraints(
            target_ratio=float(rng.uniform(3.0, 15.0)),
            required_stroke=float(rng.uniform(0.05, 0.3)),
            safety_factor=float(rng.uniform(1.0, 2.0)),
        )

        space = make_space(grid, assignment, convention=convention)
        assert space.size <= 10**4
        result = grid_search(space, constraints)
        expected = naive_search(grid, constraints, assignment, convention)

        assert result.evaluated == space.size
        assert len(result.ranked) == len(expected)
        if expected:
            assert result.best.geometry.lengths() == expected[0]
        feasible_total += len(expected)
    assert feasible_total > 0


def test_tighter_safety_factor_never_adds_candidates():
    rng = np.random.default_rng(47)
    for _ in range(1000):
        geom = SeesawGeometry(
            *(float(rng.uniform(low, high)) for low, high in RANDOM_BOUNDS.values()),
            thickness_assignment=ThicknessAssignment.Swapped,
        )
        space = DesignSpace.around(geom, RESIN, SCREW)
        loose, tight = sorted(rng.uniform(1.0, 4.0, size=2))
        constraints = DesignConstraints(target_ratio=11, required_stroke=float(rng.uniform(0.05, 1.0)))

        if evaluate_candidate(geom, space, constraints.replace(safety_factor=float(tight))).feasible:
            assert evaluate_candidate(geom, space, constraints.replace(safety_factor=float(loose))).feasible


def test_tighter_safety_factor_shrinks_feasible_set():
    space = make_space()
    previous = None
    for safety_factor in (1.0, 1.25, 1.5, 2.0, 3.0):
        ranked = grid_search(space, DesignConstraints(target_ratio=11, safety_factor=safety_factor)).ranked
        current = {c.geometry.lengths() for c in ranked}
        if previous is not None:
            assert current <= previous
        previous = current


def test_grid_search_best():
    result = grid_search(make_space(), DesignConstraints(target_ratio=11))
    best = result.best
    assert best.geometry.lengths() == (30.0, 8.0, 25.0, 3.0, 1.5, 8.0)
    assert_allclose(best.achieved_ratio, 11.3208, rtol=1e-4)
    assert_allclose(best.objective_score, 0.3208, rtol=1e-3)
    assert best.feasible
    scores = [c.objective_score for c in result.ranked]
    assert scores == sorted(scores)


def test_grid_search_deterministic():
    constraints = DesignConstraints(target_ratio=11)
    first = [c.as_dict() for c in grid_search(make_space(), constraints).ranked]
    second = [c.as_dict() for c in grid_search(make_space(), constraints).ranked]
    assert first == second


def test_target_dz():
    geom = SeesawGeometry(25, 6, 25, 3, 1.5, 8, ThicknessAssignment.Swapped)
    target = tuning_accuracy(SCREW, displacement_ratio(geom)).delta_z
    result = grid_search(make_space(), DesignConstraints(target_dz=target))
    assert result.best.geometry == geom
    assert result.best.objective_score < 1e-12


def test_tie_break_prefers_lower_stress_then_geometry():
    grid = dict(GRID, l1=(25.0, 25.0, 1), l2=(6.0, 6.0, 1), t1=(3.0, 3.0, 1), b=(6.0, 10.0, 3))
    ranked = grid_search(make_space(grid), DesignConstraints(target_ratio=11)).ranked
    assert len(ranked) == 3
    assert len({c.objective_score for c in ranked}) == 1
    # stress at the required stroke does not depend on width, so the narrowest lever wins
    assert_allclose([c.max_stress_at_stroke for c in ranked], ranked[0].max_stress_at_stroke, rtol=1e-12)
    assert [c.geometry.b for c in ranked] == [6.0, 8.0, 10.0]


def test_rejection_reasons(reference_geometry):
    constraints = DesignConstraints(target_ratio=11, max_parasitic_fraction=0.05)
    space = DesignSpace.around(reference_geometry, RESIN, SCREW)
    candidate = evaluate_candidate(reference_geometry, space, constraints)
    assert Reason.RatioRange in candidate.reasons
    assert Reason.Parasitic in candidate.reasons
    assert_allclose(candidate.parasitic_fraction, 6 / (2 * 25.75))

    thin = evaluate_candidate(reference_geometry, space, constraints.replace(min_feature=2.0))
    assert Reason.Printability in thin.reasons

    weak = evaluate_candidate(reference_geometry, space, constraints.replace(required_stroke=10.0))
    assert Reason.Strength in weak.reasons


def test_empty_result():
    result = grid_search(make_space(), DesignConstraints(target_ratio=11, required_stroke=50.0))
    assert result.is_empty
    assert result.best is None
    assert result.census[Reason.Strength] == 27


def test_local_refine_reaches_target():
    grid = dict(GRID, l1=(25.0, 25.0, 1), l2=(4.0, 8.0, 5), t1=(3.0, 3.0, 1))
    space = make_space(grid)
    constraints = DesignConstraints(target_ratio=11)

    start = grid_search(space, constraints).best
    assert start.geometry.l2 == 6.0

    refined, trace = local_refine(start, space, constraints)
    assert refined.feasible
    assert abs(refined.achieved_ratio - 11) / 11 < 1e-3
    assert_allclose(refined.geometry.l2, 62.893 / 11, rtol=1e-3)
    assert all(later < earlier for earlier, later in zip(trace, trace[1:]))
    assert trace[0] == start.objective_score
    assert trace[-1] == refined.objective_score


def test_local_refine_needs_feasible_start(reference_geometry):
    space = DesignSpace.around(reference_geometry, RESIN, SCREW)
    constraints = DesignConstraints(target_ratio=11)
    with pytest.raises(ConstraintError):
        local_refine(evaluate_candidate(reference_geometry, space, constraints), space, constraints)


def test_validate_top_k():
    space = make_space()
    result = grid_search(space, DesignConstraints(target_ratio=11))
    checked = validate_top_k(result, space, k=3)
    assert len(checked) == 3
    for candidate, fem_ratio in checked:
        assert_allclose(fem_ratio, candidate.achieved_ratio, rtol=1e-2)


def test_kinematic_convention_space():
    space = make_space(convention=DisplacementConvention.KinematicTotal)
    result = grid_search(space, DesignConstraints(target_ratio=11))
    for candidate in result.ranked:
        assert_allclose(
            candidate.achieved_ratio,
            displacement_ratio(candidate.geometry, DisplacementConvention.KinematicTotal),
        )


def test_refined_candidate_joins_the_ranking():
    grid = dict(GRID, l1=(25.0, 25.0, 1), l2=(4.0, 8.0, 5), t1=(3.0, 3.0, 1))
    space = make_space(grid)
    constraints = DesignConstraints(target_ratio=11)

    result = grid_search(space, constraints)
    refined, _ = local_refine(result.best, space, constraints)
    merged = result.with_candidate(refined)

    assert merged.best == refined
    assert len(merged.ranked) == len(result.ranked) + 1
    assert merged.evaluated == result.evaluated
    assert validate_top_k(merged, space, k=1)[0][0] == refined

    assert len(merged.with_candidate(refined).ranked) == len(merged.ranked)
    with pytest.raises(ConstraintError):
        result.with_candidate(evaluate_candidate(SeesawGeometry.reference(), space, constraints))
