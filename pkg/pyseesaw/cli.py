# -*- coding: utf-8 -*-

"""
Command-line entry point.

    pyseesaw analyze --assignment swapped --active-mm 1 2 3
    pyseesaw analyze --assignment swapped --materials resin nylon --both-directions --plot sweep.png
    pyseesaw adjudicate --csv adjudication.csv
    pyseesaw tuning --angle-deg 5 --pitch-mm 2 --ratio 11
    pyseesaw optimize --config design.ini --csv ranked.csv

Exit status: 0 ok, 1 usage or invalid input, 2 constraint violation or infeasible search, 3 singular system.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import typing

import numpy as np

from . import consts
from .config import RunConfig
from .exceptions import (
    ConfigError,
    ConstraintError,
    DesignSpaceError,
    OutOfRegimeError,
    SeesawError,
    SingularSystemError,
)
from .fem import build_cantilever_frame, mesh_convergence, oracle_state, solve_frame
from .mechanics import (
    MATERIALS_AVAILABLE,
    RESIN,
    DisplacementConvention,
    LoadCase,
    SeesawGeometry,
    ThicknessAssignment,
    displacement_ratio,
    get_material_by_name,
    max_safe_active_displacement,
    max_safe_force,
    passive_arc_shortening,
    solve_load_case,
    transmission_fraction,
)
from .optics import (
    ScrewSpec,
    accuracy_surface,
    depth_of_focus,
    direct_screw_accuracy,
    focus_steps_per_depth,
    precision_gain,
    tuning_accuracy,
    usaf_line_pairs_per_mm,
    usaf_linewidth,
)
from .plotting import DisplacementSeries, plot_accuracy_surface, plot_displacements
from .report import adjudicate, fmt, render_table, write_csv
from .search import DesignCandidate, Reason, grid_search, local_refine, validate_top_k

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSTRAINT = 2
EXIT_SINGULAR = 3

PATCH_TOLERANCE = 1e-9

ANALYZE_HEADER = ("force_N", "active_mm", "passive_um", "horizontal_um", "arc_shortening_um", "sigma_max_MPa")
SURFACE_HEADER = ("angle_deg", "pitch_mm", "delta_z_um")
CANDIDATE_HEADER = tuple(f"{name}_mm" for name in SeesawGeometry.FIELDS) + (
    "ratio_1",
    "delta_z_um",
    "sigma_max_at_stroke_MPa",
    "parasitic_fraction_1",
    "objective_score_1",
)


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; that code is reserved for constraint violations
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _open_csv(path: str):
    return open(path, "w", encoding="utf-8", newline="")


def _load_config(args) -> RunConfig:
    if args.config:
        return RunConfig.load(args.config)
    return RunConfig(SeesawGeometry.reference(), RESIN)


#############
# Mechanics #
#############
def _analyze_loads(args, reference: bool) -> typing.List[LoadCase]:
    if args.force is not None:
        values, make = args.force, LoadCase.from_force
    else:
        values = consts.REFERENCE_ACTIVE_SWEEP_MM if reference else args.active_mm
        make = LoadCase.from_active_displacement

    if args.both_directions:
        # push-down first, then the mirrored push-up loads
        values = list(values) + [-value for value in values if value != 0]

    return [make(value) for value in values]


def cmd_analyze(args) -> int:
    config = _load_config(args)
    geom = config.geometry
    if args.assignment:
        geom = geom.replace(thickness_assignment=ThicknessAssignment(args.assignment))
    convention = DisplacementConvention(args.convention) if args.convention else config.convention
    materials = [get_material_by_name(name) for name in args.materials] if args.materials else [config.material]

    reference = args.force is None and args.active_mm is None
    loads = _analyze_loads(args, reference)

    ratio = displacement_ratio(geom, convention)

    print(f"geometry: {geom!r}")
    print(f"convention: {convention.value}")
    print(f"A:P displacement ratio: {fmt(ratio)} (P side moves {fmt(transmission_fraction(ratio))}% of A side)")

    header = list(ANALYZE_HEADER)
    if args.with_fem:
        header.append("fem_passive_um")
    if args.materials:
        header.insert(0, "material")

    rows = []
    series = []
    over_strength = 0
    for mat in materials:
        safe_force = max_safe_force(geom, mat)
        print(f"material: {mat!r}")
        safe_active = max_safe_active_displacement(geom, mat, 1.0, convention)
        print(f"safe load: {fmt(safe_force)} N, {fmt(safe_active)} mm at A")

        material_rows = []
        for load in loads:
            state = solve_load_case(geom, mat, load, convention)
            arc = passive_arc_shortening(state.theta3, geom.l3, geom.supporting_thickness)
            row = [
                state.force,
                state.active_total,
                1000 * state.w3,
                1000 * state.horizontal_p,
                1000 * arc,
                state.sigma_max,
            ]
            if args.with_fem:
                row.append(1000 * oracle_state(geom, mat, state.force, args.elements).passive)
            material_rows.append(row)

            if state.sigma_max > mat.bending_strength:
                over_strength += 1
                logger.warning(
                    "Load %r stresses the %s lever to %.6g MPa, above its bending strength %.6g MPa",
                    load,
                    mat.name,
                    state.sigma_max,
                    mat.bending_strength,
                )

        series.append(
            DisplacementSeries(mat.name, [row[1] for row in material_rows], [row[2] for row in material_rows])
        )
        rows += [[mat.name] + row if args.materials else row for row in material_rows]

    if reference and len(materials) == 1 and not args.both_directions:
        table_header = header + ["theory_um", "simulation_um", "experiment_um"]
        table_rows = [
            row + [theory, simulation, f"{experiment:g}+/-{std:g}"]
            for row, theory, simulation, experiment, std in zip(
                rows,
                consts.REFERENCE_THEORY_PASSIVE_UM,
                consts.REFERENCE_SIMULATION_PASSIVE_UM,
                consts.REFERENCE_EXPERIMENT_PASSIVE_UM,
                consts.REFERENCE_EXPERIMENT_PASSIVE_STD_UM,
            )
        ]
        print(render_table(table_header, table_rows))
    else:
        print(render_table(header, rows))

    if args.csv:
        with _open_csv(args.csv) as stream:
            write_csv(header, rows, stream)

    if args.plot:
        plot_displacements(series, args.plot)
        print(f"plot written to {args.plot}")

    if over_strength:
        print(f"{over_strength} load(s) exceed the bending strength")
        return EXIT_CONSTRAINT

    return EXIT_OK


def cmd_adjudicate(args) -> int:
    config = _load_config(args)
    elements = args.elements
    if elements is None:
        elements = config.search.elements_per_segment if config.search else consts.DEFAULT_ELEMENTS_PER_SEGMENT

    report = adjudicate(config.geometry, config.material, elements)
    print(report.render())

    if args.csv:
        with _open_csv(args.csv) as stream:
            report.write_csv(stream)

    return EXIT_OK


##########
# Optics #
##########
def _ratio(args) -> float:
    if args.from_geometry:
        config = _load_config(args)
        return displacement_ratio(config.geometry, config.convention)
    return args.ratio


def cmd_tuning(args) -> int:
    screw = ScrewSpec.from_degrees(args.pitch_mm, args.angle_deg)
    optics = _load_config(args).optics
    ratio = _ratio(args)

    tuning = tuning_accuracy(screw, ratio)
    baseline = direct_screw_accuracy(screw)

    print(f"screw: pitch {fmt(screw.pitch)} mm, minimal rotation {fmt(screw.min_rotation_deg)} deg")
    print(f"displacement ratio: {fmt(ratio)}")
    print(f"delta_z: {fmt(tuning.delta_z)} um")
    print(f"without lever: {fmt(baseline.delta_z)} um")
    gain = precision_gain(tuning.delta_z)
    print(f"precision gain over {fmt(consts.PRINT_ACCURACY_UM)} um print accuracy: {fmt(gain)}")
    print(f"depth of focus: {fmt(depth_of_focus(optics))} um")
    print(f"focus steps per depth of focus: {fmt(focus_steps_per_depth(optics, tuning))}")

    return EXIT_OK


def cmd_surface(args) -> int:
    angle_range = (math.radians(args.angle_deg[0]), math.radians(args.angle_deg[1]))
    surface = accuracy_surface(tuple(args.pitch_mm), angle_range, _ratio(args), args.samples)

    rows = [(float(np.degrees(angle)), pitch, dz) for angle, pitch, dz in surface.rows()]
    if args.csv:
        with _open_csv(args.csv) as stream:
            write_csv(SURFACE_HEADER, rows, stream)
        print(f"{len(rows)} rows written to {args.csv}")
    else:
        write_csv(SURFACE_HEADER, rows, sys.stdout)

    if args.plot:
        plot_accuracy_surface(surface, args.plot)
        # stdout may carry the CSV
        print(f"plot written to {args.plot}", file=sys.stderr)

    return EXIT_OK


def cmd_usaf(args) -> int:
    lp = usaf_line_pairs_per_mm(args.group, args.element)
    width = usaf_linewidth(args.group, args.element)
    print(f"group {args.group} element {args.element}: {fmt(lp)} lp/mm, line width {width:.2f} um")
    return EXIT_OK


##########
# Search #
##########
def _candidate_row(candidate: DesignCandidate) -> typing.List[float]:
    return list(candidate.geometry.lengths()) + [
        candidate.achieved_ratio,
        candidate.achieved_dz,
        candidate.max_stress_at_stroke,
        candidate.parasitic_fraction,
        candidate.objective_score,
    ]


def cmd_optimize(args) -> int:
    config = RunConfig.load(args.config)
    space = config.design_space()
    constraints = config.design_constraints()

    result = grid_search(space, constraints)

    print(f"evaluated: {result.evaluated}, feasible: {len(result.ranked)}")
    print("infeasible by reason: " + ", ".join(f"{reason.value}={result.census[reason]}" for reason in Reason))

    if result.is_empty:
        print("no feasible design")
        return EXIT_CONSTRAINT

    if args.refine:
        refined, trace = local_refine(result.best, space, constraints)
        logger.debug("Refinement trace: %s", trace)
        row = ", ".join(fmt(value) for value in _candidate_row(refined))
        print(f"refined: {row} after {len(trace) - 1} accepted step(s)")
        result = result.with_candidate(refined)
    ranked = result.ranked

    top_k = config.search.top_k
    print(render_table(CANDIDATE_HEADER, (_candidate_row(c) for c in ranked[:top_k])))

    print(f"frame oracle check ({space.convention.value}):")
    for candidate, fem_ratio in validate_top_k(result, space, top_k, config.search.elements_per_segment):
        deviation = (fem_ratio - candidate.achieved_ratio) / candidate.achieved_ratio
        print(f"  ratio {fmt(candidate.achieved_ratio)} closed form, {fmt(fem_ratio)} frame ({fmt(100 * deviation)}%)")

    if args.csv:
        with _open_csv(args.csv) as stream:
            write_csv(CANDIDATE_HEADER, (_candidate_row(c) for c in ranked), stream)

    return EXIT_OK


#######
# FEM #
#######
def _patch_tests(elements: int) -> typing.List[typing.Tuple[str, float, float]]:
    geom = SeesawGeometry.reference()
    section = geom.hanging_section
    ei = RESIN.youngs_modulus * section.second_moment
    length = geom.l1

    force_tip = solve_frame(build_cantilever_frame(length, section, RESIN, elements, tip_force=-1.0))
    moment_tip = solve_frame(build_cantilever_frame(length, section, RESIN, elements, tip_moment=1.0))

    _, v_force, theta_force = force_tip.displacement("tip")
    _, v_moment, theta_moment = moment_tip.displacement("tip")

    return [
        ("tip force deflection", -v_force, length**3 / (3 * ei)),
        ("tip force rotation", -theta_force, length**2 / (2 * ei)),
        ("tip moment deflection", v_moment, length**2 / (2 * ei)),
        ("tip moment rotation", theta_moment, length / ei),
    ]


def cmd_fem_validate(args) -> int:
    checks = _patch_tests(args.elements)

    rows = []
    passed = True
    for name, computed, exact in checks:
        error = abs(computed - exact) / abs(exact)
        passed = passed and error < PATCH_TOLERANCE
        rows.append((name, computed, exact, error))
    print(render_table(("check", "frame", "exact", "rel_error"), rows))
    print(f"patch tests: {'PASS' if passed else 'FAIL'}")

    config = _load_config(args)
    levels = sorted({1, 2, 4, 8, 16, 32, 64, args.elements})
    keys = ("elements_per_segment", "active", "passive", "active_change", "passive_change")
    convergence = mesh_convergence(config.geometry, config.material, levels)
    print(
        render_table(
            ("elements_per_segment", "active_mm_per_N", "passive_mm_per_N", "active_change", "passive_change"),
            ([row[key] for key in keys] for row in convergence),
        )
    )

    return EXIT_OK if passed else EXIT_CONSTRAINT


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="pyseesaw", description="Compliant seesaw lever design and verification.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    conventions = [c.value for c in DisplacementConvention]
    assignments = [a.value for a in ThicknessAssignment]

    analyze = commands.add_parser("analyze", help="closed-form deflections, stresses and safe loads")
    analyze.add_argument("--config")
    loads = analyze.add_mutually_exclusive_group()
    loads.add_argument("--force", type=float, nargs="+", metavar="N")
    loads.add_argument("--active-mm", type=float, nargs="+", metavar="X")
    analyze.add_argument("--convention", choices=conventions)
    analyze.add_argument("--assignment", choices=assignments)
    analyze.add_argument("--with-fem", action="store_true", help="add the frame-oracle P displacement")
    analyze.add_argument("--elements", type=_positive_int, default=consts.DEFAULT_ELEMENTS_PER_SEGMENT)
    analyze.add_argument(
        "--materials",
        nargs="+",
        choices=sorted(MATERIALS_AVAILABLE),
        help="sweep these instead of the configured material",
    )
    analyze.add_argument("--both-directions", action="store_true", help="add the mirrored push-up loads")
    analyze.add_argument("--csv")
    analyze.add_argument("--plot", metavar="PATH", help="A vs P displacement figure")
    analyze.set_defaults(func=cmd_analyze)

    adjudication = commands.add_parser("adjudicate", help="closed form vs frame oracle vs reported ratios")
    adjudication.add_argument("--config")
    adjudication.add_argument("--elements", type=_positive_int)
    adjudication.add_argument("--csv")
    adjudication.set_defaults(func=cmd_adjudicate)

    for name, func, help_text in (
        ("tuning", cmd_tuning, "focus step of one minimal screw rotation"),
        ("surface", cmd_surface, "focus step over rotation angle and thread pitch"),
    ):
        command = commands.add_parser(name, help=help_text)
        command.add_argument("--config")
        ratio = command.add_mutually_exclusive_group()
        ratio.add_argument("--ratio", type=float, default=consts.REFERENCE_RATIO)
        ratio.add_argument("--from-geometry", action="store_true", help="take the ratio from the configured lever")
        command.set_defaults(func=func)
        if name == "tuning":
            command.add_argument("--angle-deg", type=float, default=consts.REFERENCE_MIN_ROTATION_DEG)
            command.add_argument("--pitch-mm", type=float, default=consts.REFERENCE_SCREW_PITCH_MM)
        else:
            command.add_argument("--angle-deg", type=float, nargs=2, default=consts.DEFAULT_SURFACE_ANGLE_DEG)
            command.add_argument("--pitch-mm", type=float, nargs=2, default=consts.DEFAULT_SURFACE_PITCH_MM)
            command.add_argument("--samples", type=_positive_int, default=consts.DEFAULT_SURFACE_SAMPLES)
            command.add_argument("--csv")
            command.add_argument("--plot", metavar="PATH", help="focus step surface figure")

    usaf = commands.add_parser("usaf", help="USAF-1951 line width")
    usaf.add_argument("--group", type=int, required=True)
    usaf.add_argument("--element", type=int, required=True)
    usaf.set_defaults(func=cmd_usaf)

    optimize = commands.add_parser("optimize", help="grid search over the [search] ranges")
    optimize.add_argument("--config", required=True)
    optimize.add_argument("--refine", action="store_true", help="coordinate descent from the best grid point")
    optimize.add_argument("--csv")
    optimize.set_defaults(func=cmd_optimize)

    validate = commands.add_parser("fem-validate", help="frame solver patch tests and mesh convergence")
    validate.add_argument("--config")
    validate.add_argument("--elements", type=_positive_int, default=consts.DEFAULT_ELEMENTS_PER_SEGMENT)
    validate.set_defaults(func=cmd_fem_validate)

    return parser


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except SingularSystemError as e:
        logger.error("%s", e)
        return EXIT_SINGULAR
    except (ConstraintError, DesignSpaceError, OutOfRegimeError) as e:
        logger.error("%s", e)
        return EXIT_CONSTRAINT
    except (ConfigError, SeesawError, OSError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
