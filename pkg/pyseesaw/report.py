# -*- coding: utf-8 -*-

from __future__ import annotations

import csv
import typing

from . import consts
from .fem import oracle_state
from .mechanics import (
    DisplacementConvention,
    LoadCase,
    Material,
    SeesawGeometry,
    ThicknessAssignment,
    displacement_ratio,
    solve_load_case,
)

REFERENCE_RATIOS = (
    ("theory", consts.REFERENCE_THEORY_RATIO),
    ("simulation", consts.REFERENCE_SIMULATION_RATIO),
    ("experiment", consts.REFERENCE_EXPERIMENT_RATIO),
)


def fmt(value: typing.Any) -> str:
    if isinstance(value, float):
        return consts.FLOAT_FORMAT.format(value)
    return str(value)


def write_csv(header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence[typing.Any]], stream) -> None:
    """CSV with LF line endings and floats at 6 significant digits; every header label carries its unit."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(value) for value in row])


def render_table(header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence[typing.Any]]) -> str:
    cells = [list(header)] + [[fmt(value) for value in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


def relative_deviation(value: float, reference: float) -> float:
    return (value - reference) / reference


class AdjudicationRow:
    def __init__(
        self,
        assignment: ThicknessAssignment,
        convention: DisplacementConvention,
        closed_form_ratio: float,
        fem_ratio: float,
    ):
        self.assignment = assignment
        self.convention = convention
        self.closed_form_ratio = closed_form_ratio
        self.fem_ratio = fem_ratio

    def deviations(self, ratio: float) -> typing.Dict[str, float]:
        return {name: relative_deviation(ratio, reference) for name, reference in REFERENCE_RATIOS}

    @property
    def fem_simulation_deviation(self) -> float:
        return relative_deviation(self.fem_ratio, consts.REFERENCE_SIMULATION_RATIO)

    @property
    def discrepant(self) -> bool:
        return abs(self.fem_simulation_deviation) > consts.ADJUDICATION_TOLERANCE

    def values(self) -> typing.List[typing.Any]:
        ret = [self.assignment.value, self.convention.value, self.closed_form_ratio, self.fem_ratio]
        ret += list(self.deviations(self.closed_form_ratio).values())
        ret += list(self.deviations(self.fem_ratio).values())
        ret.append("DISCREPANT" if self.discrepant else "ok")
        return ret


class AdjudicationReport:
    # dimensionless columns carry a `_1` unit suffix; assignment, convention and the flags are labels
    HEADER = (
        "assignment",
        "convention",
        "closed_form_ratio_1",
        "fem_ratio_1",
        "closed_form_dev_theory_1",
        "closed_form_dev_simulation_1",
        "closed_form_dev_experiment_1",
        "fem_dev_theory_1",
        "fem_dev_simulation_1",
        "fem_dev_experiment_1",
        "flag",
    )
    CSV_HEADER = HEADER + (
        "reported_theory_ratio_1",
        "reported_simulation_ratio_1",
        "reported_experiment_ratio_1",
        "reported_experiment_std_1",
        "selected",
        "gate",
    )

    def __init__(self, rows: typing.List[AdjudicationRow], parasitic_closed_form: float, parasitic_fem: float):
        self.rows = rows
        self.parasitic_closed_form = parasitic_closed_form
        self.parasitic_fem = parasitic_fem

    @property
    def best(self) -> AdjudicationRow:
        return min(self.rows, key=lambda row: abs(row.fem_simulation_deviation))

    @property
    def gate_passed(self) -> bool:
        return not self.best.discrepant

    def verdict(self) -> str:
        best = self.best
        state = "within" if self.gate_passed else "outside"
        return (
            f"verdict: {best.assignment.value} + {best.convention.value} agrees best; frame oracle ratio "
            f"{fmt(best.fem_ratio)} is {fmt(100 * best.fem_simulation_deviation)}% from the simulated "
            f"{consts.REFERENCE_SIMULATION_RATIO} ({state} {fmt(100 * consts.ADJUDICATION_TOLERANCE)}%)"
        )

    def csv_rows(self) -> typing.List[typing.List[typing.Any]]:
        reported = [
            consts.REFERENCE_THEORY_RATIO,
            consts.REFERENCE_SIMULATION_RATIO,
            consts.REFERENCE_EXPERIMENT_RATIO,
            consts.REFERENCE_EXPERIMENT_RATIO_STD,
        ]
        gate = "pass" if self.gate_passed else "fail"
        best = self.best
        return [row.values() + reported + ["yes" if row is best else "no", gate] for row in self.rows]

    def write_csv(self, stream) -> None:
        write_csv(self.CSV_HEADER, self.csv_rows(), stream)

    def render(self) -> str:
        lines = [
            "A:P displacement ratio, closed form vs frame oracle vs reported values",
            f"reported: theory {consts.REFERENCE_THEORY_RATIO}, simulation {consts.REFERENCE_SIMULATION_RATIO}, "
            f"experiment {consts.REFERENCE_EXPERIMENT_RATIO}+/-{consts.REFERENCE_EXPERIMENT_RATIO_STD}",
            "",
            render_table(self.HEADER, (row.values() for row in self.rows)),
            "",
            f"parasitic vertical:horizontal at the P tip: closed form {fmt(self.parasitic_closed_form)}, "
            f"frame oracle {fmt(self.parasitic_fem)}, reported ~{consts.REFERENCE_PARASITIC_RATIO}",
            self.verdict(),
        ]
        return "\n".join(lines)


def adjudicate(
    geom: SeesawGeometry,
    mat: Material,
    elements_per_segment: int = consts.DEFAULT_ELEMENTS_PER_SEGMENT,
) -> AdjudicationReport:
    """Evaluate every thickness assignment x displacement convention combination with both models."""
    rows = []
    for assignment in ThicknessAssignment:
        variant = geom.replace(thickness_assignment=assignment)
        state = oracle_state(variant, mat, 1.0, elements_per_segment)
        for convention in DisplacementConvention:
            closed_form = displacement_ratio(variant, convention)
            rows.append(AdjudicationRow(assignment, convention, closed_form, state.ratio(convention)))

    reference = geom.replace(thickness_assignment=ThicknessAssignment.AsPrinted)
    unit = solve_load_case(reference, mat, LoadCase.from_force(1.0))
    parasitic_closed_form = unit.w3 / unit.horizontal_p
    parasitic_fem = oracle_state(reference, mat, 1.0, elements_per_segment).parasitic_ratio()

    return AdjudicationReport(rows, parasitic_closed_form, parasitic_fem)
