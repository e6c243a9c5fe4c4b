# -*- coding: utf-8 -*-

"""
Closed-form Euler-Bernoulli model of the seesaw-like lever.

The lever is a horizontal hanging beam rigidly joined to a vertical supporting beam. The active (A) arm of length L1
takes the input force, the supporting (M) beam of length L2 carries the moment F*L1 down to the clamped base, and the
passive (P) arm of length L3 rotates rigidly with the joint. Units are mm / N / MPa / rad throughout.
"""

from __future__ import annotations

import math
import typing
from enum import Enum

from . import consts
from .exceptions import (
    ConstraintError,
    InvalidGeometryError,
    InvalidMaterialError,
    LoadCaseError,
    OutOfRegimeError,
    SingularSystemError,
)


class ThicknessAssignment(Enum):
    AsPrinted = consts.AsPrinted
    Swapped = consts.Swapped


class DisplacementConvention(Enum):
    PaperDeflection = consts.PaperDeflection
    KinematicTotal = consts.KinematicTotal


class Material:
    def __init__(self, name: str, youngs_modulus: float, bending_strength: float, density: float):
        for field, value in (
            ("youngs_modulus", youngs_modulus),
            ("bending_strength", bending_strength),
            ("density", density),
        ):
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidMaterialError(f"The field {field} has an invalid value: {value!r}")

        self._name = name
        self._youngs_modulus = float(youngs_modulus)
        self._bending_strength = float(bending_strength)
        self._density = float(density)

    @property
    def name(self) -> str:
        return self._name

    @property
    def youngs_modulus(self) -> float:
        return self._youngs_modulus

    @property
    def bending_strength(self) -> float:
        return self._bending_strength

    @property
    def density(self) -> float:
        return self._density

    def with_bending_strength(self, bending_strength: float) -> Material:
        return Material(self.name, self.youngs_modulus, bending_strength, self.density)

    def with_youngs_modulus(self, youngs_modulus: float) -> Material:
        return Material(self.name, youngs_modulus, self.bending_strength, self.density)

    def __eq__(self, other) -> bool:
        return isinstance(other, Material) and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(tuple(self.as_dict().values()))

    def __repr__(self) -> str:
        return (
            f"Material({self.name!r}, E={self.youngs_modulus:g} MPa, "
            f"strength={self.bending_strength:g} MPa, density={self.density:g} kg/m3)"
        )

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "youngs_modulus": self.youngs_modulus,
            "bending_strength": self.bending_strength,
            "density": self.density,
        }


RESIN = Material(*consts.RESIN)
NYLON = Material(*consts.NYLON)

MATERIALS_AVAILABLE = {
    RESIN.name: RESIN,
    NYLON.name: NYLON,
}


def get_material_by_name(name: str) -> Material:
    name = name.lower()
    if name not in MATERIALS_AVAILABLE:
        raise InvalidMaterialError(f"Material with name: {name!r} doesn't exist, known: {sorted(MATERIALS_AVAILABLE)}")

    return MATERIALS_AVAILABLE[name]


class CrossSection:
    def __init__(self, width: float, thickness: float):
        if not (width > 0 and thickness > 0):
            raise InvalidGeometryError(f"Cross-section dimensions must be positive, got {width!r} x {thickness!r}")

        self._width = float(width)
        self._thickness = float(thickness)

    @property
    def width(self) -> float:
        return self._width

    @property
    def thickness(self) -> float:
        return self._thickness

    @property
    def area(self) -> float:
        return self.width * self.thickness

    @property
    def second_moment(self) -> float:
        return second_moment(self)

    def __repr__(self) -> str:
        return f"CrossSection(width={self.width:g}, thickness={self.thickness:g})"


class SeesawGeometry:
    FIELDS = ("l1", "l2", "l3", "t1", "t2", "b")

    def __init__(
        self,
        l1: float,
        l2: float,
        l3: float,
        t1: float,
        t2: float,
        b: float,
        thickness_assignment: ThicknessAssignment = ThicknessAssignment.AsPrinted,
    ):
        values = (l1, l2, l3, t1, t2, b)
        for field, value in zip(self.FIELDS, values):
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidGeometryError(f"The field {field} has an invalid value: {value!r}")

        if not isinstance(thickness_assignment, ThicknessAssignment):
            raise InvalidGeometryError("The field thickness_assignment has an invalid value")

        self._l1, self._l2, self._l3, self._t1, self._t2, self._b = (float(v) for v in values)
        self._thickness_assignment = thickness_assignment

    @classmethod
    def reference(cls, thickness_assignment: ThicknessAssignment = ThicknessAssignment.AsPrinted) -> SeesawGeometry:
        return cls(*consts.REFERENCE_GEOMETRY, thickness_assignment=thickness_assignment)

    @property
    def l1(self) -> float:
        return self._l1

    @property
    def l2(self) -> float:
        return self._l2

    @property
    def l3(self) -> float:
        return self._l3

    @property
    def t1(self) -> float:
        return self._t1

    @property
    def t2(self) -> float:
        return self._t2

    @property
    def b(self) -> float:
        return self._b

    @property
    def thickness_assignment(self) -> ThicknessAssignment:
        return self._thickness_assignment

    @property
    def hanging_thickness(self) -> float:
        if self.thickness_assignment == ThicknessAssignment.AsPrinted:
            return self.t1
        return self.t2

    @property
    def supporting_thickness(self) -> float:
        if self.thickness_assignment == ThicknessAssignment.AsPrinted:
            return self.t2
        return self.t1

    @property
    def hanging_section(self) -> CrossSection:
        return CrossSection(self.b, self.hanging_thickness)

    @property
    def supporting_section(self) -> CrossSection:
        return CrossSection(self.b, self.supporting_thickness)

    @property
    def passive_arm(self) -> float:
        """P-side lever arm measured from the supporting beam's axis: L3 + T2/2."""
        return self.l3 + self.supporting_thickness / 2

    def replace(self, **changes) -> SeesawGeometry:
        params = self.as_dict()
        params.update(changes)
        return SeesawGeometry(**params)

    def scaled(self, k: float) -> SeesawGeometry:
        return SeesawGeometry(*(k * v for v in self.lengths()), thickness_assignment=self.thickness_assignment)

    def lengths(self) -> typing.Tuple[float, float, float, float, float, float]:
        return (self.l1, self.l2, self.l3, self.t1, self.t2, self.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeesawGeometry) and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.lengths(), self.thickness_assignment))

    def __repr__(self) -> str:
        return (
            f"SeesawGeometry(l1={self.l1:g}, l2={self.l2:g}, l3={self.l3:g}, t1={self.t1:g}, t2={self.t2:g}, "
            f"b={self.b:g}, {self.thickness_assignment.value})"
        )

    def as_dict(self) -> dict:
        return {
            "l1": self.l1,
            "l2": self.l2,
            "l3": self.l3,
            "t1": self.t1,
            "t2": self.t2,
            "b": self.b,
            "thickness_assignment": self.thickness_assignment,
        }


class LoadCase:
    """
    Either a signed force at the A tip (positive pushes down) or a prescribed A-side displacement that is
    interpreted under a DisplacementConvention.
    """

    def __init__(
        self,
        force: typing.Optional[float] = None,
        prescribed_active_displacement: typing.Optional[float] = None,
    ):
        if (force is None) == (prescribed_active_displacement is None):
            raise LoadCaseError("Exactly one of force / prescribed_active_displacement must be set")

        self._force = None if force is None else float(force)
        self._prescribed_active_displacement = (
            None if prescribed_active_displacement is None else float(prescribed_active_displacement)
        )

    @classmethod
    def from_force(cls, force: float) -> LoadCase:
        return cls(force=force)

    @classmethod
    def from_active_displacement(cls, displacement: float) -> LoadCase:
        return cls(prescribed_active_displacement=displacement)

    @property
    def force(self) -> typing.Optional[float]:
        return self._force

    @property
    def prescribed_active_displacement(self) -> typing.Optional[float]:
        return self._prescribed_active_displacement

    @property
    def is_force(self) -> bool:
        return self._force is not None

    def moment(self, geom: SeesawGeometry) -> float:
        """Moment carried by the supporting beam, M = F*L1."""
        if not self.is_force:
            raise LoadCaseError("Moment is only defined for a force load")
        return self.force * geom.l1

    def __repr__(self) -> str:
        if self.is_force:
            return f"LoadCase(force={self.force:g} N)"
        return f"LoadCase(prescribed_active_displacement={self.prescribed_active_displacement:g} mm)"


class DeflectionState:
    FIELDS = (
        "w1",
        "w2",
        "w3",
        "theta1",
        "theta2",
        "theta3",
        "horizontal_p",
        "active_total",
        "sigma_max_hanging",
        "sigma_max_supporting",
    )

    def __init__(
        self,
        force: float,
        w1: float,
        w2: float,
        w3: float,
        theta1: float,
        theta2: float,
        horizontal_p: float,
        active_total: float,
        sigma_max_hanging: float,
        sigma_max_supporting: float,
        convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
        ratio: typing.Optional[float] = None,
    ):
        self._force = force
        self._w1 = w1
        self._w2 = w2
        self._w3 = w3
        self._theta1 = theta1
        self._theta2 = theta2
        self._horizontal_p = horizontal_p
        self._active_total = active_total
        self._sigma_max_hanging = sigma_max_hanging
        self._sigma_max_supporting = sigma_max_supporting
        self._convention = convention
        self._ratio = ratio

    @property
    def force(self) -> float:
        return self._force

    @property
    def w1(self) -> float:
        return self._w1

    @property
    def w2(self) -> float:
        return self._w2

    @property
    def w3(self) -> float:
        return self._w3

    @property
    def theta1(self) -> float:
        return self._theta1

    @property
    def theta2(self) -> float:
        return self._theta2

    @property
    def theta3(self) -> float:
        # the P arm stays perpendicular to the supporting beam at the joint
        return self._theta2

    @property
    def horizontal_p(self) -> float:
        return self._horizontal_p

    @property
    def active_total(self) -> float:
        return self._active_total

    @property
    def sigma_max_hanging(self) -> float:
        return self._sigma_max_hanging

    @property
    def sigma_max_supporting(self) -> float:
        return self._sigma_max_supporting

    @property
    def convention(self) -> DisplacementConvention:
        return self._convention

    @property
    def sigma_max(self) -> float:
        return max(abs(self.sigma_max_hanging), abs(self.sigma_max_supporting))

    @property
    def ratio(self) -> float:
        """A:P ratio; taken from the E-free closed form when the state comes from `solve_load_case`."""
        if self._ratio is not None:
            return self._ratio
        return self.active_total / self.w3

    def values(self) -> typing.Tuple[float, ...]:
        return tuple(getattr(self, field) for field in self.FIELDS)

    def __repr__(self) -> str:
        return f"DeflectionState(F={self.force:g} N, w1={self.w1:.6g}, w3={self.w3:.6g}, theta2={self.theta2:.6g})"

    def as_dict(self) -> dict:
        ret = {"force": self.force, "convention": self.convention.value}
        ret.update({field: getattr(self, field) for field in self.FIELDS})
        return ret


def second_moment(section: CrossSection) -> float:
    """Second moment of area of a rectangle, width*thickness^3/12 (mm^4)."""
    if not (section.width > 0 and section.thickness > 0):
        raise InvalidGeometryError("Cross-section dimensions must be positive")

    return section.width * section.thickness**3 / 12


def active_cantilever(force: float, l1: float, i1: float, e: float) -> typing.Tuple[float, float]:
    """A side as a cantilever with a tip load: w1 = F*L1^3/(3*E*I1), theta1 = F*L1^2/(2*E*I1)."""
    _check_positive(l1=l1, i1=i1, e=e)

    w1 = force * l1**3 / (3 * e * i1)
    theta1 = force * l1**2 / (2 * e * i1)

    return w1, theta1


def support_rotation(moment: float, l2: float, i2: float, e: float) -> typing.Tuple[float, float]:
    """M side as a cantilever with an end moment: w2 = M*L2^2/(2*E*I2), theta2 = M*L2/(E*I2)."""
    _check_positive(l2=l2, i2=i2, e=e)

    w2 = moment * l2**2 / (2 * e * i2)
    theta2 = moment * l2 / (e * i2)

    return w2, theta2


def passive_tip(theta2: float, l3: float, t2: float) -> typing.Tuple[float, float]:
    """P side rotates rigidly with the joint: theta3 = theta2, w3 = (L3 + T2/2)*theta3."""
    _check_small_angle(theta2)

    theta3 = theta2
    w3 = (l3 + t2 / 2) * theta3

    return w3, theta3


def passive_arc_shortening(theta3: float, l3: float, t2: float) -> float:
    """Second-order horizontal pull-in of the P tip, (L3 + T2/2)*(1 - cos(theta3))."""
    _check_small_angle(theta3)

    return (l3 + t2 / 2) * (1 - math.cos(theta3))


def displacement_ratio_closed_form(geom: SeesawGeometry) -> float:
    t_hanging = geom.hanging_thickness
    t_supporting = geom.supporting_thickness

    return t_supporting**3 * geom.l1**2 / (3 * t_hanging**3 * geom.l2 * (geom.l3 + t_supporting / 2))


def displacement_ratio(
    geom: SeesawGeometry, convention: DisplacementConvention = DisplacementConvention.PaperDeflection
) -> float:
    if convention == DisplacementConvention.PaperDeflection:
        return displacement_ratio_closed_form(geom)

    # (w1 + L1*theta2) / w3; E and F cancel
    return displacement_ratio_closed_form(geom) + geom.l1 / geom.passive_arm


def transmission_fraction(ratio: float) -> float:
    """Share of the A-side motion that reaches the P side, in percent."""
    return 100.0 / ratio


def active_compliance(
    geom: SeesawGeometry,
    mat: Material,
    convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
) -> float:
    """A-side displacement per newton (mm/N) under the given convention."""
    e = mat.youngs_modulus
    w1, _ = active_cantilever(1.0, geom.l1, geom.hanging_section.second_moment, e)
    if convention == DisplacementConvention.PaperDeflection:
        return w1

    _, theta2 = support_rotation(geom.l1, geom.l2, geom.supporting_section.second_moment, e)
    return w1 + geom.l1 * theta2


def max_bending_stress(geom: SeesawGeometry, load: LoadCase) -> typing.Tuple[float, float]:
    """
    Root bending stress |M|*c/I of the hanging and supporting beams (MPa).

    Both roots carry M = F*L1: the hanging beam at the joint, the supporting beam along its whole length.
    """
    moment = abs(load.moment(geom))

    hanging = geom.hanging_section
    supporting = geom.supporting_section

    sigma_hanging = moment * (hanging.thickness / 2) / hanging.second_moment
    sigma_supporting = moment * (supporting.thickness / 2) / supporting.second_moment

    return sigma_hanging, sigma_supporting


def solve_load_case(
    geom: SeesawGeometry,
    mat: Material,
    load: LoadCase,
    convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
) -> DeflectionState:
    if load.is_force:
        force = load.force
    else:
        compliance = active_compliance(geom, mat, convention)
        if not (math.isfinite(compliance) and compliance > 0):
            raise SingularSystemError(f"Cannot invert a degenerate force-displacement map ({compliance!r} mm/N)")
        force = load.prescribed_active_displacement / compliance

    e = mat.youngs_modulus
    i_hanging = geom.hanging_section.second_moment
    i_supporting = geom.supporting_section.second_moment

    moment = force * geom.l1
    w1, theta1 = active_cantilever(force, geom.l1, i_hanging, e)
    w2, theta2 = support_rotation(moment, geom.l2, i_supporting, e)
    w3, _ = passive_tip(theta2, geom.l3, geom.supporting_thickness)

    if convention == DisplacementConvention.PaperDeflection:
        active_total = w1
    else:
        active_total = w1 + geom.l1 * theta2

    # signed root stresses, sign follows the applied moment
    sigma_hanging = moment * (geom.hanging_thickness / 2) / i_hanging
    sigma_supporting = moment * (geom.supporting_thickness / 2) / i_supporting

    return DeflectionState(
        force=force,
        w1=w1,
        w2=w2,
        w3=w3,
        theta1=theta1,
        theta2=theta2,
        horizontal_p=w2,
        active_total=active_total,
        sigma_max_hanging=sigma_hanging,
        sigma_max_supporting=sigma_supporting,
        convention=convention,
        ratio=displacement_ratio(geom, convention),
    )


def max_safe_force(geom: SeesawGeometry, mat: Material, safety_factor: float = 1.0) -> float:
    if safety_factor < 1:
        raise ConstraintError(f"safety_factor must be >= 1, got {safety_factor!r}")

    sigma_per_newton = max(max_bending_stress(geom, LoadCase.from_force(1.0)))
    if not (math.isfinite(sigma_per_newton) and sigma_per_newton > 0):
        raise InvalidGeometryError("Degenerate geometry carries no bending stress")

    return mat.bending_strength / (safety_factor * sigma_per_newton)


def max_safe_active_displacement(
    geom: SeesawGeometry,
    mat: Material,
    safety_factor: float = 1.0,
    convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
) -> float:
    """Largest A-side displacement that keeps max(sigma)*safety_factor within the bending strength (mm)."""
    if math.isinf(safety_factor):
        return 0.0

    return max_safe_force(geom, mat, safety_factor) * active_compliance(geom, mat, convention)


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise InvalidGeometryError(f"The field {name} must be positive, got {value!r}")


def _check_small_angle(theta: float) -> None:
    if not abs(theta) < consts.SMALL_ANGLE_LIMIT:
        raise OutOfRegimeError(
            f"Rotation {theta!r} rad is outside the small-angle regime (|theta| < {consts.SMALL_ANGLE_LIMIT} rad)"
        )
