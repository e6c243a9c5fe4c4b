# -*- coding: utf-8 -*-

"""
INI-style run configuration.

    [geometry]
    l1 = 25
    l2 = 6
    l3 = 25
    t1 = 3
    t2 = 1.5
    b = 8
    thickness_assignment = as-printed

    [material]
    name = resin

    [analysis]
    convention = paper-deflection

Units are mm / N / MPa, angles in degrees. Whole-line comments start with `#` or `;`. Unknown sections and keys are
rejected; [geometry] and [material] are required, the other sections fall back to defaults.
"""

from __future__ import annotations

import configparser
import logging
import math
import typing

from . import consts
from .exceptions import ConfigParseError, ConfigValidationError, SeesawError
from .mechanics import (
    MATERIALS_AVAILABLE,
    DisplacementConvention,
    Material,
    SeesawGeometry,
    ThicknessAssignment,
)
from .optics import OpticsSpec, ScrewSpec
from .search import DesignConstraints, DesignSpace, ParameterRange

logger = logging.getLogger(__name__)

MATERIAL_PROPERTIES = ("youngs_modulus", "bending_strength", "density")

SECTION_KEYS = {
    "geometry": SeesawGeometry.FIELDS + ("thickness_assignment",),
    "material": ("name",) + MATERIAL_PROPERTIES,
    "screw": ("pitch", "min_rotation", "diameter"),
    "optics": ("wavelength", "numerical_aperture", "magnification"),
    "analysis": ("convention",),
    "search": SeesawGeometry.FIELDS + ("convention", "cap", "top_k", "elements_per_segment"),
    "constraints": (
        "min_feature",
        "required_stroke",
        "safety_factor",
        "max_parasitic_fraction",
        "min_ratio",
        "target_dz",
        "target_ratio",
    ),
}


class SearchSettings:
    def __init__(
        self,
        ranges: typing.Dict[str, ParameterRange],
        cap: int = consts.DEFAULT_CANDIDATE_CAP,
        top_k: int = consts.DEFAULT_TOP_K,
        elements_per_segment: int = consts.DEFAULT_ELEMENTS_PER_SEGMENT,
    ):
        self.ranges = ranges
        self.cap = cap
        self.top_k = top_k
        self.elements_per_segment = elements_per_segment

    def as_dict(self) -> dict:
        return {
            "ranges": {name: (r.low, r.high, r.steps) for name, r in self.ranges.items()},
            "cap": self.cap,
            "top_k": self.top_k,
            "elements_per_segment": self.elements_per_segment,
        }


class RunConfig:
    def __init__(
        self,
        geometry: SeesawGeometry,
        material: Material,
        screw: typing.Optional[ScrewSpec] = None,
        optics: typing.Optional[OpticsSpec] = None,
        convention: DisplacementConvention = DisplacementConvention.PaperDeflection,
        search: typing.Optional[SearchSettings] = None,
        constraints: typing.Optional[DesignConstraints] = None,
    ):
        self._geometry = geometry
        self._material = material
        self._screw = screw or ScrewSpec.from_degrees(
            consts.REFERENCE_SCREW_PITCH_MM, consts.REFERENCE_MIN_ROTATION_DEG
        )
        self._optics = optics or OpticsSpec()
        self._convention = convention
        self._search = search
        self._constraints = constraints

    @property
    def geometry(self) -> SeesawGeometry:
        return self._geometry

    @property
    def material(self) -> Material:
        return self._material

    @property
    def screw(self) -> ScrewSpec:
        return self._screw

    @property
    def optics(self) -> OpticsSpec:
        return self._optics

    @property
    def convention(self) -> DisplacementConvention:
        return self._convention

    @property
    def search(self) -> typing.Optional[SearchSettings]:
        return self._search

    @property
    def constraints(self) -> typing.Optional[DesignConstraints]:
        return self._constraints

    def design_space(self) -> DesignSpace:
        if self._search is None:
            raise ConfigValidationError("search", "missing [search]")

        ranges = {
            name: self._search.ranges.get(name, ParameterRange.fixed(getattr(self._geometry, name)))
            for name in SeesawGeometry.FIELDS
        }
        try:
            return DesignSpace(
                ranges,
                self._material,
                self._screw,
                thickness_assignment=self._geometry.thickness_assignment,
                convention=self._convention,
                cap=self._search.cap,
            )
        except SeesawError as e:
            raise ConfigValidationError("search", str(e)) from e

    def design_constraints(self) -> DesignConstraints:
        if self._constraints is None:
            raise ConfigValidationError("constraints", "missing [constraints]")
        return self._constraints

    @classmethod
    def parse(cls, text: str) -> RunConfig:
        parser = _read(text)

        for section in parser.sections():
            if section not in SECTION_KEYS:
                raise ConfigValidationError(section, f"unknown section [{section}]")
            for key in parser[section]:
                if key not in SECTION_KEYS[section]:
                    raise ConfigValidationError(f"{section}.{key}", "unknown key")

        for required in ("geometry", "material"):
            if not parser.has_section(required):
                raise ConfigValidationError(required, f"missing [{required}]")

        geometry = _parse_geometry(parser["geometry"])
        material = _parse_material(parser["material"])
        screw = _parse_screw(parser["screw"]) if parser.has_section("screw") else None
        optics = _parse_optics(parser["optics"]) if parser.has_section("optics") else None

        convention = _parse_convention(parser)
        search = None
        if parser.has_section("search"):
            section = parser["search"]
            search = SearchSettings(
                ranges={name: _range(section, name) for name in SeesawGeometry.FIELDS if name in section},
                cap=_integer(section, "cap", consts.DEFAULT_CANDIDATE_CAP),
                top_k=_integer(section, "top_k", consts.DEFAULT_TOP_K),
                elements_per_segment=_integer(section, "elements_per_segment", consts.DEFAULT_ELEMENTS_PER_SEGMENT),
            )

        constraints = _parse_constraints(parser["constraints"]) if parser.has_section("constraints") else None

        return cls(geometry, material, screw, optics, convention, search, constraints)

    @classmethod
    def load(cls, path: str) -> RunConfig:
        with open(path, encoding="utf-8") as stream:
            return cls.parse(stream.read())

    def generate(self) -> str:
        lines = ["[geometry]"]
        lines += [f"{name} = {getattr(self._geometry, name)!r}" for name in SeesawGeometry.FIELDS]
        lines.append(f"thickness_assignment = {self._geometry.thickness_assignment.value}")

        lines += ["", "[material]", f"name = {self._material.name}"]
        lines += [f"{name} = {getattr(self._material, name)!r}" for name in MATERIAL_PROPERTIES]

        lines += [
            "",
            "[screw]",
            f"pitch = {self._screw.pitch!r}",
            f"min_rotation = {self._screw.min_rotation_deg!r}",
            f"diameter = {self._screw.diameter!r}",
        ]

        lines += ["", "[optics]"]
        lines += [f"{name} = {value!r}" for name, value in self._optics.as_dict().items()]

        lines += ["", "[analysis]", f"convention = {self._convention.value}"]

        if self._search is not None:
            lines += ["", "[search]"]
            lines += [f"{name} = {r.low!r}, {r.high!r}, {r.steps}" for name, r in self._search.ranges.items()]
            lines += [
                f"cap = {self._search.cap}",
                f"top_k = {self._search.top_k}",
                f"elements_per_segment = {self._search.elements_per_segment}",
            ]

        if self._constraints is not None:
            lines += ["", "[constraints]"]
            for name in SECTION_KEYS["constraints"]:
                value = getattr(self._constraints, name)
                if value is not None:
                    lines.append(f"{name} = {value!r}")

        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return isinstance(other, RunConfig) and self.as_dict() == other.as_dict()

    def __repr__(self):
        return f"RunConfig({self._geometry!r}, {self._material!r})"

    def as_dict(self) -> dict:
        return {
            "geometry": self._geometry.as_dict(),
            "material": self._material.as_dict(),
            "screw": self._screw.as_dict(),
            "optics": self._optics.as_dict(),
            "convention": self._convention.value,
            "search": self._search.as_dict() if self._search is not None else None,
            "constraints": dict(vars(self._constraints)) if self._constraints is not None else None,
        }


def parse_config(text: str) -> RunConfig:
    return RunConfig.parse(text)


def _read(text: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=None,
        interpolation=None,
        strict=True,
        empty_lines_in_values=False,
        default_section="__defaults__",
    )
    parser.optionxform = str

    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as e:
        raise ConfigParseError(f"expected a [section] header, got {e.line.strip()!r}", e.lineno) from e
    except configparser.ParsingError as e:
        lineno, line = e.errors[0]
        raise ConfigParseError(f"expected 'key = value', got {line}", lineno) from e
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ConfigParseError(e.message, e.lineno or 0) from e

    return parser


def _number(section: configparser.SectionProxy, key: str, default: typing.Optional[float] = None) -> float:
    if key not in section:
        if default is None:
            raise ConfigValidationError(f"{section.name}.{key}", "missing value")
        return default

    raw = section[key]
    try:
        value = float(raw)
    except ValueError:
        raise ConfigValidationError(f"{section.name}.{key}", f"not a number: {raw!r}") from None

    if not (math.isfinite(value) and value > 0):
        raise ConfigValidationError(f"{section.name}.{key}", f"must be positive, got {raw!r}")

    return value


def _integer(section: configparser.SectionProxy, key: str, default: int) -> int:
    if key not in section:
        return default

    raw = section[key]
    try:
        value = int(raw)
    except ValueError:
        raise ConfigValidationError(f"{section.name}.{key}", f"not an integer: {raw!r}") from None

    if value < 1:
        raise ConfigValidationError(f"{section.name}.{key}", f"must be >= 1, got {raw!r}")

    return value


E = typing.TypeVar("E")


def _enum(section: configparser.SectionProxy, key: str, enum_cls: typing.Type[E]) -> E:
    raw = section[key].strip()
    try:
        return enum_cls(raw)
    except ValueError:
        choices = ", ".join(member.value for member in enum_cls)
        raise ConfigValidationError(f"{section.name}.{key}", f"expected one of {choices}, got {raw!r}") from None


def _range(section: configparser.SectionProxy, key: str) -> ParameterRange:
    parts = [part.strip() for part in section[key].split(",")]
    if len(parts) != 3:
        raise ConfigValidationError(f"{section.name}.{key}", "expected 'low, high, steps'")

    try:
        low, high, steps = float(parts[0]), float(parts[1]), int(parts[2])
        return ParameterRange(low, high, steps)
    except (ValueError, SeesawError) as e:
        raise ConfigValidationError(f"{section.name}.{key}", str(e)) from None


def _parse_convention(parser: configparser.ConfigParser) -> DisplacementConvention:
    # [analysis] is the canonical place; [search] still accepts the key
    found = {}
    for name in ("analysis", "search"):
        if parser.has_section(name) and "convention" in parser[name]:
            found[name] = _enum(parser[name], "convention", DisplacementConvention)

    if len(set(found.values())) > 1:
        raise ConfigValidationError("search.convention", "disagrees with analysis.convention")

    return next(iter(found.values()), DisplacementConvention.PaperDeflection)


def _parse_geometry(section: configparser.SectionProxy) -> SeesawGeometry:
    values = [_number(section, name) for name in SeesawGeometry.FIELDS]
    assignment = ThicknessAssignment.AsPrinted
    if "thickness_assignment" in section:
        assignment = _enum(section, "thickness_assignment", ThicknessAssignment)

    return SeesawGeometry(*values, thickness_assignment=assignment)


def _parse_material(section: configparser.SectionProxy) -> Material:
    name = section.get("name", "").strip().lower()
    explicit = {key: _number(section, key) for key in MATERIAL_PROPERTIES if key in section}

    if name in MATERIALS_AVAILABLE:
        named = MATERIALS_AVAILABLE[name]
        properties = {key: getattr(named, key) for key in MATERIAL_PROPERTIES}
        for key, value in explicit.items():
            if value != properties[key]:
                logger.warning("material.%s = %g overrides the %s table value %g", key, value, name, properties[key])
        properties.update(explicit)
        return Material(name, **properties)

    missing = [key for key in MATERIAL_PROPERTIES if key not in explicit]
    if missing:
        label = f"unknown material {name!r}" if name else "no material name"
        raise ConfigValidationError(f"material.{missing[0]}", f"{label} and no explicit value")

    return Material(name or "custom", **explicit)


def _parse_screw(section: configparser.SectionProxy) -> ScrewSpec:
    min_rotation = _number(section, "min_rotation", consts.REFERENCE_MIN_ROTATION_DEG)
    if min_rotation > 360:
        raise ConfigValidationError("screw.min_rotation", f"must be <= 360 deg, got {min_rotation!r}")

    return ScrewSpec.from_degrees(
        pitch=_number(section, "pitch", consts.REFERENCE_SCREW_PITCH_MM),
        min_rotation_deg=min_rotation,
        diameter=_number(section, "diameter", consts.REFERENCE_SCREW_DIAMETER_MM),
    )


def _parse_optics(section: configparser.SectionProxy) -> OpticsSpec:
    try:
        return OpticsSpec(
            wavelength=_number(section, "wavelength", consts.DEFAULT_WAVELENGTH_UM),
            numerical_aperture=_number(section, "numerical_aperture", consts.DEFAULT_NUMERICAL_APERTURE),
            magnification=_number(section, "magnification", consts.DEFAULT_MAGNIFICATION),
        )
    except SeesawError as e:
        raise ConfigValidationError("optics", str(e)) from None


def _parse_constraints(section: configparser.SectionProxy) -> DesignConstraints:
    targets = {key: _number(section, key) for key in ("target_dz", "target_ratio") if key in section}
    if len(targets) != 1:
        raise ConfigValidationError("constraints.target_dz", "exactly one of target_dz / target_ratio must be set")

    safety_factor = _number(section, "safety_factor", consts.DEFAULT_SAFETY_FACTOR)
    if safety_factor < 1:
        raise ConfigValidationError("constraints.safety_factor", f"must be >= 1, got {safety_factor!r}")

    return DesignConstraints(
        min_feature=_number(section, "min_feature", consts.DEFAULT_MIN_FEATURE_MM),
        required_stroke=_number(section, "required_stroke", consts.DEFAULT_REQUIRED_STROKE_MM),
        safety_factor=safety_factor,
        max_parasitic_fraction=_number(section, "max_parasitic_fraction", consts.DEFAULT_MAX_PARASITIC_FRACTION),
        min_ratio=_number(section, "min_ratio", consts.DEFAULT_MIN_RATIO),
        **targets,
    )
