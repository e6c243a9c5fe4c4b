# -*- coding: utf-8 -*-

from __future__ import annotations

import math
import typing

import numpy as np

from . import consts
from .exceptions import InvalidElementError, InvalidRatioError, OpticsError


class OpticsSpec:
    """
    Imaging optics of the microscope. Depth of focus follows d = wavelength / NA^2; the optical resolution is
    measured on a target instead of being derived from NA. Magnification is informational.
    """

    def __init__(
        self,
        wavelength: float = consts.DEFAULT_WAVELENGTH_UM,
        numerical_aperture: float = consts.DEFAULT_NUMERICAL_APERTURE,
        magnification: float = consts.DEFAULT_MAGNIFICATION,
    ):
        if not 0.3 < wavelength < 1.1:
            raise OpticsError(f"The field wavelength has an invalid value: {wavelength!r} um")
        if not 0 < numerical_aperture < 1:
            raise OpticsError(f"The field numerical_aperture has an invalid value: {numerical_aperture!r}")
        if not magnification > 0:
            raise OpticsError(f"The field magnification has an invalid value: {magnification!r}")

        self._wavelength = float(wavelength)
        self._numerical_aperture = float(numerical_aperture)
        self._magnification = float(magnification)

    @property
    def wavelength(self) -> float:
        return self._wavelength

    @property
    def numerical_aperture(self) -> float:
        return self._numerical_aperture

    @property
    def magnification(self) -> float:
        return self._magnification

    def __eq__(self, other) -> bool:
        return isinstance(other, OpticsSpec) and self.as_dict() == other.as_dict()

    def __repr__(self):
        return f"OpticsSpec(wavelength={self.wavelength:g} um, NA={self.numerical_aperture:g})"

    def as_dict(self) -> dict:
        return {
            "wavelength": self.wavelength,
            "numerical_aperture": self.numerical_aperture,
            "magnification": self.magnification,
        }


class ScrewSpec:
    def __init__(
        self,
        pitch: float = consts.REFERENCE_SCREW_PITCH_MM,
        min_rotation: float = math.radians(consts.REFERENCE_MIN_ROTATION_DEG),
        diameter: float = consts.REFERENCE_SCREW_DIAMETER_MM,
    ):
        if not pitch > 0:
            raise OpticsError(f"The field pitch has an invalid value: {pitch!r} mm")
        if not 0 < min_rotation <= consts.TWO_PI:
            raise OpticsError(f"The field min_rotation has an invalid value: {min_rotation!r} rad")
        if not diameter > 0:
            raise OpticsError(f"The field diameter has an invalid value: {diameter!r} mm")

        self._pitch = float(pitch)
        self._min_rotation = float(min_rotation)
        self._min_rotation_deg = math.degrees(self._min_rotation)
        self._diameter = float(diameter)

    @classmethod
    def from_degrees(
        cls, pitch: float, min_rotation_deg: float, diameter: float = consts.REFERENCE_SCREW_DIAMETER_MM
    ) -> ScrewSpec:
        screw = cls(pitch, math.radians(min_rotation_deg), diameter)
        # keep the degrees as given so text round-trips are exact
        screw._min_rotation_deg = float(min_rotation_deg)
        return screw

    @property
    def pitch(self) -> float:
        return self._pitch

    @property
    def min_rotation(self) -> float:
        return self._min_rotation

    @property
    def min_rotation_deg(self) -> float:
        return self._min_rotation_deg

    @property
    def diameter(self) -> float:
        return self._diameter

    def __eq__(self, other) -> bool:
        return isinstance(other, ScrewSpec) and self.as_dict() == other.as_dict()

    def __repr__(self):
        return f"ScrewSpec(pitch={self.pitch:g} mm, min_rotation={self.min_rotation_deg:g} deg)"

    def as_dict(self) -> dict:
        return {"pitch": self.pitch, "min_rotation": self.min_rotation, "diameter": self.diameter}


class TuningResult:
    def __init__(self, delta_z: float, ratio_used: float):
        self._delta_z = delta_z
        self._ratio_used = ratio_used

    @property
    def delta_z(self) -> float:
        """Axial focus step in um."""
        return self._delta_z

    @property
    def ratio_used(self) -> float:
        return self._ratio_used

    def __repr__(self):
        return f"TuningResult(delta_z={self.delta_z:.6g} um, ratio={self.ratio_used:.6g})"

    def as_dict(self) -> dict:
        return {"delta_z": self.delta_z, "ratio_used": self.ratio_used}


class AccuracySurface:
    def __init__(self, angles: np.ndarray, pitches: np.ndarray, delta_z: np.ndarray, ratio: float):
        self.angles = angles  # rad, axis 0
        self.pitches = pitches  # mm, axis 1
        self.delta_z = delta_z  # um, shape (len(angles), len(pitches))
        self.ratio = ratio

    def rows(self) -> typing.Iterator[typing.Tuple[float, float, float]]:
        for i, angle in enumerate(self.angles):
            for j, pitch in enumerate(self.pitches):
                yield float(angle), float(pitch), float(self.delta_z[i, j])

    def __repr__(self):
        return f"AccuracySurface({len(self.angles)}x{len(self.pitches)}, ratio={self.ratio:g})"


def depth_of_focus(optics: OpticsSpec) -> float:
    """d = wavelength / NA^2, in um."""
    return optics.wavelength / optics.numerical_aperture**2


def _delta_z_um(min_rotation: float, pitch: float, ratio: float) -> float:
    # pitch in mm, result in um
    return min_rotation * pitch * 1000.0 / (consts.TWO_PI * ratio)


def tuning_accuracy(screw: ScrewSpec, ratio: float) -> TuningResult:
    """Smallest axial focus step for one minimal screw rotation: a*pitch / (2*pi*r)."""
    if not ratio > 0:
        raise InvalidRatioError(f"Displacement ratio must be positive, got {ratio!r}")

    return TuningResult(_delta_z_um(screw.min_rotation, screw.pitch, ratio), ratio)


def direct_screw_accuracy(screw: ScrewSpec) -> TuningResult:
    return tuning_accuracy(screw, 1.0)


def required_ratio(target_dz: float, screw: ScrewSpec) -> float:
    if not target_dz > 0:
        raise InvalidRatioError(f"Target focus step must be positive, got {target_dz!r} um")

    return screw.min_rotation * screw.pitch * 1000.0 / (consts.TWO_PI * target_dz)


def precision_gain(delta_z: float, processing_accuracy: float = consts.PRINT_ACCURACY_UM) -> float:
    """How many times finer the focus step is than the printer's processing accuracy."""
    return processing_accuracy / delta_z


def focus_steps_per_depth(optics: OpticsSpec, tuning: TuningResult) -> float:
    return depth_of_focus(optics) / tuning.delta_z


def accuracy_surface(
    pitch_range: typing.Tuple[float, float],
    angle_range: typing.Tuple[float, float],
    ratio: float,
    samples: typing.Union[int, typing.Tuple[int, int]] = consts.DEFAULT_SURFACE_SAMPLES,
) -> AccuracySurface:
    """Grid of focus steps over minimal rotation angle (rad) and thread pitch (mm)."""
    angle_samples, pitch_samples = (samples, samples) if isinstance(samples, int) else samples
    if angle_samples < 2 or pitch_samples < 2:
        raise OpticsError("A surface needs at least 2 samples per axis")

    for name, (low, high) in (("pitch_range", pitch_range), ("angle_range", angle_range)):
        if not 0 < low <= high:
            raise OpticsError(f"The field {name} has an invalid value: {(low, high)!r}")

    if not ratio > 0:
        raise InvalidRatioError(f"Displacement ratio must be positive, got {ratio!r}")

    angles = np.linspace(angle_range[0], angle_range[1], angle_samples)
    pitches = np.linspace(pitch_range[0], pitch_range[1], pitch_samples)
    delta_z = np.array([[_delta_z_um(a, p, ratio) for p in pitches] for a in angles])

    return AccuracySurface(angles, pitches, delta_z, ratio)


def usaf_line_pairs_per_mm(group: int, element: int) -> float:
    if not (isinstance(element, int) and 1 <= element <= consts.USAF_ELEMENTS):
        raise InvalidElementError(f"USAF-1951 element must be in 1..{consts.USAF_ELEMENTS}, got {element!r}")
    if not (isinstance(group, int) and consts.USAF_MIN_GROUP <= group <= consts.USAF_MAX_GROUP):
        raise InvalidElementError(
            f"USAF-1951 group must be in {consts.USAF_MIN_GROUP}..{consts.USAF_MAX_GROUP}, got {group!r}"
        )

    return 2.0 ** (group + (element - 1) / consts.USAF_ELEMENTS)


def usaf_linewidth(group: int, element: int) -> float:
    """Width of one line (half a line pair) in um."""
    return 500.0 / usaf_line_pairs_per_mm(group, element)
