import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pyseesaw.exceptions import InvalidElementError, InvalidRatioError, OpticsError
from pyseesaw.optics import (
    OpticsSpec,
    ScrewSpec,
    accuracy_surface,
    depth_of_focus,
    direct_screw_accuracy,
    focus_steps_per_depth,
    precision_gain,
    required_ratio,
    tuning_accuracy,
    usaf_line_pairs_per_mm,
    usaf_linewidth,
)

REFERENCE_SCREW = ScrewSpec.from_degrees(2.0, 5.0, 6.0)


def test_depth_of_focus():
    assert_allclose(depth_of_focus(OpticsSpec()), 38.1944, rtol=1e-5)
    assert_allclose(depth_of_focus(OpticsSpec(numerical_aperture=0.25)), 8.8, rtol=1e-12)


@pytest.mark.parametrize(
    "kwargs", [{"wavelength": 0.2}, {"wavelength": 2.0}, {"numerical_aperture": 0}, {"numerical_aperture": 1.2}]
)
def test_optics_validation(kwargs):
    with pytest.raises(OpticsError):
        OpticsSpec(**kwargs)


def test_tuning_accuracy():
    result = tuning_accuracy(REFERENCE_SCREW, 11)
    assert_allclose(result.delta_z, 2.525, rtol=1e-3)
    assert result.ratio_used == 11


def test_direct_screw_is_ratio_times_coarser():
    assert_allclose(direct_screw_accuracy(REFERENCE_SCREW).delta_z, 11 * tuning_accuracy(REFERENCE_SCREW, 11).delta_z)
    assert_allclose(direct_screw_accuracy(REFERENCE_SCREW).delta_z, 27.7778, rtol=1e-5)


def test_precision_gain_and_focus_steps():
    tuning = tuning_accuracy(REFERENCE_SCREW, 11)
    assert_allclose(precision_gain(tuning.delta_z), 79.2, rtol=1e-3)
    assert_allclose(focus_steps_per_depth(OpticsSpec(), tuning), 15.125, rtol=1e-3)


def test_invalid_ratio():
    for ratio in (0, -3):
        with pytest.raises(InvalidRatioError):
            tuning_accuracy(REFERENCE_SCREW, ratio)


def test_required_ratio_inverts_tuning():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        screw = ScrewSpec(rng.uniform(0.2, 5.0), rng.uniform(1e-3, math.pi), 6.0)
        ratio = rng.uniform(0.5, 100.0)
        dz = tuning_accuracy(screw, ratio).delta_z
        assert_allclose(required_ratio(dz, screw), ratio, rtol=1e-12)


def test_tuning_monotonic():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        screw = ScrewSpec(rng.uniform(0.2, 5.0), rng.uniform(1e-3, math.pi), 6.0)
        ratio = rng.uniform(0.5, 100.0)
        finer = tuning_accuracy(screw, ratio * rng.uniform(1.01, 3.0)).delta_z
        assert finer < tuning_accuracy(screw, ratio).delta_z


def test_screw_validation():
    with pytest.raises(OpticsError):
        ScrewSpec(0, 0.1, 6)
    with pytest.raises(OpticsError):
        ScrewSpec(2, 0, 6)
    with pytest.raises(OpticsError):
        ScrewSpec(2, 7.0, 6)


def test_screw_keeps_degrees():
    assert REFERENCE_SCREW.min_rotation_deg == 5.0
    assert_allclose(REFERENCE_SCREW.min_rotation, math.radians(5))


def test_accuracy_surface():
    surface = accuracy_surface((0.5, 3.0), (math.radians(0.5), math.radians(30)), 11, samples=(4, 3))
    assert surface.delta_z.shape == (4, 3)
    assert_allclose(surface.pitches, (0.5, 1.75, 3.0))
    rows = list(surface.rows())
    assert len(rows) == 12
    for angle, pitch, dz in rows:
        assert_allclose(dz, angle * pitch * 1000 / (2 * math.pi * 11))
    # increasing in both angle and pitch
    assert np.all(np.diff(surface.delta_z, axis=0) > 0)
    assert np.all(np.diff(surface.delta_z, axis=1) > 0)


def test_accuracy_surface_validation():
    with pytest.raises(OpticsError):
        accuracy_surface((0.5, 3.0), (0.01, 0.5), 11, samples=1)
    with pytest.raises(OpticsError):
        accuracy_surface((3.0, 0.5), (0.01, 0.5), 11)
    with pytest.raises(InvalidRatioError):
        accuracy_surface((0.5, 3.0), (0.01, 0.5), 0)


def test_usaf():
    assert usaf_line_pairs_per_mm(9, 1) == 512
    assert round(usaf_linewidth(9, 1), 2) == 0.98
    assert_allclose(usaf_line_pairs_per_mm(0, 1), 1.0)
    assert_allclose(usaf_line_pairs_per_mm(2, 4), 2 ** 2.5)
    assert_allclose(usaf_linewidth(-2, 1), 2000.0)


@pytest.mark.parametrize("group, element", [(9, 7), (9, 0), (10, 1), (-3, 1), (1.5, 1)])
def test_usaf_invalid(group, element):
    with pytest.raises(InvalidElementError):
        usaf_line_pairs_per_mm(group, element)
