import textwrap

import pytest

from pyseesaw.mechanics import RESIN, SeesawGeometry, ThicknessAssignment

REFERENCE_CONFIG = textwrap.dedent(
    """\
    # lever as printed for the smartphone microscope
    [geometry]
    l1 = 25
    l2 = 6
    l3 = 25
    t1 = 3
    t2 = 1.5
    b = 8

    [material]
    name = resin
    """
)


@pytest.fixture
def reference_geometry():
    return SeesawGeometry.reference()


@pytest.fixture
def swapped_geometry():
    return SeesawGeometry.reference(ThicknessAssignment.Swapped)


@pytest.fixture
def resin():
    return RESIN


@pytest.fixture
def reference_config_text():
    return REFERENCE_CONFIG


@pytest.fixture
def write_config(tmp_path):
    def _write(text, name="run.ini"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
