import math

AsPrinted = "as-printed"
Swapped = "swapped"

PaperDeflection = "paper-deflection"
KinematicTotal = "kinematic-total"

# Table 1 rows: (youngs_modulus MPa, bending_strength MPa, density kg/m^3)
RESIN = ("resin", 2700.0, 73.0, 1170.0)
NYLON = ("nylon", 1300.0, 46.0, 1020.0)

# L1, L2, L3, T1, T2, B in mm
REFERENCE_GEOMETRY = (25.0, 6.0, 25.0, 3.0, 1.5, 8.0)

# Displacements of the P side (um) for A side pushed 1..6 mm
REFERENCE_ACTIVE_SWEEP_MM = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
REFERENCE_THEORY_PASSIVE_UM = (85.0, 170.0, 255.0, 340.0, 424.0, 509.0)
REFERENCE_SIMULATION_PASSIVE_UM = (82.0, 166.0, 251.0, 337.0, 424.0, 514.0)
REFERENCE_EXPERIMENT_PASSIVE_UM = (90.0, 182.0, 274.0, 360.0, 441.0, 530.0)
REFERENCE_EXPERIMENT_PASSIVE_STD_UM = (2.3, 4.9, 4.9, 5.4, 1.9, 1.9)

REFERENCE_THEORY_RATIO = 11.78
REFERENCE_SIMULATION_RATIO = 11.84
REFERENCE_EXPERIMENT_RATIO = 11.19
REFERENCE_EXPERIMENT_RATIO_STD = 0.11
REFERENCE_PARASITIC_RATIO = 7.3

# Acceptable relative deviation between the frame oracle and the simulated ratio
ADJUDICATION_TOLERANCE = 0.15

SMALL_ANGLE_LIMIT = 0.1  # rad

DEFAULT_WAVELENGTH_UM = 0.55
DEFAULT_NUMERICAL_APERTURE = 0.12
DEFAULT_MAGNIFICATION = 6.0

REFERENCE_SCREW_PITCH_MM = 2.0
REFERENCE_SCREW_DIAMETER_MM = 6.0
REFERENCE_MIN_ROTATION_DEG = 5.0
REFERENCE_RATIO = 11.0

PRINT_ACCURACY_UM = 200.0

USAF_MIN_GROUP = -2
USAF_MAX_GROUP = 9
USAF_ELEMENTS = 6

DEFAULT_MIN_FEATURE_MM = 0.2
DEFAULT_REQUIRED_STROKE_MM = 0.5
DEFAULT_SAFETY_FACTOR = 1.0
DEFAULT_MAX_PARASITIC_FRACTION = 0.2
DEFAULT_MIN_RATIO = 1.0
DEFAULT_CANDIDATE_CAP = 10**7
DEFAULT_TOP_K = 5
DEFAULT_ELEMENTS_PER_SEGMENT = 4

REFINE_MIN_STEP_MM = 1e-4
DEFAULT_REFINE_ITERS = 200

# Surface defaults for the tuning-resolution grid
DEFAULT_SURFACE_ANGLE_DEG = (0.5, 30.0)
DEFAULT_SURFACE_PITCH_MM = (0.5, 3.0)
DEFAULT_SURFACE_SAMPLES = 25

FLOAT_FORMAT = "{:.6g}"

TWO_PI = 2.0 * math.pi
