from __future__ import annotations

import typing

from ..exceptions import FrameModelError
from ..mechanics import CrossSection, DisplacementConvention, Material, SeesawGeometry
from .interface import ALL_DOFS, FrameElement, FrameModel, FrameSolution, NodalLoad
from .solver import solve_frame

BASE = "base"
JOINT = "joint"
ACTIVE_TIP = "active_tip"
PASSIVE_TIP = "passive_tip"


def _segment(
    start: typing.Tuple[float, float], end: typing.Tuple[float, float], n: int
) -> typing.List[typing.Tuple[float, float]]:
    # nodes after `start`, up to and including `end`
    return [(start[0] + (end[0] - start[0]) * i / n, start[1] + (end[1] - start[1]) * i / n) for i in range(1, n + 1)]


def build_seesaw_frame(
    geom: SeesawGeometry,
    mat: Material,
    elements_per_segment: int = 4,
    force: float = 1.0,
) -> FrameModel:
    """
    T-shaped frame of the lever: a supporting beam of length L2 clamped at its base, and a hanging beam spanning L1
    to the A tip and L3 + T2/2 to the P tip from the joint. Positive `force` pushes the A tip down.

    Nodes are numbered base, supporting beam upwards to the joint, A arm outwards, then P arm outwards; each element's
    first node is the one nearer the base.
    """
    n = elements_per_segment
    if not (isinstance(n, int) and n >= 1):
        raise FrameModelError(f"elements_per_segment must be a positive integer, got {n!r}")

    base = (0.0, 0.0)
    joint = (0.0, geom.l2)
    active_tip = (-geom.l1, geom.l2)
    passive_tip = (geom.passive_arm, geom.l2)

    nodes = [base] + _segment(base, joint, n) + _segment(joint, active_tip, n) + _segment(joint, passive_tip, n)
    joint_index = n

    supporting = geom.supporting_section
    hanging = geom.hanging_section

    elements = [FrameElement(i, i + 1, supporting, mat) for i in range(n)]
    for first in (n + 1, 2 * n + 1):
        chain = [joint_index] + list(range(first, first + n))
        elements += [FrameElement(a, b, hanging, mat) for a, b in zip(chain, chain[1:])]

    named_nodes = {BASE: 0, JOINT: joint_index, ACTIVE_TIP: 2 * n, PASSIVE_TIP: 3 * n}

    return FrameModel(
        nodes=nodes,
        elements=elements,
        constraints={0: ALL_DOFS},
        loads=[NodalLoad(2 * n, fy=-force)],
        named_nodes=named_nodes,
    )


def build_cantilever_frame(
    length: float,
    section: CrossSection,
    material: Material,
    elements: int = 1,
    tip_force: float = 0.0,
    tip_moment: float = 0.0,
) -> FrameModel:
    """Horizontal cantilever clamped at x = 0 with a transverse force and/or a moment at the free end."""
    if not (isinstance(elements, int) and elements >= 1):
        raise FrameModelError(f"elements must be a positive integer, got {elements!r}")

    nodes = [(0.0, 0.0)] + _segment((0.0, 0.0), (length, 0.0), elements)

    return FrameModel(
        nodes=nodes,
        elements=[FrameElement(i, i + 1, section, material) for i in range(elements)],
        constraints={0: ALL_DOFS},
        loads=[NodalLoad(elements, fy=tip_force, mz=tip_moment)],
        named_nodes={BASE: 0, "tip": elements},
    )


class OracleState:
    """
    Frame-model counterparts of the closed-form deflection state, signs normalised so that a push-down force gives
    positive `active` and positive `passive` (the P tip rises).

    The frame is solved with a unit Young's modulus. Absolute displacements are divided by `youngs_modulus`; ratios
    come from the unit solve and are the same for every material.
    """

    def __init__(self, solution: FrameSolution, geom: SeesawGeometry, youngs_modulus: float = 1.0):
        _, v_active, _ = solution.displacement(ACTIVE_TIP)
        u_passive, v_passive, _ = solution.displacement(PASSIVE_TIP)
        _, _, theta_joint = solution.displacement(JOINT)

        self._solution = solution
        self._l1 = geom.l1
        self._youngs_modulus = youngs_modulus
        self._active_kinematic = -v_active
        self._passive = v_passive
        self._horizontal = u_passive
        self._theta_joint = theta_joint

    @property
    def solution(self) -> FrameSolution:
        """The unit-modulus solve."""
        return self._solution

    @property
    def theta_joint(self) -> float:
        return self._theta_joint / self._youngs_modulus

    @property
    def passive(self) -> float:
        return self._passive / self._youngs_modulus

    @property
    def horizontal(self) -> float:
        return self._horizontal / self._youngs_modulus

    @property
    def max_stress(self) -> float:
        return float(self._solution.element_stresses.max())

    def _active(self, convention: DisplacementConvention) -> float:
        if convention == DisplacementConvention.KinematicTotal:
            return self._active_kinematic
        # strip the rigid rotation of the joint, leaving the arm's own bending
        return self._active_kinematic - self._l1 * self._theta_joint

    def active(self, convention: DisplacementConvention = DisplacementConvention.KinematicTotal) -> float:
        return self._active(convention) / self._youngs_modulus

    def ratio(self, convention: DisplacementConvention = DisplacementConvention.KinematicTotal) -> float:
        return self._active(convention) / self._passive

    def parasitic_ratio(self) -> float:
        return abs(self._passive / self._horizontal)

    def as_dict(self) -> dict:
        return {
            "active_kinematic": self.active(DisplacementConvention.KinematicTotal),
            "active_deflection": self.active(DisplacementConvention.PaperDeflection),
            "passive": self.passive,
            "horizontal": self.horizontal,
            "theta_joint": self.theta_joint,
            "max_stress": self.max_stress,
        }


def oracle_state(
    geom: SeesawGeometry, mat: Material, force: float = 1.0, elements_per_segment: int = 4
) -> OracleState:
    unit = mat.with_youngs_modulus(1.0)
    solution = solve_frame(build_seesaw_frame(geom, unit, elements_per_segment, force))
    return OracleState(solution, geom, mat.youngs_modulus)


def oracle_displacement_ratio(
    geom: SeesawGeometry,
    mat: Material,
    convention: DisplacementConvention = DisplacementConvention.KinematicTotal,
    elements_per_segment: int = 4,
) -> float:
    return oracle_state(geom, mat, 1.0, elements_per_segment).ratio(convention)


def oracle_parasitic_ratio(geom: SeesawGeometry, mat: Material, elements_per_segment: int = 4) -> float:
    return oracle_state(geom, mat, 1.0, elements_per_segment).parasitic_ratio()


def mesh_convergence(
    geom: SeesawGeometry, mat: Material, levels: typing.Sequence[int] = (1, 2, 4, 8, 16, 32, 64)
) -> typing.List[dict]:
    rows = []
    reference = None
    for n in levels:
        state = oracle_state(geom, mat, 1.0, n)
        active = state.active()
        if reference is None:
            reference = (active, state.passive)
        rows.append(
            {
                "elements_per_segment": n,
                "active": active,
                "passive": state.passive,
                "active_change": abs(active - reference[0]) / abs(reference[0]),
                "passive_change": abs(state.passive - reference[1]) / abs(reference[1]),
            }
        )
    return rows
