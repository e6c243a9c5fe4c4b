from .interface import ALL_DOFS, DOF_PER_NODE, Dof, FrameElement, FrameModel, FrameSolution, NodalLoad
from .seesaw import (
    ACTIVE_TIP,
    BASE,
    JOINT,
    PASSIVE_TIP,
    OracleState,
    build_cantilever_frame,
    build_seesaw_frame,
    mesh_convergence,
    oracle_displacement_ratio,
    oracle_parasitic_ratio,
    oracle_state,
)
from .solver import assemble_stiffness, solve_frame

__all__ = [
    "ALL_DOFS",
    "DOF_PER_NODE",
    "Dof",
    "FrameElement",
    "FrameModel",
    "FrameSolution",
    "NodalLoad",
    "ACTIVE_TIP",
    "BASE",
    "JOINT",
    "PASSIVE_TIP",
    "OracleState",
    "build_cantilever_frame",
    "build_seesaw_frame",
    "mesh_convergence",
    "oracle_displacement_ratio",
    "oracle_parasitic_ratio",
    "oracle_state",
    "assemble_stiffness",
    "solve_frame",
]
