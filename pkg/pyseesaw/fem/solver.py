import logging
import typing

import numpy as np

from ..exceptions import UnderConstrainedModelError
from .elements import direction_cosines, element_dofs, local_stiffness, transformation
from .interface import DOF_PER_NODE, FrameModel, FrameSolution

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9


def _element_matrices(model: FrameModel) -> typing.List[typing.Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    ret = []
    for element in model.elements:
        c, s, length = direction_cosines(model.nodes[element.node_i], model.nodes[element.node_j])
        e = element.material.youngs_modulus
        k_local = local_stiffness(e * element.section.area, e * element.section.second_moment, length)
        ret.append((k_local, transformation(c, s), element_dofs(element.node_i, element.node_j)))
    return ret


def assemble_stiffness(model: FrameModel, matrices=None) -> np.ndarray:
    k = np.zeros((model.n_dofs, model.n_dofs))
    for k_local, t, dofs in matrices or _element_matrices(model):
        k[np.ix_(dofs, dofs)] += t.T @ k_local @ t
    return k


def solve_frame(model: FrameModel) -> FrameSolution:
    """Linear small-displacement solve of K*d = f with the constrained DOFs held at zero."""
    matrices = _element_matrices(model)
    k = assemble_stiffness(model, matrices)
    f = model.load_vector()

    fixed = np.array(model.fixed_dofs(), dtype=int)
    free = np.setdiff1d(np.arange(model.n_dofs), fixed)
    logger.debug("Assembled %d DOF frame, %d free", model.n_dofs, free.size)

    k_ff = k[np.ix_(free, free)]
    if np.linalg.cond(k_ff) * np.finfo(float).eps >= 1.0:
        raise UnderConstrainedModelError("Stiffness matrix is singular, the constraints leave a mechanism")

    d = np.zeros(model.n_dofs)
    try:
        d[free] = np.linalg.solve(k_ff, f[free])
    except np.linalg.LinAlgError as e:
        raise UnderConstrainedModelError(f"Stiffness matrix is singular: {e}") from e

    unbalanced = k_ff @ d[free] - f[free]
    scale = np.linalg.norm(f[free])
    residual = float(np.linalg.norm(unbalanced) / scale) if scale > 0 else float(np.linalg.norm(unbalanced))
    if residual > RESIDUAL_TOLERANCE:
        logger.warning("Frame residual %.3g exceeds tolerance %.1g", residual, RESIDUAL_TOLERANCE)

    reactions = k @ d - f

    stresses = np.zeros(len(model.elements))
    for index, (element, (k_local, t, dofs)) in enumerate(zip(model.elements, matrices)):
        end_forces = k_local @ (t @ d[dofs])
        stresses[index] = abs(end_forces[2]) * (element.section.thickness / 2) / element.section.second_moment

    return FrameSolution(
        model=model,
        displacements=d.reshape(-1, DOF_PER_NODE),
        reactions=reactions,
        element_stresses=stresses,
        residual=residual,
    )
