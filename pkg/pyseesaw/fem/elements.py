import typing

import numpy as np


def local_stiffness(ea: float, ei: float, length: float) -> np.ndarray:
    """6x6 stiffness of a plane frame element in its local axes (u1, v1, t1, u2, v2, t2)."""
    l2 = length * length
    l3 = l2 * length

    k = np.zeros((6, 6))
    k[0, 0] = k[3, 3] = ea / length
    k[0, 3] = k[3, 0] = -ea / length
    k[1, 1] = k[4, 4] = 12 * ei / l3
    k[1, 4] = k[4, 1] = -12 * ei / l3
    k[1, 2] = k[2, 1] = k[1, 5] = k[5, 1] = 6 * ei / l2
    k[2, 4] = k[4, 2] = k[4, 5] = k[5, 4] = -6 * ei / l2
    k[2, 2] = k[5, 5] = 4 * ei / length
    k[2, 5] = k[5, 2] = 2 * ei / length

    return k


def transformation(c: float, s: float) -> np.ndarray:
    rotation = np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])

    t = np.zeros((6, 6))
    t[:3, :3] = rotation
    t[3:, 3:] = rotation

    return t


def direction_cosines(
    p1: typing.Tuple[float, float], p2: typing.Tuple[float, float]
) -> typing.Tuple[float, float, float]:
    dx = p2[0] - p1[0]
    dy = p2[1] - p1[1]
    length = float(np.hypot(dx, dy))

    return dx / length, dy / length, length


def element_dofs(node_i: int, node_j: int) -> np.ndarray:
    return np.array([3 * node_i, 3 * node_i + 1, 3 * node_i + 2, 3 * node_j, 3 * node_j + 1, 3 * node_j + 2])
