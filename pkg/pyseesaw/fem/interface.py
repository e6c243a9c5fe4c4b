from __future__ import annotations

import math
import typing
from enum import IntEnum

import numpy as np

from ..exceptions import FrameModelError
from ..mechanics import CrossSection, Material


class Dof(IntEnum):
    u = 0
    v = 1
    theta = 2


DOF_PER_NODE = len(Dof)
ALL_DOFS = frozenset(Dof)


##############
# Model      #
##############
class FrameElement:
    """Two-node plane frame element: linear axial, cubic Euler-Bernoulli bending."""

    def __init__(self, node_i: int, node_j: int, section: CrossSection, material: Material):
        if node_i == node_j:
            raise FrameModelError(f"Element connects node {node_i} to itself")

        self.node_i = node_i
        self.node_j = node_j
        self.section = section
        self.material = material

    @property
    def nodes(self) -> typing.Tuple[int, int]:
        return (self.node_i, self.node_j)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.node_i}->{self.node_j}, {self.section}, {self.material.name})"


class NodalLoad:
    def __init__(self, node: int, fx: float = 0.0, fy: float = 0.0, mz: float = 0.0):
        self.node = node
        self.fx = fx  # N
        self.fy = fy  # N
        self.mz = mz  # N*mm

    def vector(self) -> typing.Tuple[float, float, float]:
        return (self.fx, self.fy, self.mz)

    def __repr__(self):
        return f"{self.__class__.__name__}(node={self.node}, fx={self.fx:g}, fy={self.fy:g}, mz={self.mz:g})"


class FrameModel:
    def __init__(
        self,
        nodes: typing.Sequence[typing.Tuple[float, float]],
        elements: typing.Sequence[FrameElement],
        constraints: typing.Dict[int, typing.FrozenSet[Dof]],
        loads: typing.Sequence[NodalLoad] = (),
        named_nodes: typing.Optional[typing.Dict[str, int]] = None,
    ):
        self._nodes = tuple((float(x), float(y)) for x, y in nodes)
        self._elements = tuple(elements)
        self._constraints = {node: frozenset(dofs) for node, dofs in constraints.items()}
        self._loads = tuple(loads)
        self._named_nodes = dict(named_nodes or {})

        self._validate()

    def _validate(self) -> None:
        n = len(self._nodes)
        if n < 2 or not self._elements:
            raise FrameModelError("A frame needs at least two nodes and one element")

        for element in self._elements:
            for node in element.nodes:
                if not 0 <= node < n:
                    raise FrameModelError(f"Element {element!r} references unknown node {node}")
            if self.element_length(element) <= 0:
                raise FrameModelError(f"Zero-length element {element!r}")

        for node in list(self._constraints) + [load.node for load in self._loads]:
            if not 0 <= node < n:
                raise FrameModelError(f"Unknown node {node} in constraints or loads")

        if not any(dofs == ALL_DOFS for dofs in self._constraints.values()):
            raise FrameModelError("At least one node must be fully fixed")

        # connectivity by flood fill over element adjacency
        adjacency: typing.Dict[int, typing.Set[int]] = {i: set() for i in range(n)}
        for element in self._elements:
            adjacency[element.node_i].add(element.node_j)
            adjacency[element.node_j].add(element.node_i)

        seen = {0}
        stack = [0]
        while stack:
            for neighbour in adjacency[stack.pop()]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    stack.append(neighbour)

        if len(seen) != n:
            raise FrameModelError(f"Frame graph is not connected: {n - len(seen)} node(s) unreachable")

    @property
    def nodes(self) -> typing.Tuple[typing.Tuple[float, float], ...]:
        return self._nodes

    @property
    def elements(self) -> typing.Tuple[FrameElement, ...]:
        return self._elements

    @property
    def constraints(self) -> typing.Dict[int, typing.FrozenSet[Dof]]:
        return dict(self._constraints)

    @property
    def loads(self) -> typing.Tuple[NodalLoad, ...]:
        return self._loads

    @property
    def named_nodes(self) -> typing.Dict[str, int]:
        return dict(self._named_nodes)

    @property
    def n_dofs(self) -> int:
        return DOF_PER_NODE * len(self._nodes)

    def node(self, name: str) -> int:
        if name not in self._named_nodes:
            raise FrameModelError(f"Model has no node named {name!r}")
        return self._named_nodes[name]

    def element_length(self, element: FrameElement) -> float:
        (x1, y1), (x2, y2) = self._nodes[element.node_i], self._nodes[element.node_j]
        return math.hypot(x2 - x1, y2 - y1)

    def fixed_dofs(self) -> typing.List[int]:
        return sorted(DOF_PER_NODE * node + dof for node, dofs in self._constraints.items() for dof in dofs)

    def with_loads(self, loads: typing.Sequence[NodalLoad]) -> FrameModel:
        return FrameModel(self._nodes, self._elements, self._constraints, loads, self._named_nodes)

    def load_vector(self) -> np.ndarray:
        f = np.zeros(self.n_dofs)
        for load in self._loads:
            f[DOF_PER_NODE * load.node : DOF_PER_NODE * load.node + DOF_PER_NODE] += load.vector()
        return f

    def __repr__(self):
        return f"FrameModel(nodes={len(self._nodes)}, elements={len(self._elements)}, loads={len(self._loads)})"


##############
# Solution   #
##############
class FrameSolution:
    def __init__(
        self,
        model: FrameModel,
        displacements: np.ndarray,
        reactions: np.ndarray,
        element_stresses: np.ndarray,
        residual: float,
    ):
        self._model = model
        self._displacements = displacements
        self._reactions = reactions
        self._element_stresses = element_stresses
        self._residual = residual

        self._displacements.setflags(write=False)
        self._reactions.setflags(write=False)
        self._element_stresses.setflags(write=False)

    @property
    def model(self) -> FrameModel:
        return self._model

    @property
    def displacements(self) -> np.ndarray:
        """(n_nodes, 3) array of u, v (mm) and theta (rad)."""
        return self._displacements

    @property
    def reactions(self) -> np.ndarray:
        return self._reactions

    @property
    def element_stresses(self) -> np.ndarray:
        """Bending stress |M|*c/I at each element's first node (MPa)."""
        return self._element_stresses

    @property
    def residual(self) -> float:
        """Relative residual ||K*d - f|| / ||f|| over the free DOFs."""
        return self._residual

    def displacement(self, node: typing.Union[int, str]) -> typing.Tuple[float, float, float]:
        if isinstance(node, str):
            node = self._model.node(node)
        u, v, theta = self._displacements[node]
        return float(u), float(v), float(theta)

    def __repr__(self):
        return f"FrameSolution({self._model!r}, residual={self._residual:.3g})"
