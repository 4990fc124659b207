# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

from enum import Enum
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class WitnessKind(str, Enum):
    """Kind of violation a witness certifies"""
    CORNER = "corner"
    THREE_AP = "three-ap"
    TRIPLE_CONDITION = "triple-condition"
    DIAMOND = "diamond"


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


class Witness(BaseModel):
    """Checkable certificate that a set or graph violates a property.

    Element layout per kind:
        corner:           [[x, y], [x + d, y], [x, y + d]], difference d
        three-ap:         [a, a + d, a + 2d], difference d
        triple-condition: [a1, a2, a3] with each a = [x, y]
        diamond:          [[u, v], triangle_1, triangle_2], or [[u, v]] for an edge in no triangle

    A witness is falsy, so verifier results can be used directly in conditions.
    """
    model_config = ConfigDict(frozen=True)

    kind: WitnessKind = Field(description="Which property is violated")
    elements: List[Any] = Field(description="Offending points, pairs or vertices")
    difference: Optional[List[int]] = Field(default=None, description="Non-zero common difference, when applicable")
    detail: str = Field(default="", description="Human-readable summary")

    def __bool__(self) -> bool:
        return False

    def is_consistent(self) -> bool:
        """Re-evaluate the defining equations on the elements"""
        try:
            if self.kind == WitnessKind.CORNER:
                (x, y), first, second = self.elements
                d = self.difference
                return any(d) and first == [_add(x, d), y] and second == [x, _add(y, d)]
            if self.kind == WitnessKind.THREE_AP:
                a, b, c = self.elements
                d = self.difference
                return any(d) and b == _add(a, d) and c == _add(b, d)
            if self.kind == WitnessKind.TRIPLE_CONDITION:
                a1, a2, a3 = self.elements
                return (a2[0] == a3[0] and a3[1] == a1[1]
                        and _add(*a1) == _add(*a2)
                        and not (a1 == a2 == a3))
            if self.kind == WitnessKind.DIAMOND:
                edge = set(self.elements[0])
                if len(edge) != 2:
                    return False
                triangles = [frozenset(t) for t in self.elements[1:]]
                if not triangles:
                    return True
                return (len(triangles) == 2 and triangles[0] != triangles[1]
                        and all(len(t) == 3 and edge <= t for t in triangles))
        except (TypeError, ValueError):
            return False
        return False
