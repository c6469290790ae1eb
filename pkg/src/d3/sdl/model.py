"""Core data model for SDL scene programs.

A program is a named scene holding an ordered list of component blocks.
Every block extrudes a 2D profile into a prism; non-root blocks carry an
attachment constraint linking them to a parent, so the blocks form a tree.
All types are frozen: edits produce new values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

RGB = tuple[int, int, int]
Vec2 = tuple[float, float]
Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class RectProfile:
    width: float
    height: float


@dataclass(frozen=True)
class EllipseProfile:
    rx: float
    ry: float
    segments: int


@dataclass(frozen=True)
class PolygonProfile:
    vertices: tuple[Vec2, ...]


@dataclass(frozen=True)
class BezierProfile:
    # Closed control chain; the outline is the smooth curve through the
    # midpoints of consecutive control points, sampled `samples` times.
    controls: tuple[Vec2, ...]
    samples: int


@dataclass(frozen=True)
class RefProfile:
    name: str


Profile2D = RectProfile | EllipseProfile | PolygonProfile | BezierProfile | RefProfile


@dataclass(frozen=True)
class AttachConstraint:
    parent_id: str
    angle_deg: float
    mode: str  # "radial" | "fixed"
    offset: Vec3 = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ComponentBlock:
    id: str
    profile: Profile2D
    extrude: float
    color: RGB
    count: int = 1
    scale: Vec3 = (1.0, 1.0, 1.0)
    attach: AttachConstraint | None = None


@dataclass(frozen=True)
class SceneProgram:
    name: str
    components: tuple[ComponentBlock, ...]

    def component(self, component_id: str) -> ComponentBlock | None:
        for block in self.components:
            if block.id == component_id:
                return block
        return None

    @property
    def root(self) -> ComponentBlock:
        for block in self.components:
            if block.attach is None:
                return block
        raise ValueError("program has no root component")

    def children_of(self, component_id: str) -> tuple[ComponentBlock, ...]:
        return tuple(
            b for b in self.components if b.attach and b.attach.parent_id == component_id
        )

    def descendant_ids(self, component_id: str) -> set[str]:
        """Ids of the component and everything attached below it."""
        found = {component_id}
        grew = True
        while grew:
            grew = False
            for block in self.components:
                if block.attach and block.attach.parent_id in found and block.id not in found:
                    found.add(block.id)
                    grew = True
        return found


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.severity}:{self.line}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    """Outcome of parsing: a program or error diagnostics, never both."""

    program: SceneProgram | None
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.program is not None

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == "error")


# ---------------------------------------------------------------------------
# Structured edits

@dataclass(frozen=True)
class ReplaceBlock:
    component_id: str
    block_text: str


@dataclass(frozen=True)
class AddComponent:
    block_text: str


@dataclass(frozen=True)
class RemoveComponent:
    component_id: str


@dataclass(frozen=True)
class SetParam:
    component_id: str
    field_path: str  # color | extrude | count | scale | attach.angle | attach.offset
    value: object


@dataclass(frozen=True)
class Segment:
    component_id: str
    block_texts: tuple[str, ...] = field(default_factory=tuple)


IntentOp = ReplaceBlock | AddComponent | RemoveComponent | SetParam | Segment

SET_PARAM_FIELDS = ("color", "extrude", "count", "scale", "attach.angle", "attach.offset")
