"""Scene compilation: program -> placed triangle meshes."""

from __future__ import annotations

from ..errors import GeometryError
from ..sdl.model import SceneProgram
from .extrude import extrude_profile
from .mesh import MeshSet, SceneEntry
from .placement import Mat4, child_frame, identity, place_instances, scaling


def compile_scene(prog: SceneProgram) -> MeshSet:
    """Compile a validated program into one entry per placed instance.

    Entry order is document order, then instance index. Frames compose
    from the root; geometry failures are re-raised naming the component.
    """
    frames: dict[str, Mat4] = {}

    def base_frame(cid: str) -> Mat4:
        # The frame a component offers its children (first instance, unscaled).
        if cid not in frames:
            block = prog.component(cid)
            assert block is not None
            parent = identity() if block.attach is None else base_frame(block.attach.parent_id)
            frames[cid] = child_frame(block, parent)
        return frames[cid]

    entries: list[SceneEntry] = []
    for block in prog.components:
        try:
            mesh = extrude_profile(block.profile, block.extrude)
        except GeometryError as exc:
            if exc.component_id:
                raise
            raise GeometryError(str(exc), component_id=block.id) from exc
        parent = identity() if block.attach is None else base_frame(block.attach.parent_id)
        scale = scaling(*block.scale)
        for i, rigid in enumerate(place_instances(block, parent)):
            entries.append(
                SceneEntry(
                    component_id=block.id,
                    instance=i,
                    name=block.id if block.count == 1 else f"{block.id}.{i}",
                    mesh=mesh,
                    world_transform=rigid @ scale,
                    color=block.color,
                )
            )
    return MeshSet(scene_name=prog.name, entries=tuple(entries))
