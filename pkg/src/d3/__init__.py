"""Interactive text+gesture driven 3D modeling engine.

Core layers: `d3.sdl` (the scene language), `d3.geometry` (compile to
meshes), `d3.gestures` (hand-landmark interpretation), `d3.nl` (utterance
-> edit ops), `d3.session` (stateful loop), `d3.service`/`d3.cli` (I/O).
"""

from .sdl import apply_intent, parse_program, print_program, splice_block

__version__ = "0.1.0"

__all__ = ["apply_intent", "parse_program", "print_program", "splice_block", "__version__"]
