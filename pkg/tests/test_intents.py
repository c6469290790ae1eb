import pytest
from conftest import FLOWER_PROGRAM, RECT_PROGRAM

from d3.errors import IntentError
from d3.sdl.intents import apply_intent
from d3.sdl.model import (
    AddComponent,
    RemoveComponent,
    ReplaceBlock,
    Segment,
    SetParam,
)
from d3.sdl.parser import parse_program
from d3.sdl.printer import print_program

FLOWER = parse_program(FLOWER_PROGRAM).program
RECT = parse_program(RECT_PROGRAM).program


def test_add_component_bootstraps_empty_scene():
    block = 'component "seed" { profile: rect 0.2 0.2 extrude: 0.1 color: gray count: 1 }'
    prog = apply_intent(None, AddComponent(block_text=block))
    assert prog.name == "model"
    assert [b.id for b in prog.components] == ["seed"]


def test_add_component_requires_known_parent():
    block = 'component "leaf" { profile: ref "leaf" extrude: 0.01 color: green count: 2 attach: "ghost" angle 30 radial }'
    with pytest.raises(IntentError, match="unknown parent"):
        apply_intent(FLOWER, AddComponent(block_text=block))


def test_add_component_rejects_duplicate_id():
    block = 'component "stem" { profile: rect 0.1 0.1 extrude: 0.1 color: red count: 1 attach: "receptacle" angle 0 fixed }'
    with pytest.raises(IntentError, match="already exists"):
        apply_intent(FLOWER, AddComponent(block_text=block))


def test_add_component_appends():
    block = 'component "leaf" { profile: ref "leaf" extrude: 0.01 color: green count: 2 attach: "stem" angle 40 radial }'
    prog = apply_intent(FLOWER, AddComponent(block_text=block))
    assert [b.id for b in prog.components] == ["receptacle", "stem", "petal", "leaf"]


def test_replace_block_in_place():
    new_text = (
        'component "petal" { profile: ref "lotus_petal" extrude: 0.02 color: #FFC0CB count: 7 '
        'attach: "receptacle" angle 80 radial offset 0.0 0.05 0.0 }'
    )
    prog = apply_intent(FLOWER, ReplaceBlock(component_id="petal", block_text=new_text))
    assert [b.id for b in prog.components] == ["receptacle", "stem", "petal"]
    assert prog.component("petal").count == 7


def test_replace_block_may_rename():
    new_text = 'component "bloom" { profile: ref "rose_petal" extrude: 0.02 color: pink count: 5 attach: "receptacle" angle 60 radial }'
    prog = apply_intent(FLOWER, ReplaceBlock(component_id="petal", block_text=new_text))
    assert [b.id for b in prog.components] == ["receptacle", "stem", "bloom"]


def test_replace_unknown_component():
    with pytest.raises(IntentError, match="unknown component"):
        apply_intent(FLOWER, ReplaceBlock(component_id="nope", block_text="component \"x\" {}"))


def test_remove_root_refused():
    with pytest.raises(IntentError, match="root"):
        apply_intent(FLOWER, RemoveComponent(component_id="receptacle"))


def test_remove_leaf():
    prog = apply_intent(FLOWER, RemoveComponent(component_id="petal"))
    assert [b.id for b in prog.components] == ["receptacle", "stem"]


def test_remove_cascade():
    base = apply_intent(
        FLOWER,
        AddComponent(
            block_text='component "vein" { profile: rect 0.005 0.2 extrude: 0.005 color: white count: 1 attach: "stem" angle 0 fixed }'
        ),
    )
    pruned = apply_intent(base, RemoveComponent(component_id="stem"))
    assert [b.id for b in pruned.components] == ["receptacle", "petal"]


def test_set_param_color_and_extrude():
    prog = apply_intent(RECT, SetParam(component_id="stem", field_path="color", value="#00FFFF"))
    assert prog.component("stem").color == (0, 255, 255)
    prog = apply_intent(RECT, SetParam(component_id="stem", field_path="extrude", value=0.25))
    assert prog.component("stem").extrude == 0.25


def test_set_param_attach_angle():
    prog = apply_intent(FLOWER, SetParam(component_id="petal", field_path="attach.angle", value=47.0))
    assert prog.component("petal").attach.angle_deg == 47.0


def test_set_param_attach_angle_without_attach():
    with pytest.raises(IntentError, match="attach"):
        apply_intent(RECT, SetParam(component_id="stem", field_path="attach.angle", value=30.0))


def test_set_param_validates_value():
    with pytest.raises(IntentError):
        apply_intent(FLOWER, SetParam(component_id="petal", field_path="attach.angle", value=270.0))
    with pytest.raises(IntentError):
        apply_intent(RECT, SetParam(component_id="stem", field_path="extrude", value=-1.0))
    with pytest.raises(IntentError):
        apply_intent(RECT, SetParam(component_id="stem", field_path="count", value=0))
    with pytest.raises(IntentError, match="unknown parameter"):
        apply_intent(RECT, SetParam(component_id="stem", field_path="profile", value="x"))


def test_set_param_scale_and_offset():
    prog = apply_intent(RECT, SetParam(component_id="stem", field_path="scale", value=2.0))
    assert prog.component("stem").scale == (2.0, 2.0, 2.0)
    prog = apply_intent(FLOWER, SetParam(component_id="petal", field_path="attach.offset", value=(0.0, 0.1, 0.0)))
    assert prog.component("petal").attach.offset == (0.0, 0.1, 0.0)


def test_segment_splits_component():
    blocks = [
        'component "receptacle" { profile: ellipse 0.1 0.1 24 extrude: 0.05 color: saddlebrown count: 1 }',
        'component "stem" { profile: rect 0.04 0.5 extrude: 0.04 color: forestgreen count: 1 attach: "receptacle" angle 0 fixed offset 0.0 -0.3 0.0 }',
        'component "petal" { profile: ref "rose_petal" extrude: 0.02 color: crimson count: 5 attach: "receptacle" angle 60 radial offset 0.0 0.05 0.0 }',
    ]
    prog = apply_intent(RECT, Segment(component_id="stem", block_texts=tuple(blocks)))
    assert [b.id for b in prog.components] == ["receptacle", "stem", "petal"]
    assert prog.root.id == "receptacle"


def test_segment_requires_blocks_and_unique_ids():
    with pytest.raises(IntentError):
        apply_intent(RECT, Segment(component_id="stem", block_texts=()))
    dup = 'component "x" { profile: rect 1 1 extrude: 1 color: red count: 1 }'
    with pytest.raises(IntentError):
        apply_intent(RECT, Segment(component_id="stem", block_texts=(dup, dup)))


def test_apply_intent_never_mutates_input():
    before = print_program(FLOWER)
    apply_intent(FLOWER, SetParam(component_id="petal", field_path="count", value=9))
    assert print_program(FLOWER) == before


def test_result_always_reparses():
    prog = apply_intent(FLOWER, SetParam(component_id="petal", field_path="count", value=9))
    assert parse_program(print_program(prog)).program == prog
