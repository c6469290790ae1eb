from conftest import FLOWER_PROGRAM, RECT_PROGRAM

from d3.sdl.model import (
    AttachConstraint,
    BezierProfile,
    EllipseProfile,
    PolygonProfile,
    RectProfile,
    RefProfile,
)
from d3.sdl.parser import parse_block_text, parse_program


def test_minimal_program():
    result = parse_program(RECT_PROGRAM)
    assert result.program is not None
    assert result.diagnostics == ()
    prog = result.program
    assert prog.name == "s"
    assert len(prog.components) == 1
    block = prog.components[0]
    assert block.id == "stem"
    assert block.profile == RectProfile(0.1, 1.0)
    assert block.extrude == 0.1
    assert block.color == (0, 255, 0)
    assert block.count == 1
    assert block.scale == (1.0, 1.0, 1.0)
    assert block.attach is None


def test_fields_may_share_a_line():
    text = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } }'
    result = parse_program(text)
    assert result.program is not None
    assert result.program.components[0].color == (255, 0, 0)


def test_flower_program_attachments():
    prog = parse_program(FLOWER_PROGRAM).program
    assert prog is not None
    petal = prog.component("petal")
    assert petal.attach == AttachConstraint("receptacle", 60.0, "radial", (0.0, 0.05, 0.0))
    assert petal.count == 5
    assert prog.root.id == "receptacle"
    assert [b.id for b in prog.children_of("receptacle")] == ["stem", "petal"]


def test_profile_kinds():
    text = """scene "s" {
      component "a" { profile: polygon 0 0 1 0 1 1 0 1 extrude: 1 color: #112233 count: 1 }
      component "b" { profile: bezier 0 0 1 0 1 1 0 1 samples 16 extrude: 1 color: black count: 1 attach: "a" angle 90 radial }
      component "c" { profile: ref "star" extrude: 0.5 color: gold count: 2 attach: "a" angle 45 radial offset 0 1 0 }
    }"""
    prog = parse_program(text).program
    assert prog is not None
    assert isinstance(prog.component("a").profile, PolygonProfile)
    assert prog.component("a").profile.vertices == ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
    b = prog.component("b").profile
    assert isinstance(b, BezierProfile) and b.samples == 16
    c = prog.component("c").profile
    assert isinstance(c, RefProfile) and c.name == "star"


def test_uniform_scale_shorthand():
    one = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 scale: 2 } }'
    three = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 scale: 2 2 2 } }'
    assert parse_program(one).program == parse_program(three).program


def test_scientific_notation_and_negatives():
    text = 'scene "s" { component "a" { profile: polygon -1e-1 0 1.5E2 0 0 .5 extrude: 1 color: red count: 1 } }'
    prog = parse_program(text).program
    assert prog is not None
    assert prog.component("a").profile.vertices[0] == (-0.1, 0.0)
    assert prog.component("a").profile.vertices[1] == (150.0, 0.0)


def test_syntax_error_reports_line():
    text = 'scene "s" {\n  component "a" {\n    profile rect 1 1\n  }\n}'
    result = parse_program(text)
    assert result.program is None
    assert len(result.errors) == 1
    assert result.errors[0].line == 3


def test_unclosed_block():
    result = parse_program('scene "s" { component "a" { profile: rect 1 1')
    assert result.program is None
    assert "unclosed" in result.errors[0].message


def test_semantic_errors_collected_together():
    text = """scene "s" {
      component "a" { profile: rect -1 1 extrude: 0 color: nonesuch count: 0 }
    }"""
    result = parse_program(text)
    assert result.program is None
    messages = " | ".join(d.message for d in result.errors)
    assert "rect" in messages
    assert "extrude" in messages
    assert "count" in messages
    assert "color" in messages


def test_short_hex_is_a_tokenize_error():
    result = parse_program(
        'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: #12345 count: 1 } }'
    )
    assert result.program is None
    assert "unexpected character" in result.errors[0].message


def test_structural_validation():
    dup = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } }'
    assert any("duplicate" in d.message for d in parse_program(dup).errors)

    orphan = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } component "b" { profile: rect 1 1 extrude: 1 color: red count: 1 attach: "ghost" angle 0 fixed } }'
    assert any("unknown parent" in d.message for d in parse_program(orphan).errors)

    two_roots = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } component "b" { profile: rect 1 1 extrude: 1 color: red count: 1 } }'
    assert any("multiple root" in d.message for d in parse_program(two_roots).errors)

    cycle = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 attach: "b" angle 0 fixed } component "b" { profile: rect 1 1 extrude: 1 color: red count: 1 attach: "a" angle 0 fixed } }'
    assert any("cycle" in d.message for d in parse_program(cycle).errors)


def test_angle_range():
    bad = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } component "b" { profile: rect 1 1 extrude: 1 color: red count: 1 attach: "a" angle 181 fixed } }'
    assert any("angle" in d.message for d in parse_program(bad).errors)


def test_fixed_mode_count_warning():
    text = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } component "b" { profile: rect 1 1 extrude: 1 color: red count: 3 attach: "a" angle 0 fixed } }'
    result = parse_program(text)
    assert result.program is not None
    assert any(d.severity == "warning" and "coincident" in d.message for d in result.diagnostics)


def test_self_intersecting_polygon_rejected():
    bowtie = 'scene "s" { component "a" { profile: polygon 0 0 1 1 1 0 0 1 extrude: 1 color: red count: 1 } }'
    result = parse_program(bowtie)
    assert result.program is None
    assert any("intersect" in d.message for d in result.errors)


def test_unknown_ref_rejected():
    text = 'scene "s" { component "a" { profile: ref "nonesuch" extrude: 1 color: red count: 1 } }'
    result = parse_program(text)
    assert result.program is None


def test_invalid_component_id():
    text = 'scene "s" { component "Bad-Id" { profile: rect 1 1 extrude: 1 color: red count: 1 } }'
    result = parse_program(text)
    assert result.program is None
    assert any("invalid component id" in d.message for d in result.errors)


def test_parse_block_text_standalone():
    block, diags = parse_block_text(
        'component "petal" { profile: ref "rose_petal" extrude: 0.02 color: pink count: 5 attach: "receptacle" angle 60 radial }'
    )
    assert block is not None and diags == ()
    assert block.attach.parent_id == "receptacle"  # parent checked only in programs

    bad, diags = parse_block_text('component "petal" { profile: rect 1 1 }')
    assert bad is None
    assert any("missing field" in d.message for d in diags)

    trailing, diags = parse_block_text(
        'component "a" { profile: rect 1 1 extrude: 1 color: red count: 1 } extra'
    )
    assert trailing is None


def test_count_must_be_integer():
    text = 'scene "s" { component "a" { profile: rect 1 1 extrude: 1 color: red count: 2.5 } }'
    result = parse_program(text)
    assert result.program is None
    assert any("integer" in d.message for d in result.errors)
