"""DSL parsing/emission and the prover-input emitter."""

from __future__ import annotations

import dataclasses

import pytest

from conftest import VARIGNON_DSL
from i2gatp.container import pack, unpack
from i2gatp.dsl import emit_dsl, emit_prover_input, parse_dsl
from i2gatp.errors import (
    DegenerateInitialInstance,
    DslSyntaxError,
    DslUnresolvedId,
    NoConjectureError,
    OpaqueConstraintError,
)
from i2gatp.model import (
    Conjecture,
    ConstraintKind,
    Equal,
    Midpoint,
    SegmentRatio,
    canonicalize_problem,
    validate_problem,
)
from i2gatp.numeric import check_conjecture


def test_minimal_program():
    p = parse_dsl("point A 0 0\npoint B 2 2\nmidpoint M A B\nprove { conclude midpoint M A B }\n")
    assert len(p.construction.elements) == 3
    assert p.conjecture == Conjecture(hypothesis=(), ndg=(), conclusion=(Midpoint("M", "A", "B"),))
    assert validate_problem(p) == []


def test_degenerate_initial_instance_carries_line():
    with pytest.raises(DegenerateInitialInstance) as exc:
        parse_dsl("point A 0 0\nline l A A\n")
    assert exc.value.line == 2


def test_unresolved_and_syntax_diagnostics():
    with pytest.raises(DslUnresolvedId) as exc:
        parse_dsl("point A 0 0\nmidpoint M A Z\n")
    assert exc.value.line == 2
    with pytest.raises(DslSyntaxError) as exc2:
        parse_dsl("point A 0 0\nwobble W A\n")
    assert exc2.value.line == 2
    with pytest.raises(DslSyntaxError):
        parse_dsl("point A 0 0\npoint A 1 1\n")  # duplicate id


def test_comments_and_blank_lines_ignored():
    p = parse_dsl("\n% a comment\npoint A 0 0  % trailing comment\n\npoint B 1 1\n")
    assert len(p.construction.elements) == 2


def test_round_trip_on_canonical_text(corpus):
    for name in ("varignon", "harmonic_range", "circle_radii", "perpendicular_foot", "parallel_transport"):
        p = corpus[name]
        text = emit_dsl(p)
        assert parse_dsl(text) == p, name
        assert emit_dsl(parse_dsl(text)) == text, name


def test_equal_and_ratio_predicates_round_trip(corpus):
    p = corpus["harmonic_range"]
    assert any(isinstance(q, Equal) for q in p.conjecture.conclusion)
    assert parse_dsl(emit_dsl(p)) == p
    q = corpus["half_segment"]
    assert isinstance(q.conjecture.conclusion[0], SegmentRatio)
    assert parse_dsl(emit_dsl(q)) == q


def test_cross_format_equality(corpus):
    for name, p in corpus.items():
        if p.construction.has_opaque():
            continue
        xml_route = unpack(pack(p))
        # carried files are outside DSL coverage; compare the DSL-visible part
        trimmed = dataclasses.replace(xml_route, resources=(), metadata=(), private=(), proofs=())
        base = dataclasses.replace(canonicalize_problem(p), resources=(), metadata=(), private=(), proofs=())
        if base.info is not None and (base.info.statement or base.info.bibrefs):
            base = dataclasses.replace(base, info=dataclasses.replace(base.info, statement=b"", bibrefs=()))
            trimmed = dataclasses.replace(trimmed, info=dataclasses.replace(trimmed.info, statement=b"", bibrefs=()))
        assert emit_dsl(trimmed) == emit_dsl(base), name
        assert parse_dsl(emit_dsl(trimmed)) == base, name


def test_check_reports_identical_across_routes(varignon):
    via_container = unpack(pack(varignon))
    assert check_conjecture(varignon, 200, seed=42) == check_conjecture(via_container, 200, seed=42)


def test_emit_requires_no_opaque(corpus):
    with pytest.raises(OpaqueConstraintError):
        emit_dsl(corpus["opaque_circumcircle"])


def test_emit_without_conjecture_has_no_prove_block(corpus):
    text = emit_dsl(corpus["minimal"])
    assert "prove" not in text
    assert parse_dsl(text) == corpus["minimal"]


def test_prover_input_layout(varignon):
    text = emit_prover_input(varignon)
    lines = text.splitlines()
    assert lines[0] == "gpi 1"
    assert lines[1] == "problem varignon"
    c = lines.index("construction:")
    h = lines.index("hypothesis:")
    k = lines.index("conclude:")
    assert "ndg:" not in lines  # empty section omitted
    assert h - c - 1 == 12
    assert k - h - 1 == 4
    assert len(lines) - k - 1 == 2
    assert lines[k + 1] == "parallel P Q S R"


def test_prover_input_requires_conjecture(corpus):
    with pytest.raises(NoConjectureError):
        emit_prover_input(corpus["minimal"])


def test_parametric_statements_round_trip(corpus):
    p = corpus["harmonic_range"]
    kinds = [c.kind for c in p.construction.constraints]
    assert ConstraintKind.POINT_ON_LINE in kinds
    text = emit_dsl(p)
    assert "online C l -1.0" in text
    assert parse_dsl(text) == p


def test_varignon_dsl_source_is_stable():
    p = parse_dsl(VARIGNON_DSL)
    assert emit_dsl(parse_dsl(emit_dsl(p))) == emit_dsl(p)
