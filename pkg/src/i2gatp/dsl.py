"""Textual DSL for constructions and conjectures, plus a prover-input emitter.

The DSL (grammar frozen in docs/dsl.md, extension ``.gcl``) is line oriented:
one construction statement per line, ``%`` starts a comment, and an optional
``prove { ... }`` block holds the conjecture.  Leading comment lines of the
form ``% name: ...``, ``% description: ...`` and ``% keyword: ...`` carry the
information record.

Conversion always goes through the Problem value, so any format reachable
from a Problem is reachable from the DSL and vice versa.  The static initial
instance of a DSL-sourced construction is computed from the literal free
coordinates; a problem is inside DSL coverage when its stored instance equals
that computation and its construction has no opaque constraints.

The prover-input emitter (extension ``.gpi``, format frozen in
docs/prover_input.md) writes construction steps as typed facts followed by
``ndg:``, ``hypothesis:`` and ``conclude:`` predicate sections.
"""

from __future__ import annotations

import re

from .errors import (
    DegenerateInitialInstance,
    DegenerateStep,
    DslSyntaxError,
    DslUnresolvedId,
    NoConjectureError,
    OpaqueConstraintError,
)
from .model import (
    CONSTRAINT_SIGNATURES,
    Collinear,
    Conjecture,
    Const,
    Constraint,
    ConstraintKind,
    Construction,
    ElementInstance,
    Equal,
    GeoKind,
    Harmonic,
    ID_RE,
    Midpoint,
    Mult,
    NotEqual,
    NotParallel,
    Parallel,
    Perpendicular,
    Plus,
    Predicate,
    Problem,
    ProblemInfo,
    SameLength,
    SegmentLength,
    SegmentRatio,
    Term,
    predicate_point_ids,
)
from .numeric import SceneLine, ScenePoint, instantiate

__all__ = ["emit_dsl", "emit_prover_input", "parse_dsl"]

_NUM_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")

# statement keyword -> (constraint kind, input kinds)
_STATEMENTS: dict[str, tuple[ConstraintKind, tuple[GeoKind, ...]]] = {
    "line": (ConstraintKind.LINE_THROUGH_TWO_POINTS, (GeoKind.POINT, GeoKind.POINT)),
    "intersec": (ConstraintKind.INTERSECTION_OF_TWO_LINES, (GeoKind.LINE, GeoKind.LINE)),
    "midpoint": (ConstraintKind.MIDPOINT_OF_TWO_POINTS, (GeoKind.POINT, GeoKind.POINT)),
    "circle": (ConstraintKind.CIRCLE_BY_CENTER_AND_POINT, (GeoKind.POINT, GeoKind.POINT)),
    "perp": (ConstraintKind.PERPENDICULAR_LINE_THROUGH_POINT, (GeoKind.LINE, GeoKind.POINT)),
    "parallel": (ConstraintKind.PARALLEL_LINE_THROUGH_POINT, (GeoKind.LINE, GeoKind.POINT)),
    "online": (ConstraintKind.POINT_ON_LINE, (GeoKind.LINE,)),
    "oncircle": (ConstraintKind.POINT_ON_CIRCLE, (GeoKind.CIRCLE,)),
}

_STATEMENT_KEYWORDS = {
    ConstraintKind.FREE_POINT: "point",
    ConstraintKind.LINE_THROUGH_TWO_POINTS: "line",
    ConstraintKind.INTERSECTION_OF_TWO_LINES: "intersec",
    ConstraintKind.MIDPOINT_OF_TWO_POINTS: "midpoint",
    ConstraintKind.CIRCLE_BY_CENTER_AND_POINT: "circle",
    ConstraintKind.PERPENDICULAR_LINE_THROUGH_POINT: "perp",
    ConstraintKind.PARALLEL_LINE_THROUGH_POINT: "parallel",
    ConstraintKind.POINT_ON_LINE: "online",
    ConstraintKind.POINT_ON_CIRCLE: "oncircle",
}

# predicate name -> (class, point arity); equal and segment_ratio are special
_PREDICATES: dict[str, tuple[type, int]] = {
    "not_equal": (NotEqual, 2),
    "not_parallel": (NotParallel, 4),
    "collinear": (Collinear, 3),
    "perpendicular": (Perpendicular, 4),
    "parallel": (Parallel, 4),
    "midpoint": (Midpoint, 3),
    "same_length": (SameLength, 4),
    "harmonic": (Harmonic, 4),
}

_HEADER_RE = re.compile(r"%\s*(name|description|keyword)\s*:\s*(.*?)\s*$")


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# Parsing


class _Tokens:
    """Token stream with line numbers for the prove block."""

    def __init__(self, items: list[tuple[str, int]]):
        self.items = items
        self.pos = 0

    def peek(self) -> tuple[str, int] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, what: str) -> tuple[str, int]:
        item = self.peek()
        if item is None:
            last_line = self.items[-1][1] if self.items else 1
            raise DslSyntaxError(last_line, f"expected {what}, found end of prove block")
        self.pos += 1
        return item


def _check_id_token(token: str, line: int) -> str:
    if not ID_RE.match(token):
        raise DslSyntaxError(line, f"invalid id {token!r}")
    return token


def _parse_number(token: str, line: int) -> float:
    if not _NUM_RE.match(token):
        raise DslSyntaxError(line, f"malformed number {token!r}")
    return float(token)


def _parse_term(toks: _Tokens) -> Term:
    token, line = toks.take("a term")
    if token == "const":
        value, vline = toks.take("a number")
        return Const(_parse_number(value, vline))
    if token == "segment_length":
        a, aline = toks.take("a point id")
        b, bline = toks.take("a point id")
        return SegmentLength(_check_id_token(a, aline), _check_id_token(b, bline))
    if token in ("plus", "mult"):
        left = _parse_term(toks)
        right = _parse_term(toks)
        return (Plus if token == "plus" else Mult)(left, right)
    raise DslSyntaxError(line, f"unknown term {token!r}")


def _parse_predicate(toks: _Tokens) -> tuple[Predicate, int]:
    token, line = toks.take("a predicate")
    if token in _PREDICATES:
        cls, arity = _PREDICATES[token]
        ids = []
        for _ in range(arity):
            ref, rline = toks.take("a point id")
            ids.append(_check_id_token(ref, rline))
        return cls(*ids), line
    if token == "segment_ratio":
        ids = []
        for _ in range(4):
            ref, rline = toks.take("a point id")
            ids.append(_check_id_token(ref, rline))
        value, vline = toks.take("a ratio")
        return SegmentRatio(*ids, ratio=_parse_number(value, vline)), line
    if token == "equal":
        return Equal(_parse_term(toks), _parse_term(toks)), line
    raise DslSyntaxError(line, f"unknown predicate {token!r}")


def _parse_prove_block(tokens: list[tuple[str, int]], start_line: int):
    toks = _Tokens(tokens)
    opener, oline = toks.take("'{'")
    if opener != "{":
        raise DslSyntaxError(oline, f"expected '{{' after prove, found {opener!r}")
    sections: dict[str, list[tuple[Predicate, int]]] = {"hyp": [], "ndg": [], "conclude": []}
    while True:
        item = toks.peek()
        if item is None:
            raise DslSyntaxError(start_line, "unterminated prove block")
        token, line = item
        if token == "}":
            toks.pos += 1
            break
        if token == ";":
            toks.pos += 1
            continue
        if token in sections:
            toks.pos += 1
            sections[token].append(_parse_predicate(toks))
            continue
        raise DslSyntaxError(line, f"expected hyp, ndg or conclude, found {token!r}")
    if toks.peek() is not None:
        token, line = toks.peek()
        raise DslSyntaxError(line, f"unexpected {token!r} after prove block")
    if not sections["conclude"]:
        raise DslSyntaxError(start_line, "prove block needs at least one conclude predicate")
    return sections


def parse_dsl(text: str) -> Problem:
    """Parse DSL text into a problem with a computed initial instance."""

    kinds: dict[str, GeoKind] = {}
    constraints: list[Constraint] = []
    line_of: dict[str, int] = {}
    free_assign: dict[str, tuple[float, float]] = {}
    header: dict[str, str] = {}
    keywords: list[str] = []
    prove_tokens: list[tuple[str, int]] | None = None
    prove_line = 0
    in_block = False
    seen_statement = False

    def define(out_id: str, kind: GeoKind, line: int) -> None:
        if out_id in kinds:
            raise DslSyntaxError(line, f"duplicate id {out_id!r}")
        kinds[out_id] = kind
        line_of[out_id] = line

    def require(ref: str, want: GeoKind, line: int) -> None:
        if ref not in kinds:
            raise DslUnresolvedId(line, f"undefined id {ref!r}")
        if kinds[ref] is not want:
            raise DslSyntaxError(line, f"{ref!r} is a {kinds[ref].value}, expected a {want.value}")

    for lineno, raw in enumerate(text.split("\n"), start=1):
        content, _, comment = raw.partition("%")
        if not content.strip() and comment and not seen_statement and not in_block:
            header_match = _HEADER_RE.match(raw.strip())
            if header_match:
                key, value = header_match.groups()
                if key == "keyword":
                    keywords.append(value)
                elif key in header:
                    raise DslSyntaxError(lineno, f"repeated header {key!r}")
                else:
                    header[key] = value
            continue
        spaced = content.replace("{", " { ").replace("}", " } ").replace(";", " ; ")
        tokens = [(tok, lineno) for tok in spaced.split()]
        if not tokens:
            continue
        if in_block:
            prove_tokens.extend(tokens)
            if any(tok == "}" for tok, _ in tokens):
                in_block = False
            continue
        seen_statement = True
        keyword, _ = tokens[0]
        if keyword == "prove":
            if prove_tokens is not None:
                raise DslSyntaxError(lineno, "only one prove block is allowed")
            prove_tokens = tokens[1:]
            prove_line = lineno
            if not any(tok == "}" for tok, _ in tokens):
                in_block = True
            continue
        if keyword == "point":
            if len(tokens) != 4:
                raise DslSyntaxError(lineno, "usage: point <id> <x> <y>")
            out_id = _check_id_token(tokens[1][0], lineno)
            define(out_id, GeoKind.POINT, lineno)
            x = _parse_number(tokens[2][0], lineno)
            y = _parse_number(tokens[3][0], lineno)
            free_assign[out_id] = (x, y)
            constraints.append(Constraint(output=out_id, kind=ConstraintKind.FREE_POINT))
            continue
        if keyword in _STATEMENTS:
            kind, in_kinds = _STATEMENTS[keyword]
            takes_param = kind in (ConstraintKind.POINT_ON_LINE, ConstraintKind.POINT_ON_CIRCLE)
            want = 2 + len(in_kinds) + (1 if takes_param else 0)
            if len(tokens) != want:
                raise DslSyntaxError(lineno, f"{keyword} takes {want - 2} arguments")
            out_id = _check_id_token(tokens[1][0], lineno)
            inputs = []
            for (ref, _), want_kind in zip(tokens[2 : 2 + len(in_kinds)], in_kinds):
                _check_id_token(ref, lineno)
                require(ref, want_kind, lineno)
                inputs.append(ref)
            parameter = _parse_number(tokens[-1][0], lineno) if takes_param else None
            define(out_id, CONSTRAINT_SIGNATURES[kind][1], lineno)
            constraints.append(
                Constraint(output=out_id, kind=kind, inputs=tuple(inputs), parameter=parameter)
            )
            continue
        raise DslSyntaxError(lineno, f"unknown statement {keyword!r}")

    if in_block:
        raise DslSyntaxError(prove_line, "unterminated prove block")

    bare = Construction(elements=(), constraints=tuple(constraints))
    try:
        scene = instantiate(bare, free_assign)
    except DegenerateStep as exc:
        raise DegenerateInitialInstance(
            line_of.get(exc.step_id, 1), f"step {exc.step_id!r} is degenerate: {exc.reason}"
        ) from exc

    elements = []
    for c in constraints:
        obj = scene[c.output]
        if isinstance(obj, ScenePoint):
            elements.append(ElementInstance(c.output, GeoKind.POINT, (obj.x, obj.y)))
        elif isinstance(obj, SceneLine):
            elements.append(ElementInstance(c.output, GeoKind.LINE, (obj.a, obj.b, obj.c)))
        else:
            elements.append(ElementInstance(c.output, GeoKind.CIRCLE, (obj.cx, obj.cy, obj.r)))
    construction = Construction(elements=tuple(elements), constraints=tuple(constraints))

    conjecture = None
    if prove_tokens is not None:
        sections = _parse_prove_block(prove_tokens, prove_line)
        for preds in sections.values():
            for p, pline in preds:
                for ref in predicate_point_ids(p):
                    if ref not in kinds:
                        raise DslUnresolvedId(pline, f"undefined id {ref!r}")
                    if kinds[ref] is not GeoKind.POINT:
                        raise DslSyntaxError(pline, f"{ref!r} is a {kinds[ref].value}, predicates take points")
        conjecture = Conjecture(
            hypothesis=tuple(p for p, _ in sections["hyp"]),
            ndg=tuple(p for p, _ in sections["ndg"]),
            conclusion=tuple(p for p, _ in sections["conclude"]),
        )

    info = None
    if header or keywords:
        if "name" not in header:
            raise DslSyntaxError(1, "header needs a '% name:' line when metadata is present")
        info = ProblemInfo(
            name=header["name"],
            description=header.get("description", ""),
            keywords=tuple(keywords),
        )
    return Problem(construction=construction, info=info, conjecture=conjecture)


# ---------------------------------------------------------------------------
# Emission


def _term_text(t: Term) -> str:
    if isinstance(t, Const):
        return f"const {_fmt(t.value)}"
    if isinstance(t, SegmentLength):
        return f"segment_length {t.a} {t.b}"
    if isinstance(t, Plus):
        return f"plus {_term_text(t.left)} {_term_text(t.right)}"
    if isinstance(t, Mult):
        return f"mult {_term_text(t.left)} {_term_text(t.right)}"
    raise TypeError(f"not a Term: {t!r}")


def predicate_text(p: Predicate) -> str:
    """Fixed prefix notation shared by the DSL and the prover input."""

    if isinstance(p, Equal):
        return f"equal {_term_text(p.left)} {_term_text(p.right)}"
    if isinstance(p, SegmentRatio):
        return f"segment_ratio {p.a} {p.b} {p.c} {p.d} {_fmt(p.ratio)}"
    name = {
        NotEqual: "not_equal",
        NotParallel: "not_parallel",
        Collinear: "collinear",
        Perpendicular: "perpendicular",
        Parallel: "parallel",
        Midpoint: "midpoint",
        SameLength: "same_length",
        Harmonic: "harmonic",
    }[type(p)]
    return " ".join((name,) + predicate_point_ids(p))


def _statement_text(c: Constraint, coords: dict[str, tuple[float, ...]]) -> str:
    if c.kind is ConstraintKind.FREE_POINT:
        x, y = coords[c.output][:2]
        return f"point {c.output} {_fmt(x)} {_fmt(y)}"
    keyword = _STATEMENT_KEYWORDS[c.kind]
    parts = [keyword, c.output, *c.inputs]
    if c.kind in (ConstraintKind.POINT_ON_LINE, ConstraintKind.POINT_ON_CIRCLE):
        parts.append(_fmt(c.parameter or 0.0))
    return " ".join(parts)


def emit_dsl(problem: Problem) -> str:
    """Canonical DSL text; parse_dsl is its inverse within DSL coverage."""

    coords = {e.id: e.coords for e in problem.construction.elements}
    lines: list[str] = []
    if problem.info is not None:
        lines.append(f"% name: {problem.info.name}")
        if problem.info.description:
            lines.append(f"% description: {' '.join(problem.info.description.split())}")
        for kw in problem.info.keywords:
            lines.append(f"% keyword: {kw}")
    for c in problem.construction.constraints:
        if c.kind is ConstraintKind.OPAQUE:
            raise OpaqueConstraintError(c.output)
        lines.append(_statement_text(c, coords))
    if problem.conjecture is not None:
        lines.append("prove {")
        for keyword, preds in (
            ("hyp", problem.conjecture.hypothesis),
            ("ndg", problem.conjecture.ndg),
            ("conclude", problem.conjecture.conclusion),
        ):
            for p in preds:
                lines.append(f"  {keyword} {predicate_text(p)}")
        lines.append("}")
    return "\n".join(lines) + "\n"


def emit_prover_input(problem: Problem) -> str:
    """Line-oriented neutral prover statement (versioned, .gpi)."""

    if problem.conjecture is None:
        raise NoConjectureError()
    lines = ["gpi 1"]
    if problem.info is not None:
        lines.append(f"problem {problem.info.name}")
    lines.append("construction:")
    for c in problem.construction.constraints:
        if c.kind is ConstraintKind.OPAQUE:
            raise OpaqueConstraintError(c.output)
        parts = [c.kind.value, c.output, *c.inputs]
        if c.kind in (ConstraintKind.POINT_ON_LINE, ConstraintKind.POINT_ON_CIRCLE):
            parts.append(_fmt(c.parameter or 0.0))
        lines.append(" ".join(parts))
    for heading, preds in (
        ("ndg:", problem.conjecture.ndg),
        ("hypothesis:", problem.conjecture.hypothesis),
        ("conclude:", problem.conjecture.conclusion),
    ):
        if not preds:
            continue  # empty sections are omitted
        lines.append(heading)
        for p in preds:
            lines.append(predicate_text(p))
    return "\n".join(lines) + "\n"
