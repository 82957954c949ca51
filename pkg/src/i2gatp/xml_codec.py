"""Codecs for the four XML document kinds of the format.

Parsing is built on expat with byte offsets so opaque payloads (statement,
bibentry, display, unknown constraints) are captured from the source
byte-exactly.  Serialization is canonical: UTF-8, LF, two-space indentation,
lexicographically sorted attributes, opaque payloads emitted verbatim.  The
concrete element shapes are normative companions of this package and are
written down in docs/schema/ (one schema per document kind).

``canonicalize(kind, data)`` is serialize-after-parse and is idempotent;
``validate_document`` reports all structural violations instead of stopping
at the first.
"""

from __future__ import annotations

import enum
import re
import xml.parsers.expat
from dataclasses import dataclass, field

from .errors import CodecError
from .model import (
    ATTEMPT_FIELD_RE,
    BibEntry,
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
    Platform,
    Plus,
    Predicate,
    ProblemInfo,
    ProofAttempt,
    ProofLimits,
    ProofMeasures,
    ProofStatus,
    SameLength,
    SegmentLength,
    SegmentRatio,
    Term,
    Violation,
    validate_attempt,
    validate_conjecture,
    validate_construction,
    validate_info,
)

__all__ = [
    "DocumentKind",
    "canonicalize",
    "parse_conjecture",
    "parse_construction",
    "parse_information",
    "parse_proof_info",
    "serialize_conjecture",
    "serialize_construction",
    "serialize_information",
    "serialize_proof_info",
    "validate_document",
]


class DocumentKind(enum.Enum):
    INFORMATION = "information"
    CONSTRUCTION = "construction"
    CONJECTURE = "conjecture"
    PROOF_INFO = "proof_info"


_NUM_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")


# ---------------------------------------------------------------------------
# Raw parse: element tree with byte offsets into the source


@dataclass
class _RawNode:
    tag: str
    attrs: dict[str, str]
    children: list["_RawNode"] = field(default_factory=list)
    text: str = ""
    start: int = -1        # offset of '<' of the start tag
    inner_start: int = -1  # offset just past '>' of the start tag (-1 if empty tag)
    inner_end: int = -1    # offset of '<' of the end tag
    end: int = -1          # offset just past '>' of the whole element

    def raw(self, data: bytes) -> bytes:
        return data[self.start : self.end]

    def inner(self, data: bytes) -> bytes:
        if self.inner_start < 0:
            return b""
        return data[self.inner_start : self.inner_end].strip()

    def ids(self) -> list[str]:
        return self.text.split()


def _find_tag_end(data: bytes, start: int) -> int:
    """Offset of the '>' closing the tag that starts at ``start``; skips
    quoted attribute values."""

    quote = 0
    j = start
    while j < len(data):
        ch = data[j]
        if quote:
            if ch == quote:
                quote = 0
        elif ch in (0x22, 0x27):  # '"' or "'"
            quote = ch
        elif ch == 0x3E:  # '>'
            return j
        j += 1
    raise ValueError("unterminated tag")


def _parse_raw(data: bytes) -> _RawNode:
    """Parse ``data`` into a raw tree; raises expat.ExpatError."""

    parser = xml.parsers.expat.ParserCreate()
    roots: list[_RawNode] = []
    stack: list[_RawNode] = []
    empty_tag_ends: dict[int, int] = {}

    def on_start(name: str, attrs: dict[str, str]) -> None:
        start = parser.CurrentByteIndex
        tag_end = _find_tag_end(data, start)
        node = _RawNode(tag=name, attrs=attrs, start=start)
        if data[tag_end - 1] == 0x2F:  # '/>': empty-element tag
            empty_tag_ends[id(node)] = tag_end + 1
        else:
            node.inner_start = tag_end + 1
        if stack:
            stack[-1].children.append(node)
        else:
            roots.append(node)
        stack.append(node)

    def on_end(name: str) -> None:
        node = stack.pop()
        known_end = empty_tag_ends.pop(id(node), None)
        if known_end is not None:
            node.end = known_end
        else:
            node.inner_end = parser.CurrentByteIndex
            node.end = _find_tag_end(data, node.inner_end) + 1

    def on_chars(text: str) -> None:
        if stack:
            stack[-1].text += text

    parser.StartElementHandler = on_start
    parser.EndElementHandler = on_end
    parser.CharacterDataHandler = on_chars
    parser.Parse(data, True)
    return roots[0]


# ---------------------------------------------------------------------------
# Analysis support


class _Report:
    """Violation collector distinguishing blocking errors from warnings."""

    def __init__(self) -> None:
        self.errors: list[Violation] = []
        self.warnings: list[Violation] = []

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(Violation(code, path, message))

    def warn(self, code: str, path: str, message: str) -> None:
        self.warnings.append(Violation(code, path, message))

    def all(self) -> list[Violation]:
        return self.errors + self.warnings


def _parse_num(text: str, path: str, rep: _Report) -> float | None:
    if not _NUM_RE.match(text.strip()):
        rep.error("BadNumber", path, f"malformed number {text.strip()!r}")
        return None
    return float(text)


def _parse_int_text(text: str, path: str, rep: _Report) -> int | None:
    if not _INT_RE.match(text.strip()):
        rep.error("BadNumber", path, f"malformed integer {text.strip()!r}")
        return None
    return int(text)


def _num_attr(node: _RawNode, name: str, path: str, rep: _Report) -> float | None:
    if name not in node.attrs:
        rep.error("ArityError", path, f"<{node.tag}> requires a {name!r} attribute")
        return None
    return _parse_num(node.attrs[name], f"{path}/@{name}", rep)


def _check_id(value: str, path: str, rep: _Report) -> str:
    if not ID_RE.match(value):
        rep.error("BadId", path, f"invalid id {value!r}")
    return value


def _expect_root(root: _RawNode, tag: str, rep: _Report) -> bool:
    if root.tag != tag:
        rep.error("UnknownTag", "/", f"expected root <{tag}>, found <{root.tag}>")
        return False
    return True


def _singletons(
    root: _RawNode, path: str, allowed: tuple[str, ...], rep: _Report, strict: bool
) -> dict[str, _RawNode]:
    """First occurrence of each allowed child; duplicates and strangers
    are violations (warnings when not strict)."""

    found: dict[str, _RawNode] = {}
    for ch in root.children:
        if ch.tag not in allowed:
            if strict:
                rep.error("UnknownTag", f"{path}/{ch.tag}", f"unknown tag <{ch.tag}>")
            else:
                rep.warn("UnknownTag", f"{path}/{ch.tag}", f"unknown tag <{ch.tag}> ignored")
            continue
        if ch.tag in found:
            rep.error("DuplicateEntry", f"{path}/{ch.tag}", f"repeated <{ch.tag}> element")
            continue
        found[ch.tag] = ch
    return found


# ---------------------------------------------------------------------------
# information.xml


def _analyze_information(root: _RawNode, data: bytes, rep: _Report, strict: bool) -> ProblemInfo | None:
    if not _expect_root(root, "information", rep):
        return None
    kids = _singletons(root, "/information", ("name", "description", "statement", "bibrefs", "keywords"), rep, strict)
    name_node = kids.get("name")
    if name_node is None or not name_node.text.strip():
        rep.error("MissingName", "/information/name", "the name is the only required field")
        name = ""
    else:
        name = name_node.text.strip()
    description = kids["description"].text.strip() if "description" in kids else ""
    statement = kids["statement"].inner(data) if "statement" in kids else b""
    bibrefs: list[BibEntry] = []
    if "bibrefs" in kids:
        for i, ch in enumerate(kids["bibrefs"].children):
            path = f"/information/bibrefs/{ch.tag}[{i}]"
            if ch.tag != "bibentry":
                rep.error("UnknownTag", path, f"expected <bibentry>, found <{ch.tag}>")
                continue
            entry_id = ch.attrs.get("id", "")
            if not entry_id:
                rep.error("BadId", path, "bibentry requires an id attribute")
            bibrefs.append(BibEntry(id=entry_id, payload=ch.inner(data)))
    keywords: list[str] = []
    if "keywords" in kids:
        for i, ch in enumerate(kids["keywords"].children):
            path = f"/information/keywords/{ch.tag}[{i}]"
            if ch.tag != "keyword":
                rep.error("UnknownTag", path, f"expected <keyword>, found <{ch.tag}>")
                continue
            keywords.append(ch.text.strip())
    return ProblemInfo(
        name=name,
        description=description,
        statement=statement,
        bibrefs=tuple(bibrefs),
        keywords=tuple(keywords),
    )


# ---------------------------------------------------------------------------
# conjecture.xml

_TEXT_PREDICATES: dict[str, tuple[type, int]] = {
    "not_equal": (NotEqual, 2),
    "not_parallel": (NotParallel, 4),
    "collinear": (Collinear, 3),
    "perpendicular": (Perpendicular, 4),
    "parallel": (Parallel, 4),
    "midpoint": (Midpoint, 3),
    "same_length": (SameLength, 4),
    "harmonic": (Harmonic, 4),
}


def _analyze_term(node: _RawNode, path: str, rep: _Report) -> Term | None:
    if node.tag == "const":
        value = _num_attr(node, "value", path, rep)
        return None if value is None else Const(value)
    if node.tag == "segment_length":
        ids = node.ids()
        if len(ids) != 2:
            rep.error("ArityError", path, f"segment_length takes 2 point ids, got {len(ids)}")
            return None
        return SegmentLength(*(_check_id(i, path, rep) for i in ids))
    if node.tag in ("plus", "mult"):
        if len(node.children) != 2:
            rep.error("ArityError", path, f"{node.tag} takes 2 terms, got {len(node.children)}")
            return None
        left = _analyze_term(node.children[0], f"{path}/{node.children[0].tag}", rep)
        right = _analyze_term(node.children[1], f"{path}/{node.children[1].tag}", rep)
        if left is None or right is None:
            return None
        return (Plus if node.tag == "plus" else Mult)(left, right)
    rep.error("UnknownPredicate", path, f"unknown term <{node.tag}>")
    return None


def _analyze_predicate(node: _RawNode, path: str, rep: _Report) -> Predicate | None:
    tag = node.tag
    if tag in _TEXT_PREDICATES:
        cls, want = _TEXT_PREDICATES[tag]
        ids = node.ids()
        if len(ids) != want:
            rep.error("ArityError", path, f"{tag} takes {want} point ids, got {len(ids)}")
            return None
        return cls(*(_check_id(i, path, rep) for i in ids))
    if tag == "segment_ratio":
        ids = node.ids()
        if len(ids) != 4:
            rep.error("ArityError", path, f"segment_ratio takes 4 point ids, got {len(ids)}")
            return None
        if "ratio" not in node.attrs:
            rep.error("BadRatio", path, "segment_ratio requires a ratio attribute")
            return None
        ratio = _parse_num(node.attrs["ratio"], f"{path}/@ratio", rep)
        if ratio is None:
            return None
        return SegmentRatio(*(_check_id(i, path, rep) for i in ids), ratio=ratio)
    if tag == "equal":
        if len(node.children) != 2:
            rep.error("ArityError", path, f"equal takes 2 terms, got {len(node.children)}")
            return None
        left = _analyze_term(node.children[0], f"{path}/{node.children[0].tag}", rep)
        right = _analyze_term(node.children[1], f"{path}/{node.children[1].tag}", rep)
        if left is None or right is None:
            return None
        return Equal(left, right)
    rep.error("UnknownPredicate", path, f"unknown predicate <{tag}>")
    return None


def _analyze_conjecture(root: _RawNode, data: bytes, rep: _Report, strict: bool) -> Conjecture | None:
    if not _expect_root(root, "conjecture", rep):
        return None
    kids = _singletons(root, "/conjecture", ("hypothesis", "ndg", "conclusion"), rep, True)
    sections: dict[str, tuple[Predicate, ...]] = {}
    for section in ("hypothesis", "ndg", "conclusion"):
        preds: list[Predicate] = []
        if section in kids:
            for i, ch in enumerate(kids[section].children):
                p = _analyze_predicate(ch, f"/conjecture/{section}/{ch.tag}[{i}]", rep)
                if p is not None:
                    preds.append(p)
        sections[section] = tuple(preds)
    if "conclusion" not in kids or not kids["conclusion"].children:
        rep.error("MissingConclusion", "/conjecture/conclusion", "conclusion must contain at least one predicate")
    return Conjecture(
        hypothesis=sections["hypothesis"],
        ndg=sections["ndg"],
        conclusion=sections["conclusion"],
    )


# ---------------------------------------------------------------------------
# intergeo.xml (supported subset)

_ELEMENT_ATTRS = {
    "point": ("x", "y"),
    "line": ("a", "b", "c"),
    "circle": ("cx", "cy", "r"),
}

_CONSTRAINT_TAGS = {kind.value: kind for kind in ConstraintKind if kind is not ConstraintKind.OPAQUE}

# stored-parameter attribute name per parametric constraint
_PARAM_ATTRS = {
    ConstraintKind.POINT_ON_LINE: "parameter",
    ConstraintKind.POINT_ON_CIRCLE: "angle",
}


def _analyze_construction(root: _RawNode, data: bytes, rep: _Report, strict: bool) -> Construction | None:
    if not _expect_root(root, "construction", rep):
        return None
    kids = _singletons(root, "/construction", ("elements", "constraints", "display"), rep, True)
    if "elements" not in kids:
        rep.error("MissingElementsPart", "/construction/elements", "the elements part is required")
        return None
    elements: list[ElementInstance] = []
    for i, ch in enumerate(kids["elements"].children):
        path = f"/construction/elements/{ch.tag}[{i}]"
        if ch.tag not in _ELEMENT_ATTRS:
            rep.error("UnknownTag", path, f"unsupported element kind <{ch.tag}>")
            continue
        elem_id = _check_id(ch.attrs.get("id", ""), path, rep)
        coords: list[float] = []
        ok = True
        for attr in _ELEMENT_ATTRS[ch.tag]:
            value = _num_attr(ch, attr, path, rep)
            if value is None:
                ok = False
            else:
                coords.append(value)
        if ok:
            elements.append(ElementInstance(id=elem_id, kind=GeoKind(ch.tag), coords=tuple(coords)))
    constraints: list[Constraint] = []
    if "constraints" in kids:
        for i, ch in enumerate(kids["constraints"].children):
            path = f"/construction/constraints/{ch.tag}[{i}]"
            out_id = ch.attrs.get("out", "")
            if not out_id:
                rep.error("BadId", path, f"constraint <{ch.tag}> requires an out attribute")
                continue
            _check_id(out_id, path, rep)
            kind = _CONSTRAINT_TAGS.get(ch.tag)
            if kind is None:
                constraints.append(
                    Constraint(
                        output=out_id,
                        kind=ConstraintKind.OPAQUE,
                        opaque_tag=ch.tag,
                        opaque_payload=ch.raw(data),
                    )
                )
                continue
            inputs = tuple(_check_id(ref, path, rep) for ref in ch.ids())
            parameter = None
            param_attr = _PARAM_ATTRS.get(kind)
            if param_attr is not None:
                if param_attr not in ch.attrs:
                    rep.error("MissingParameter", path, f"{ch.tag} requires a {param_attr!r} attribute")
                else:
                    parameter = _parse_num(ch.attrs[param_attr], f"{path}/@{param_attr}", rep)
            constraints.append(Constraint(output=out_id, kind=kind, inputs=inputs, parameter=parameter))
    display = kids["display"].raw(data) if "display" in kids else b""
    return Construction(elements=tuple(elements), constraints=tuple(constraints), display=display)


# ---------------------------------------------------------------------------
# proofInfo.xml

_STATUS_BY_TEXT = {status.value: status for status in ProofStatus}

_LIMIT_FIELDS = (("time_limit_seconds", float), ("iterations_limit", int), ("memory_limit_mb", int))
# XML tag -> (model field, type); tags follow the format's symbol list
_MEASURE_FIELDS = (
    ("CPU_time", "cpu_time_seconds", float),
    ("elimination_steps", "elimination_steps", int),
    ("number_terms_largest_polynomial", "number_terms_largest_polynomial", int),
    ("proof_steps", "proof_steps", int),
)
_PLATFORM_NUMERIC = (("clock_speed", "clock_speed_mhz", float), ("RAM", "ram_mb", int))


def _leaf_number(node: _RawNode, path: str, rep: _Report, as_type: type) -> float | int | None:
    if as_type is int:
        return _parse_int_text(node.text, path, rep)
    return _parse_num(node.text, path, rep)


def _analyze_proof_info(root: _RawNode, data: bytes, rep: _Report, strict: bool) -> ProofAttempt | None:
    if not _expect_root(root, "proof_info", rep):
        return None
    kids = _singletons(
        root,
        "/proof_info",
        ("prover", "version", "method", "status", "limits", "measures", "platform"),
        rep,
        strict,
    )
    identity: dict[str, str] = {}
    for fld in ("prover", "version", "method"):
        text = kids[fld].text.strip() if fld in kids else ""
        if not ATTEMPT_FIELD_RE.match(text):
            rep.error("BadName", f"/proof_info/{fld}", f"invalid {fld} {text!r}")
        identity[fld] = text
    status_text = kids["status"].text.strip() if "status" in kids else ""
    status = _STATUS_BY_TEXT.get(status_text.lower())
    if status is None:
        rep.error("UnknownStatus", "/proof_info/status", f"unknown status {status_text!r}")
        status = ProofStatus.UNKNOWN

    # range checks (non-negative, positive) come from model validation
    limit_values: dict[str, float | int | None] = {name: None for name, _t in _LIMIT_FIELDS}
    if "limits" in kids:
        found = _singletons(kids["limits"], "/proof_info/limits", tuple(n for n, _t in _LIMIT_FIELDS), rep, strict)
        for name, as_type in _LIMIT_FIELDS:
            if name in found:
                limit_values[name] = _leaf_number(found[name], f"/proof_info/limits/{name}", rep, as_type)

    measure_values: dict[str, float | int | None] = {fld: None for _tag, fld, _t in _MEASURE_FIELDS}
    if "measures" in kids:
        found = _singletons(
            kids["measures"], "/proof_info/measures", tuple(t for t, _f, _ty in _MEASURE_FIELDS), rep, strict
        )
        for tag, fld, as_type in _MEASURE_FIELDS:
            if tag in found:
                measure_values[fld] = _leaf_number(found[tag], f"/proof_info/measures/{tag}", rep, as_type)

    platform_values: dict[str, object] = {
        "computer_name": None,
        "clock_speed_mhz": None,
        "ram_mb": None,
        "operating_system": None,
    }
    if "platform" in kids:
        found = _singletons(
            kids["platform"],
            "/proof_info/platform",
            ("computer_name", "clock_speed", "RAM", "operating_system"),
            rep,
            strict,
        )
        if "computer_name" in found:
            platform_values["computer_name"] = found["computer_name"].text.strip()
        if "operating_system" in found:
            platform_values["operating_system"] = found["operating_system"].text.strip()
        for tag, fld, as_type in _PLATFORM_NUMERIC:
            if tag in found:
                platform_values[fld] = _leaf_number(found[tag], f"/proof_info/platform/{tag}", rep, as_type)

    return ProofAttempt(
        prover=identity["prover"],
        version=identity["version"],
        method=identity["method"],
        status=status,
        limits=ProofLimits(
            time_limit_seconds=limit_values["time_limit_seconds"],
            iterations_limit=limit_values["iterations_limit"],
            memory_limit_mb=limit_values["memory_limit_mb"],
        ),
        measures=ProofMeasures(**measure_values),
        platform=Platform(**platform_values),  # type: ignore[arg-type]
    )


# ---------------------------------------------------------------------------
# Public parse entry points

_ANALYZERS = {
    DocumentKind.INFORMATION: _analyze_information,
    DocumentKind.CONJECTURE: _analyze_conjecture,
    DocumentKind.CONSTRUCTION: _analyze_construction,
    DocumentKind.PROOF_INFO: _analyze_proof_info,
}


def _analyze(kind: DocumentKind, data: bytes, strict: bool):
    rep = _Report()
    try:
        root = _parse_raw(data)
    except xml.parsers.expat.ExpatError as exc:
        rep.error("MalformedXml", "/", f"XML parse error: {exc}")
        return None, rep
    value = _ANALYZERS[kind](root, data, rep, strict)
    return value, rep


def _model_violations(kind: DocumentKind, value) -> list[Violation]:
    if value is None:
        return []
    if kind is DocumentKind.INFORMATION:
        return validate_info(value)
    if kind is DocumentKind.CONSTRUCTION:
        return validate_construction(value)
    if kind is DocumentKind.CONJECTURE:
        return validate_conjecture(value, None)
    return validate_attempt(value)


def _dedupe(violations: list[Violation]) -> list[Violation]:
    seen: set[Violation] = set()
    unique: list[Violation] = []
    for v in violations:
        if v not in seen:
            seen.add(v)
            unique.append(v)
    return unique


def _parse(kind: DocumentKind, data: bytes, strict: bool):
    value, rep = _analyze(kind, data, strict)
    errors = rep.errors + _model_violations(kind, value)
    if strict:
        errors += rep.warnings
    if errors:
        raise CodecError(_dedupe(errors))
    return value


def parse_information(data: bytes, strict: bool = False) -> ProblemInfo:
    """Parse information.xml.  Lenient by default: unknown tags are ignored
    (they become errors under ``strict``); a missing name always fails."""

    return _parse(DocumentKind.INFORMATION, data, strict)


def parse_conjecture(data: bytes) -> Conjecture:
    """Parse conjecture.xml; unknown predicate tags are errors."""

    return _parse(DocumentKind.CONJECTURE, data, True)


def parse_construction(data: bytes) -> Construction:
    """Parse intergeo.xml (supported subset); unknown constraint elements
    become OPAQUE constraints carrying their source bytes verbatim."""

    return _parse(DocumentKind.CONSTRUCTION, data, True)


def parse_proof_info(data: bytes, strict: bool = False) -> ProofAttempt:
    """Parse proofInfo.xml; status text maps case-insensitively."""

    return _parse(DocumentKind.PROOF_INFO, data, strict)


def validate_document(kind: DocumentKind, data: bytes) -> list[Violation]:
    """All structural violations of one document, without parse commitment."""

    value, rep = _analyze(kind, data, True)
    return _dedupe(rep.all() + _model_violations(kind, value))


# ---------------------------------------------------------------------------
# Canonical serialization


def _fmt_float(x: float) -> str:
    # shortest round-trip decimal form; coercion keeps hand-built values
    # with int coordinates byte-identical to parsed ones
    return repr(float(x))


def _fmt_int(x: int) -> str:
    return str(int(x))


def _esc_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _esc_attr(s: str) -> str:
    s = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    return s.replace("\t", "&#9;").replace("\n", "&#10;").replace("\r", "&#13;")


class _Writer:
    def __init__(self) -> None:
        self.parts: list[bytes] = [b'<?xml version="1.0" encoding="UTF-8"?>\n']
        self.depth = 0

    def _tag_open(self, tag: str, attrs: dict[str, str] | None) -> str:
        rendered = ""
        if attrs:
            rendered = "".join(f' {k}="{_esc_attr(v)}"' for k, v in sorted(attrs.items()))
        return f"<{tag}{rendered}"

    def line(self, text: str) -> None:
        self.parts.append(("  " * self.depth + text + "\n").encode("utf-8"))

    def open(self, tag: str, attrs: dict[str, str] | None = None) -> None:
        self.line(self._tag_open(tag, attrs) + ">")
        self.depth += 1

    def close(self, tag: str) -> None:
        self.depth -= 1
        self.line(f"</{tag}>")

    def empty(self, tag: str, attrs: dict[str, str] | None = None) -> None:
        self.line(self._tag_open(tag, attrs) + "/>")

    def leaf(self, tag: str, text: str, attrs: dict[str, str] | None = None) -> None:
        self.line(self._tag_open(tag, attrs) + ">" + _esc_text(text) + f"</{tag}>")

    def payload(self, tag: str, payload: bytes, attrs: dict[str, str] | None = None) -> None:
        if not payload:
            self.empty(tag, attrs)
            return
        prefix = ("  " * self.depth + self._tag_open(tag, attrs) + ">").encode("utf-8")
        self.parts.append(prefix + payload + f"</{tag}>\n".encode("utf-8"))

    def raw(self, element: bytes) -> None:
        self.parts.append(("  " * self.depth).encode("utf-8") + element + b"\n")

    def bytes(self) -> bytes:
        return b"".join(self.parts)


def _require_valid(violations: list[Violation]) -> None:
    # serializers refuse invalid values, mirroring the model violations
    if violations:
        raise CodecError(violations)


def serialize_information(info: ProblemInfo) -> bytes:
    _require_valid(validate_info(info))
    w = _Writer()
    w.open("information")
    w.leaf("name", info.name)
    if info.description:
        w.leaf("description", info.description)
    if info.statement:
        w.payload("statement", info.statement)
    if info.bibrefs:
        w.open("bibrefs")
        for entry in info.bibrefs:
            w.payload("bibentry", entry.payload, {"id": entry.id})
        w.close("bibrefs")
    if info.keywords:
        w.open("keywords")
        for kw in info.keywords:
            w.leaf("keyword", kw)
        w.close("keywords")
    w.close("information")
    return w.bytes()


def _write_term(w: _Writer, t: Term) -> None:
    if isinstance(t, Const):
        w.empty("const", {"value": _fmt_float(t.value)})
    elif isinstance(t, SegmentLength):
        w.leaf("segment_length", f"{t.a} {t.b}")
    elif isinstance(t, (Plus, Mult)):
        tag = "plus" if isinstance(t, Plus) else "mult"
        w.open(tag)
        _write_term(w, t.left)
        _write_term(w, t.right)
        w.close(tag)
    else:
        raise TypeError(f"not a Term: {t!r}")


def _write_predicate(w: _Writer, p: Predicate) -> None:
    if isinstance(p, NotEqual):
        w.leaf("not_equal", f"{p.p} {p.q}")
    elif isinstance(p, NotParallel):
        w.leaf("not_parallel", f"{p.a} {p.b} {p.c} {p.d}")
    elif isinstance(p, Collinear):
        w.leaf("collinear", f"{p.p} {p.q} {p.r}")
    elif isinstance(p, Perpendicular):
        w.leaf("perpendicular", f"{p.a} {p.b} {p.c} {p.d}")
    elif isinstance(p, Parallel):
        w.leaf("parallel", f"{p.a} {p.b} {p.c} {p.d}")
    elif isinstance(p, Midpoint):
        w.leaf("midpoint", f"{p.m} {p.a} {p.b}")
    elif isinstance(p, SameLength):
        w.leaf("same_length", f"{p.a} {p.b} {p.c} {p.d}")
    elif isinstance(p, Harmonic):
        w.leaf("harmonic", f"{p.a} {p.b} {p.c} {p.d}")
    elif isinstance(p, SegmentRatio):
        w.leaf("segment_ratio", f"{p.a} {p.b} {p.c} {p.d}", {"ratio": _fmt_float(p.ratio)})
    elif isinstance(p, Equal):
        w.open("equal")
        _write_term(w, p.left)
        _write_term(w, p.right)
        w.close("equal")
    else:
        raise TypeError(f"not a Predicate: {p!r}")


def serialize_conjecture(c: Conjecture) -> bytes:
    _require_valid(validate_conjecture(c, None))
    w = _Writer()
    w.open("conjecture")
    for section, preds in (("hypothesis", c.hypothesis), ("ndg", c.ndg), ("conclusion", c.conclusion)):
        if not preds:
            continue  # empty sections are omitted entirely
        w.open(section)
        for p in preds:
            _write_predicate(w, p)
        w.close(section)
    w.close("conjecture")
    return w.bytes()


def serialize_construction(k: Construction) -> bytes:
    _require_valid(validate_construction(k))
    w = _Writer()
    w.open("construction")
    if k.elements:
        w.open("elements")
        for e in k.elements:
            attrs = {"id": e.id}
            for name, value in zip(_ELEMENT_ATTRS[e.kind.value], e.coords):
                attrs[name] = _fmt_float(value)
            w.empty(e.kind.value, attrs)
        w.close("elements")
    else:
        w.empty("elements")
    if k.constraints:
        w.open("constraints")
        for c in k.constraints:
            if c.kind is ConstraintKind.OPAQUE:
                w.raw(c.opaque_payload or b"")
                continue
            attrs = {"out": c.output}
            param_attr = _PARAM_ATTRS.get(c.kind)
            if param_attr is not None and c.parameter is not None:
                attrs[param_attr] = _fmt_float(c.parameter)
            if c.inputs:
                w.leaf(c.kind.value, " ".join(c.inputs), attrs)
            else:
                w.empty(c.kind.value, attrs)
        w.close("constraints")
    if k.display:
        w.raw(k.display)
    w.close("construction")
    return w.bytes()


def serialize_proof_info(a: ProofAttempt) -> bytes:
    _require_valid(validate_attempt(a))
    w = _Writer()
    w.open("proof_info")
    w.leaf("prover", a.prover)
    w.leaf("version", a.version)
    w.leaf("method", a.method)
    w.leaf("status", a.status.value)
    lim = a.limits
    if any(v is not None for v in (lim.time_limit_seconds, lim.iterations_limit, lim.memory_limit_mb)):
        w.open("limits")
        if lim.time_limit_seconds is not None:
            w.leaf("time_limit_seconds", _fmt_float(lim.time_limit_seconds))
        if lim.iterations_limit is not None:
            w.leaf("iterations_limit", _fmt_int(lim.iterations_limit))
        if lim.memory_limit_mb is not None:
            w.leaf("memory_limit_mb", _fmt_int(lim.memory_limit_mb))
        w.close("limits")
    meas = a.measures
    if any(
        v is not None
        for v in (meas.cpu_time_seconds, meas.elimination_steps, meas.number_terms_largest_polynomial, meas.proof_steps)
    ):
        w.open("measures")
        if meas.cpu_time_seconds is not None:
            w.leaf("CPU_time", _fmt_float(meas.cpu_time_seconds))
        if meas.elimination_steps is not None:
            w.leaf("elimination_steps", _fmt_int(meas.elimination_steps))
        if meas.number_terms_largest_polynomial is not None:
            w.leaf("number_terms_largest_polynomial", _fmt_int(meas.number_terms_largest_polynomial))
        if meas.proof_steps is not None:
            w.leaf("proof_steps", _fmt_int(meas.proof_steps))
        w.close("measures")
    plat = a.platform
    if any(v is not None for v in (plat.computer_name, plat.clock_speed_mhz, plat.ram_mb, plat.operating_system)):
        w.open("platform")
        if plat.computer_name is not None:
            w.leaf("computer_name", plat.computer_name)
        if plat.clock_speed_mhz is not None:
            w.leaf("clock_speed", _fmt_float(plat.clock_speed_mhz))
        if plat.ram_mb is not None:
            w.leaf("RAM", _fmt_int(plat.ram_mb))
        if plat.operating_system is not None:
            w.leaf("operating_system", plat.operating_system)
        w.close("platform")
    w.close("proof_info")
    return w.bytes()


_SERIALIZERS = {
    DocumentKind.INFORMATION: serialize_information,
    DocumentKind.CONJECTURE: serialize_conjecture,
    DocumentKind.CONSTRUCTION: serialize_construction,
    DocumentKind.PROOF_INFO: serialize_proof_info,
}

_PARSERS = {
    DocumentKind.INFORMATION: parse_information,
    DocumentKind.CONJECTURE: parse_conjecture,
    DocumentKind.CONSTRUCTION: parse_construction,
    DocumentKind.PROOF_INFO: parse_proof_info,
}


def canonicalize(kind: DocumentKind, data: bytes) -> bytes:
    """Serialize-after-parse; idempotent, and the identity on canonical
    documents."""

    return _SERIALIZERS[kind](_PARSERS[kind](data))
