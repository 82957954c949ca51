"""Domain model of the i2gatp format.

One problem corresponds to one container and aggregates generic information,
a geometric construction (a straight-line program plus a static initial
instance), an optional conjecture, and any number of proof attempts.  All
types are immutable values; nothing in this module does I/O.

Validation never raises: :func:`validate_problem` returns every invariant
violation as data, each with a stable machine-readable code drawn from the
closed catalogue in ``VIOLATION_CODES`` (documented in docs/violations.md).
"""

from __future__ import annotations

import enum
import math
import re
import xml.parsers.expat
from dataclasses import dataclass

__all__ = [
    "BibEntry",
    "Conjecture",
    "Collinear",
    "Const",
    "Constraint",
    "ConstraintKind",
    "CONSTRAINT_SIGNATURES",
    "Construction",
    "ElementInstance",
    "Equal",
    "GeoKind",
    "Harmonic",
    "Midpoint",
    "Mult",
    "NotEqual",
    "NotParallel",
    "Parallel",
    "Perpendicular",
    "Platform",
    "Plus",
    "Predicate",
    "Problem",
    "ProblemInfo",
    "ProofAttempt",
    "ProofLimits",
    "ProofMeasures",
    "ProofStatus",
    "SameLength",
    "SegmentLength",
    "SegmentRatio",
    "Term",
    "VIOLATION_CODES",
    "Violation",
    "canonicalize_problem",
    "predicate_point_ids",
    "resolve_ids",
    "term_point_ids",
    "validate_attempt",
    "validate_conjecture",
    "validate_construction",
    "validate_info",
    "validate_problem",
]

# Container filename fragment: problem<name>.zip
PROBLEM_NAME_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_-]*\Z")
# prover/version/method compose a proofs/ directory name
ATTEMPT_FIELD_RE = re.compile(r"[A-Za-z0-9_.-]+\Z")
# Element ids appear whitespace-separated in XML text and DSL statements
ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*\Z")


class GeoKind(enum.Enum):
    """Kinds of geometric objects the supported constraint subset produces."""

    POINT = "point"
    LINE = "line"
    CIRCLE = "circle"


# Number of stored coordinates per kind: point (x, y); line homogeneous
# (a, b, c); circle (cx, cy, r).
ELEMENT_ARITY = {GeoKind.POINT: 2, GeoKind.LINE: 3, GeoKind.CIRCLE: 3}


@dataclass(frozen=True)
class ElementInstance:
    """One object of the static initial instance."""

    id: str
    kind: GeoKind
    coords: tuple[float, ...]


class ConstraintKind(enum.Enum):
    """Supported construction steps; everything else is carried as OPAQUE."""

    FREE_POINT = "free_point"
    LINE_THROUGH_TWO_POINTS = "line_through_two_points"
    INTERSECTION_OF_TWO_LINES = "intersection_of_two_lines"
    MIDPOINT_OF_TWO_POINTS = "midpoint_of_two_points"
    CIRCLE_BY_CENTER_AND_POINT = "circle_by_center_and_point"
    PERPENDICULAR_LINE_THROUGH_POINT = "perpendicular_line_through_point"
    PARALLEL_LINE_THROUGH_POINT = "parallel_line_through_point"
    POINT_ON_LINE = "point_on_line"
    POINT_ON_CIRCLE = "point_on_circle"
    OPAQUE = "opaque"


# kind -> (input kinds, output kind, takes a stored real parameter)
CONSTRAINT_SIGNATURES: dict[ConstraintKind, tuple[tuple[GeoKind, ...], GeoKind, bool]] = {
    ConstraintKind.FREE_POINT: ((), GeoKind.POINT, False),
    ConstraintKind.LINE_THROUGH_TWO_POINTS: ((GeoKind.POINT, GeoKind.POINT), GeoKind.LINE, False),
    ConstraintKind.INTERSECTION_OF_TWO_LINES: ((GeoKind.LINE, GeoKind.LINE), GeoKind.POINT, False),
    ConstraintKind.MIDPOINT_OF_TWO_POINTS: ((GeoKind.POINT, GeoKind.POINT), GeoKind.POINT, False),
    ConstraintKind.CIRCLE_BY_CENTER_AND_POINT: ((GeoKind.POINT, GeoKind.POINT), GeoKind.CIRCLE, False),
    ConstraintKind.PERPENDICULAR_LINE_THROUGH_POINT: ((GeoKind.LINE, GeoKind.POINT), GeoKind.LINE, False),
    ConstraintKind.PARALLEL_LINE_THROUGH_POINT: ((GeoKind.LINE, GeoKind.POINT), GeoKind.LINE, False),
    ConstraintKind.POINT_ON_LINE: ((GeoKind.LINE,), GeoKind.POINT, True),
    ConstraintKind.POINT_ON_CIRCLE: ((GeoKind.CIRCLE,), GeoKind.POINT, True),
}


@dataclass(frozen=True)
class Constraint:
    """One straight-line-program step defining ``output`` from ``inputs``.

    OPAQUE constraints keep their original XML element verbatim in
    ``opaque_payload`` (tag name in ``opaque_tag``) and are never evaluated
    numerically; the output id is taken from the element's ``out`` attribute
    so the element/constraint bijection still holds.
    """

    output: str
    kind: ConstraintKind
    inputs: tuple[str, ...] = ()
    parameter: float | None = None
    opaque_tag: str | None = None
    opaque_payload: bytes | None = None


@dataclass(frozen=True)
class Construction:
    """Straight-line program plus its static initial instance.

    ``display`` carries the rendering subtree opaquely (may be empty).
    """

    elements: tuple[ElementInstance, ...]
    constraints: tuple[Constraint, ...]
    display: bytes = b""

    def element_kinds(self) -> dict[str, GeoKind]:
        return {e.id: e.kind for e in self.elements}

    def free_point_ids(self) -> tuple[str, ...]:
        return tuple(
            c.output for c in self.constraints if c.kind is ConstraintKind.FREE_POINT
        )

    def has_opaque(self) -> bool:
        return any(c.kind is ConstraintKind.OPAQUE for c in self.constraints)


# ---------------------------------------------------------------------------
# Conjecture ASTs


class Term:
    """Base class of arithmetic term nodes (conjecture ``equal`` operands)."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Term):
    value: float


@dataclass(frozen=True)
class SegmentLength(Term):
    a: str
    b: str


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mult(Term):
    left: Term
    right: Term


class Predicate:
    """Base class of geometric statement nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class NotEqual(Predicate):
    p: str
    q: str


@dataclass(frozen=True)
class NotParallel(Predicate):
    """Line ab is not parallel to line cd."""

    a: str
    b: str
    c: str
    d: str


@dataclass(frozen=True)
class Equal(Predicate):
    left: Term
    right: Term


@dataclass(frozen=True)
class Collinear(Predicate):
    p: str
    q: str
    r: str


@dataclass(frozen=True)
class Perpendicular(Predicate):
    """Line ab is perpendicular to line cd."""

    a: str
    b: str
    c: str
    d: str


@dataclass(frozen=True)
class Parallel(Predicate):
    """Line ab is parallel to line cd."""

    a: str
    b: str
    c: str
    d: str


@dataclass(frozen=True)
class Midpoint(Predicate):
    """m is the midpoint of segment ab."""

    m: str
    a: str
    b: str


@dataclass(frozen=True)
class SameLength(Predicate):
    """|ab| = |cd|."""

    a: str
    b: str
    c: str
    d: str


@dataclass(frozen=True)
class Harmonic(Predicate):
    """(a, b; c, d) form a harmonic range: signed cross ratio is -1."""

    a: str
    b: str
    c: str
    d: str


@dataclass(frozen=True)
class SegmentRatio(Predicate):
    """|ab| = ratio * |cd|."""

    a: str
    b: str
    c: str
    d: str
    ratio: float


def term_point_ids(t: Term) -> tuple[str, ...]:
    """Point ids referenced by a term, in syntactic order."""

    if isinstance(t, Const):
        return ()
    if isinstance(t, SegmentLength):
        return (t.a, t.b)
    if isinstance(t, (Plus, Mult)):
        return term_point_ids(t.left) + term_point_ids(t.right)
    raise TypeError(f"not a Term: {t!r}")


def predicate_point_ids(p: Predicate) -> tuple[str, ...]:
    """Point ids referenced by a predicate, in syntactic order."""

    if isinstance(p, NotEqual):
        return (p.p, p.q)
    if isinstance(p, Collinear):
        return (p.p, p.q, p.r)
    if isinstance(p, Midpoint):
        return (p.m, p.a, p.b)
    if isinstance(p, (NotParallel, Perpendicular, Parallel, SameLength, Harmonic)):
        return (p.a, p.b, p.c, p.d)
    if isinstance(p, SegmentRatio):
        return (p.a, p.b, p.c, p.d)
    if isinstance(p, Equal):
        return term_point_ids(p.left) + term_point_ids(p.right)
    raise TypeError(f"not a Predicate: {p!r}")


@dataclass(frozen=True)
class Conjecture:
    """Hypotheses and non-degeneracy conditions imply the conclusion
    conjunction; ``conclusion`` is never empty."""

    hypothesis: tuple[Predicate, ...]
    ndg: tuple[Predicate, ...]
    conclusion: tuple[Predicate, ...]

    def all_predicates(self) -> tuple[Predicate, ...]:
        return self.hypothesis + self.ndg + self.conclusion


# ---------------------------------------------------------------------------
# Proof attempt metadata


class ProofStatus(enum.Enum):
    """Outcome of one proof attempt.

    Values are the lowercase strings stored in proofInfo.xml; reading maps
    case-insensitively, so SZS-style capitalized names round into the
    unsolved branch (GaveUp, Timeout, ResourceOut, Error, Unknown) as-is.
    """

    PROVED = "proved"
    DISPROVED = "disproved"
    UNKNOWN = "unknown"
    GAVE_UP = "gaveup"
    TIMEOUT = "timeout"
    RESOURCE_OUT = "resourceout"
    ERROR = "error"


@dataclass(frozen=True)
class ProofLimits:
    """Resource limits imposed on the prover; absent values were not set."""

    time_limit_seconds: float | None = None
    iterations_limit: int | None = None
    memory_limit_mb: int | None = None


@dataclass(frozen=True)
class ProofMeasures:
    """Efficiency measures reported by the prover; absence is distinct
    from a measured zero."""

    cpu_time_seconds: float | None = None
    elimination_steps: int | None = None
    number_terms_largest_polynomial: int | None = None
    proof_steps: int | None = None


@dataclass(frozen=True)
class Platform:
    """Machine the attempt ran on."""

    computer_name: str | None = None
    clock_speed_mhz: float | None = None
    ram_mb: int | None = None
    operating_system: str | None = None


@dataclass(frozen=True)
class ProofAttempt:
    """One prover run; (prover, version, method) is unique per problem and
    composes the proofs/ directory name."""

    prover: str
    version: str
    method: str
    status: ProofStatus
    limits: ProofLimits = ProofLimits()
    measures: ProofMeasures = ProofMeasures()
    platform: Platform = Platform()
    outputs: tuple[tuple[str, bytes], ...] = ()

    @property
    def identity(self) -> tuple[str, str, str]:
        return (self.prover, self.version, self.method)

    @property
    def directory_name(self) -> str:
        return f"proof{self.prover}{self.version}{self.method}"


# ---------------------------------------------------------------------------
# Generic information


@dataclass(frozen=True)
class BibEntry:
    """Bibliographic reference; payload bytes are carried opaquely."""

    id: str
    payload: bytes


@dataclass(frozen=True)
class ProblemInfo:
    """Human metadata; only the name is mandatory.

    ``statement`` is an opaque XML payload (MathML in practice) preserved
    byte-exactly through parse/serialize.
    """

    name: str
    description: str = ""
    statement: bytes = b""
    bibrefs: tuple[BibEntry, ...] = ()
    keywords: tuple[str, ...] = ()


@dataclass(frozen=True)
class Problem:
    """Everything one container holds.

    ``resources``, ``metadata`` and ``private`` are (container-relative
    path, bytes) pairs carried opaquely; ``resources`` also keeps unknown
    files found under the known directories (e.g. construction/preview.pdf)
    at their original paths.
    """

    construction: Construction
    info: ProblemInfo | None = None
    conjecture: Conjecture | None = None
    proofs: tuple[ProofAttempt, ...] = ()
    resources: tuple[tuple[str, bytes], ...] = ()
    metadata: tuple[tuple[str, bytes], ...] = ()
    private: tuple[tuple[str, bytes], ...] = ()


# ---------------------------------------------------------------------------
# Violations


@dataclass(frozen=True)
class Violation:
    """One invariant violation: stable code, XML-path-like locator, text."""

    code: str
    path: str
    message: str


# Closed catalogue; every violation produced anywhere in the package uses
# one of these codes (see docs/violations.md).
VIOLATION_CODES = frozenset(
    {
        "MalformedXml",
        "MissingName",
        "UnknownTag",
        "UnknownPredicate",
        "ArityError",
        "MissingConclusion",
        "MissingElementsPart",
        "DanglingReference",
        "ForwardReference",
        "DuplicateId",
        "DuplicateOutput",
        "MissingElement",
        "UnconstrainedElement",
        "UnresolvedId",
        "KindMismatch",
        "MissingParameter",
        "BadNumber",
        "NonFinite",
        "ZeroLine",
        "NegativeRadius",
        "BadRatio",
        "BadId",
        "BadName",
        "EmptyKeyword",
        "DuplicateKeyword",
        "UnknownStatus",
        "NegativeMeasure",
        "NegativeLimit",
        "NonPositivePlatform",
        "DuplicateAttempt",
        "BadPath",
        "DuplicateEntry",
        "UnknownEntry",
        "UnexpectedEntry",
        "MissingIntergeo",
        "MissingMandatoryDir",
        "BadProofDirName",
        "DirNameMismatch",
        "MalformedZip",
        "InvalidValue",
    }
)


def _violation(out: list[Violation], code: str, path: str, message: str) -> None:
    assert code in VIOLATION_CODES, code
    out.append(Violation(code, path, message))


def is_well_formed_xml(data: bytes) -> bool:
    """True when ``data`` parses as a standalone XML document."""

    parser = xml.parsers.expat.ParserCreate()
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError:
        return False
    return True


def _finite(x: float) -> bool:
    return math.isfinite(x)


def is_safe_relative_path(path: str) -> bool:
    """Forward slashes, relative, no '.'/'..' segments, no backslashes."""

    if not path or path.startswith("/") or "\\" in path:
        return False
    return all(seg not in ("", ".", "..") for seg in path.split("/"))


# ---------------------------------------------------------------------------
# validate_problem


def _validate_info(info: ProblemInfo, out: list[Violation]) -> None:
    if not info.name:
        _violation(out, "MissingName", "/information/name", "problem name is required")
    elif not PROBLEM_NAME_RE.match(info.name):
        _violation(out, "BadName", "/information/name", f"invalid problem name {info.name!r}")
    if info.statement and not is_well_formed_xml(info.statement):
        _violation(out, "MalformedXml", "/information/statement", "statement payload is not well-formed XML")
    seen_bib: set[str] = set()
    for i, entry in enumerate(info.bibrefs):
        path = f"/information/bibrefs/bibentry[{i}]"
        if not ID_RE.match(entry.id):
            _violation(out, "BadId", path, f"invalid bibentry id {entry.id!r}")
        if entry.id in seen_bib:
            _violation(out, "DuplicateId", path, f"duplicate bibentry id {entry.id!r}")
        seen_bib.add(entry.id)
        if entry.payload and not is_well_formed_xml(entry.payload):
            _violation(out, "MalformedXml", path, "bibentry payload is not well-formed XML")
    seen_kw: set[str] = set()
    for i, kw in enumerate(info.keywords):
        path = f"/information/keywords/keyword[{i}]"
        norm = " ".join(kw.split())
        if not norm:
            _violation(out, "EmptyKeyword", path, "keyword is empty")
        elif norm in seen_kw:
            _violation(out, "DuplicateKeyword", path, f"duplicate keyword {norm!r}")
        seen_kw.add(norm)


def _validate_element(e: ElementInstance, path: str, out: list[Violation]) -> None:
    want = ELEMENT_ARITY[e.kind]
    if len(e.coords) != want:
        _violation(out, "ArityError", path, f"{e.kind.value} needs {want} coordinates, got {len(e.coords)}")
        return
    if not all(_finite(c) for c in e.coords):
        _violation(out, "NonFinite", path, "coordinates must be finite")
        return
    if e.kind is GeoKind.LINE and all(c == 0.0 for c in e.coords):
        _violation(out, "ZeroLine", path, "line coefficients are all zero")
    if e.kind is GeoKind.CIRCLE and e.coords[2] < 0.0:
        _violation(out, "NegativeRadius", path, f"circle radius {e.coords[2]} is negative")


def _validate_construction(k: Construction, out: list[Violation]) -> None:
    kinds: dict[str, GeoKind] = {}
    for i, e in enumerate(k.elements):
        path = f"/construction/elements/{e.kind.value}[{i}]"
        if not ID_RE.match(e.id):
            _violation(out, "BadId", path, f"invalid element id {e.id!r}")
        if e.id in kinds:
            _violation(out, "DuplicateId", path, f"duplicate element id {e.id!r}")
        else:
            kinds[e.id] = e.kind
        _validate_element(e, path, out)
    if k.display and not is_well_formed_xml(k.display):
        _violation(out, "MalformedXml", "/construction/display", "display payload is not well-formed XML")

    defined: set[str] = set()
    outputs_seen: set[str] = set()
    for i, c in enumerate(k.constraints):
        tag = c.opaque_tag if c.kind is ConstraintKind.OPAQUE else c.kind.value
        path = f"/construction/constraints/{tag}[{i}]"
        if not ID_RE.match(c.output or ""):
            _violation(out, "BadId", path, f"invalid constraint output id {c.output!r}")
        if c.output in outputs_seen:
            _violation(out, "DuplicateOutput", path, f"id {c.output!r} defined by more than one constraint")
        outputs_seen.add(c.output)
        if c.output not in kinds:
            _violation(out, "MissingElement", path, f"output {c.output!r} has no element instance")
        if c.kind is ConstraintKind.OPAQUE:
            if c.opaque_payload and not is_well_formed_xml(c.opaque_payload):
                _violation(out, "MalformedXml", path, "opaque constraint payload is not well-formed XML")
            defined.add(c.output)
            continue
        in_kinds, out_kind, takes_param = CONSTRAINT_SIGNATURES[c.kind]
        if len(c.inputs) != len(in_kinds):
            _violation(out, "ArityError", path, f"{c.kind.value} takes {len(in_kinds)} inputs, got {len(c.inputs)}")
        else:
            for ref, want_kind in zip(c.inputs, in_kinds):
                if ref not in kinds:
                    _violation(out, "DanglingReference", path, f"input {ref!r} is not an element")
                elif ref not in defined:
                    _violation(out, "ForwardReference", path, f"input {ref!r} is defined later in the program")
                elif kinds[ref] is not want_kind:
                    _violation(out, "KindMismatch", path, f"input {ref!r} is a {kinds[ref].value}, expected {want_kind.value}")
        if c.output in kinds and kinds[c.output] is not out_kind:
            _violation(out, "KindMismatch", path, f"output {c.output!r} is a {kinds[c.output].value}, {c.kind.value} produces a {out_kind.value}")
        if takes_param:
            if c.parameter is None:
                _violation(out, "MissingParameter", path, f"{c.kind.value} requires a parameter")
            elif not _finite(c.parameter):
                _violation(out, "NonFinite", path, "parameter must be finite")
        defined.add(c.output)

    for i, e in enumerate(k.elements):
        if e.id not in outputs_seen:
            _violation(
                out,
                "UnconstrainedElement",
                f"/construction/elements/{e.kind.value}[{i}]",
                f"element {e.id!r} is not the output of any constraint",
            )


def _validate_term(t: Term, kinds: dict[str, GeoKind] | None, path: str, out: list[Violation]) -> None:
    if isinstance(t, Const):
        if not _finite(t.value):
            _violation(out, "NonFinite", path, "constant must be finite")
        return
    if isinstance(t, SegmentLength):
        if kinds is not None:
            for ref in (t.a, t.b):
                _check_point_ref(ref, kinds, path, out)
        return
    _validate_term(t.left, kinds, path, out)
    _validate_term(t.right, kinds, path, out)


def _check_point_ref(ref: str, kinds: dict[str, GeoKind], path: str, out: list[Violation]) -> None:
    if ref not in kinds:
        _violation(out, "UnresolvedId", path, f"id {ref!r} does not resolve in the construction")
    elif kinds[ref] is not GeoKind.POINT:
        _violation(out, "KindMismatch", path, f"id {ref!r} is a {kinds[ref].value}, predicates take points")


def _predicate_tag(p: Predicate) -> str:
    return _PREDICATE_TAGS[type(p)]


_PREDICATE_TAGS: dict[type, str] = {
    NotEqual: "not_equal",
    NotParallel: "not_parallel",
    Equal: "equal",
    Collinear: "collinear",
    Perpendicular: "perpendicular",
    Parallel: "parallel",
    Midpoint: "midpoint",
    SameLength: "same_length",
    Harmonic: "harmonic",
    SegmentRatio: "segment_ratio",
}


def _validate_conjecture(c: Conjecture, k: Construction | None, out: list[Violation]) -> None:
    if not c.conclusion:
        _violation(out, "MissingConclusion", "/conjecture/conclusion", "conclusion must contain at least one predicate")
    kinds = k.element_kinds() if k is not None else None
    for section, preds in (("hypothesis", c.hypothesis), ("ndg", c.ndg), ("conclusion", c.conclusion)):
        for i, p in enumerate(preds):
            path = f"/conjecture/{section}/{_predicate_tag(p)}[{i}]"
            if isinstance(p, Equal):
                _validate_term(p.left, kinds, path, out)
                _validate_term(p.right, kinds, path, out)
            elif kinds is not None:
                for ref in predicate_point_ids(p):
                    _check_point_ref(ref, kinds, path, out)
            if isinstance(p, SegmentRatio):
                if not _finite(p.ratio) or p.ratio < 0.0:
                    _violation(out, "BadRatio", path, f"segment ratio {p.ratio} must be finite and >= 0")


def _validate_attempt(a: ProofAttempt, path: str, out: list[Violation]) -> None:
    for fld, value in (("prover", a.prover), ("version", a.version), ("method", a.method)):
        if not ATTEMPT_FIELD_RE.match(value):
            _violation(out, "BadName", f"{path}/{fld}", f"invalid {fld} {value!r} (composes a directory name)")
    lim = a.limits
    for fld, value in (
        ("time_limit_seconds", lim.time_limit_seconds),
        ("iterations_limit", lim.iterations_limit),
        ("memory_limit_mb", lim.memory_limit_mb),
    ):
        if value is not None and (not _finite(value) or value < 0):
            _violation(out, "NegativeLimit", f"{path}/limits/{fld}", f"{fld} must be finite and >= 0")
    meas = a.measures
    for fld, value in (
        ("cpu_time_seconds", meas.cpu_time_seconds),
        ("elimination_steps", meas.elimination_steps),
        ("number_terms_largest_polynomial", meas.number_terms_largest_polynomial),
        ("proof_steps", meas.proof_steps),
    ):
        if value is not None and (not _finite(value) or value < 0):
            _violation(out, "NegativeMeasure", f"{path}/measures/{fld}", f"{fld} must be finite and >= 0")
    plat = a.platform
    for fld, value in (("clock_speed_mhz", plat.clock_speed_mhz), ("ram_mb", plat.ram_mb)):
        if value is not None and (not _finite(value) or value <= 0):
            _violation(out, "NonPositivePlatform", f"{path}/platform/{fld}", f"{fld} must be finite and > 0")
    seen: set[str] = set()
    for name, _data in a.outputs:
        if not is_safe_relative_path(name):
            _violation(out, "BadPath", f"{path}/outputs/{name}", f"unsafe output filename {name!r}")
        if name in seen:
            _violation(out, "DuplicateEntry", f"{path}/outputs/{name}", f"duplicate output filename {name!r}")
        seen.add(name)


def _validate_carried_files(
    files: tuple[tuple[str, bytes], ...], section: str, prefix: str | None, out: list[Violation]
) -> None:
    seen: set[str] = set()
    for fpath, _data in files:
        loc = f"/{section}/{fpath}"
        if not is_safe_relative_path(fpath):
            _violation(out, "BadPath", loc, f"unsafe path {fpath!r}")
            continue
        if prefix is not None and not fpath.startswith(prefix):
            _violation(out, "UnexpectedEntry", loc, f"path must start with {prefix!r}")
        if fpath in seen:
            _violation(out, "DuplicateEntry", loc, f"duplicate path {fpath!r}")
        seen.add(fpath)


def validate_problem(problem: Problem) -> list[Violation]:
    """Collect every invariant violation across all nested values.

    Pure: identical input yields the identical list, order included.  An
    empty list means the problem is valid.
    """

    out: list[Violation] = []
    if problem.info is not None:
        _validate_info(problem.info, out)
    _validate_construction(problem.construction, out)
    if problem.conjecture is not None:
        _validate_conjecture(problem.conjecture, problem.construction, out)
    seen_triples: set[tuple[str, str, str]] = set()
    for i, attempt in enumerate(problem.proofs):
        path = f"/proofs/attempt[{i}]"
        if attempt.identity in seen_triples:
            _violation(
                out,
                "DuplicateAttempt",
                path,
                f"duplicate attempt {attempt.prover}/{attempt.version}/{attempt.method}",
            )
        seen_triples.add(attempt.identity)
        _validate_attempt(attempt, path, out)
    _validate_carried_files(problem.resources, "resources", None, out)
    _validate_carried_files(problem.metadata, "metadata", "metadata/", out)
    _validate_carried_files(problem.private, "private", "private/", out)
    return out


def validate_info(info: ProblemInfo) -> list[Violation]:
    """Violations of the generic-information invariants alone."""

    out: list[Violation] = []
    _validate_info(info, out)
    return out


def validate_construction(k: Construction) -> list[Violation]:
    """Violations of the construction invariants alone (ids, arities,
    kinds, straight-line order, element/constraint bijection)."""

    out: list[Violation] = []
    _validate_construction(k, out)
    return out


def validate_conjecture(c: Conjecture, k: Construction | None = None) -> list[Violation]:
    """Violations of the conjecture invariants; id resolution is checked
    only when a construction is supplied."""

    out: list[Violation] = []
    _validate_conjecture(c, k, out)
    return out


def validate_attempt(a: ProofAttempt, prefix: str = "/proof_info") -> list[Violation]:
    """Violations of one proof attempt's invariants."""

    out: list[Violation] = []
    _validate_attempt(a, prefix, out)
    return out


# ---------------------------------------------------------------------------
# Conjecture / construction reference resolution


def resolve_ids(conjecture: Conjecture, construction: Construction) -> list[tuple[str, GeoKind]]:
    """Each distinct id used by the conjecture with its construction kind.

    Order follows first use (hypothesis, then ndg, then conclusion).  Raises
    :class:`~i2gatp.errors.UnresolvedIdError` on a missing id and
    :class:`~i2gatp.errors.KindMismatchError` when a predicate references a
    non-point element.
    """

    from .errors import KindMismatchError, UnresolvedIdError

    kinds = construction.element_kinds()
    resolved: list[tuple[str, GeoKind]] = []
    seen: set[str] = set()
    for p in conjecture.all_predicates():
        for ref in predicate_point_ids(p):
            if ref in seen:
                continue
            if ref not in kinds:
                raise UnresolvedIdError(ref)
            if kinds[ref] is not GeoKind.POINT:
                raise KindMismatchError(ref, GeoKind.POINT.value, kinds[ref].value)
            seen.add(ref)
            resolved.append((ref, kinds[ref]))
    return resolved


def canonicalize_problem(p: Problem) -> Problem:
    """Canonical-order twin of ``p``: proof attempts sorted by identity,
    attempt outputs and carried files sorted by path.  Semantic content is
    untouched; unpack(pack(p)) equals canonicalize_problem(p)."""

    proofs = tuple(
        ProofAttempt(
            prover=a.prover,
            version=a.version,
            method=a.method,
            status=a.status,
            limits=a.limits,
            measures=a.measures,
            platform=a.platform,
            outputs=tuple(sorted(a.outputs, key=lambda kv: kv[0])),
        )
        for a in sorted(p.proofs, key=lambda a: a.identity)
    )
    return Problem(
        construction=p.construction,
        info=p.info,
        conjecture=p.conjecture,
        proofs=proofs,
        resources=tuple(sorted(p.resources, key=lambda kv: kv[0])),
        metadata=tuple(sorted(p.metadata, key=lambda kv: kv[0])),
        private=tuple(sorted(p.private, key=lambda kv: kv[0])),
    )
