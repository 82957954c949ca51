"""Zip container packing, unpacking, validation and i2g extraction.

Layout contract (see docs/container.md): information/, construction/,
conjecture/ and proofs/ are always present as directories;
construction/intergeo.xml is the only mandatory file; every proof attempt
lives in proofs/proof<prover><version><method>/.  Packing is byte
deterministic: fixed timestamps, lexicographically sorted entries, deflate
for files above 256 bytes and stored below.

The i2g container is recovered by dropping the three extra directories and
relocating construction/ content to the archive root; intergeo.xml bytes are
never touched by that operation.
"""

from __future__ import annotations

import io
import re
import zipfile

from .errors import CodecError, ContainerError
from .model import (
    Problem,
    ProofAttempt,
    Violation,
    canonicalize_problem,
    is_safe_relative_path,
    validate_attempt,
    validate_problem,
)
from .xml_codec import (
    DocumentKind,
    parse_conjecture,
    parse_construction,
    parse_information,
    parse_proof_info,
    serialize_conjecture,
    serialize_construction,
    serialize_information,
    serialize_proof_info,
    validate_document,
)

__all__ = [
    "add_proof_attempt",
    "canonicalize_container",
    "entries_from_problem",
    "pack",
    "problem_from_entries",
    "read_container_entries",
    "strip_to_i2g",
    "suggested_filename",
    "unpack",
    "validate_container",
    "validate_entries",
]

MANDATORY_DIRS = ("information/", "construction/", "conjecture/", "proofs/")
INTERGEO_PATH = "construction/intergeo.xml"
INFORMATION_PATH = "information/information.xml"
CONJECTURE_PATH = "conjecture/conjecture.xml"
PROOF_INFO_NAME = "proofInfo.xml"

PROOF_DIR_RE = re.compile(r"proof[A-Za-z0-9_.-]+\Z")

_ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)
_DEFLATE_THRESHOLD = 256  # bytes; larger files are deflated, smaller stored
_DEFLATE_LEVEL = 6

# An entry is (path, bytes) for a file or (path ending in '/', None) for a
# directory.
Entry = tuple[str, bytes | None]


# ---------------------------------------------------------------------------
# Deterministic zip I/O


def _write_zip(entries: list[Entry]) -> bytes:
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        for name, data in sorted(entries, key=lambda e: e[0]):
            zi = zipfile.ZipInfo(name, date_time=_ZIP_EPOCH)
            zi.create_system = 3  # unix, pinned for cross-platform identical bytes
            if data is None:
                zi.external_attr = (0o40755 << 16) | 0x10
                zf.writestr(zi, b"", compress_type=zipfile.ZIP_STORED)
            else:
                zi.external_attr = 0o644 << 16
                if len(data) > _DEFLATE_THRESHOLD:
                    zf.writestr(zi, data, compress_type=zipfile.ZIP_DEFLATED, compresslevel=_DEFLATE_LEVEL)
                else:
                    zf.writestr(zi, data, compress_type=zipfile.ZIP_STORED)
    return buf.getvalue()


def _read_zip(data: bytes) -> list[Entry]:
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
    except (zipfile.BadZipFile, ValueError) as exc:
        raise ContainerError("MalformedZip", str(exc)) from exc
    entries: list[Entry] = []
    seen: set[str] = set()
    with zf:
        for info in zf.infolist():
            name = info.filename
            check = name[:-1] if name.endswith("/") else name
            if not is_safe_relative_path(check):
                raise ContainerError("BadPath", f"unsafe entry path {name!r}")
            if name in seen:
                raise ContainerError("DuplicateEntry", f"duplicate entry {name!r}")
            seen.add(name)
            if info.is_dir():
                entries.append((name, None))
            else:
                with zf.open(info) as fh:
                    entries.append((name, fh.read()))
    return entries


def _parent_dirs(path: str) -> list[str]:
    parts = path.split("/")[:-1]
    return [("/".join(parts[: i + 1]) + "/") for i in range(len(parts))]


# ---------------------------------------------------------------------------
# Problem <-> entries


def entries_from_problem(problem: Problem) -> list[Entry]:
    """Container entries of a problem, in canonical order."""

    files: dict[str, bytes] = {}

    def put(path: str, data: bytes) -> None:
        if path in files:
            raise ContainerError("DuplicateEntry", f"path {path!r} produced twice")
        files[path] = data

    if problem.info is not None:
        put(INFORMATION_PATH, serialize_information(problem.info))
    put(INTERGEO_PATH, serialize_construction(problem.construction))
    if problem.conjecture is not None:
        put(CONJECTURE_PATH, serialize_conjecture(problem.conjecture))
    for attempt in problem.proofs:
        base = f"proofs/{attempt.directory_name}/"
        put(base + PROOF_INFO_NAME, serialize_proof_info(attempt))
        for name, data in attempt.outputs:
            put(base + name, data)
    for section in (problem.resources, problem.metadata, problem.private):
        for path, data in section:
            put(path, data)

    dirs = set(MANDATORY_DIRS)
    for path in files:
        dirs.update(_parent_dirs(path))
    entries: list[Entry] = [(d, None) for d in dirs]
    entries.extend(files.items())
    return sorted(entries, key=lambda e: e[0])


def problem_from_entries(entries: list[Entry]) -> Problem:
    """Build a problem from container entries (inverse of
    :func:`entries_from_problem` up to canonical order).

    Lenient about extras: unknown files under known directories and unknown
    top-level entries are carried as resources; proof directories without a
    proofInfo.xml are carried file-by-file.  Strict about the essentials:
    construction/intergeo.xml must exist and nested documents must parse.
    """

    files: dict[str, bytes] = {}
    for name, data in entries:
        if data is None:
            continue
        if name in files:
            raise ContainerError("DuplicateEntry", f"duplicate entry {name!r}")
        files[name] = data

    if INTERGEO_PATH not in files:
        raise ContainerError("MissingIntergeo", f"container lacks {INTERGEO_PATH}")

    construction = parse_construction(files.pop(INTERGEO_PATH))
    info = None
    if INFORMATION_PATH in files:
        info = parse_information(files.pop(INFORMATION_PATH))
    conjecture = None
    if CONJECTURE_PATH in files:
        conjecture = parse_conjecture(files.pop(CONJECTURE_PATH))

    proof_groups: dict[str, dict[str, bytes]] = {}
    resources: list[tuple[str, bytes]] = []
    metadata: list[tuple[str, bytes]] = []
    private: list[tuple[str, bytes]] = []
    for path in sorted(files):
        data = files[path]
        if path.startswith("metadata/"):
            metadata.append((path, data))
        elif path.startswith("private/"):
            private.append((path, data))
        elif path.startswith("proofs/"):
            rest = path[len("proofs/") :]
            dirname, _, inner = rest.partition("/")
            if inner and PROOF_DIR_RE.match(dirname):
                proof_groups.setdefault(dirname, {})[inner] = data
            else:
                resources.append((path, data))
        else:
            resources.append((path, data))

    proofs: list[ProofAttempt] = []
    for dirname in sorted(proof_groups):
        group = proof_groups[dirname]
        if PROOF_INFO_NAME not in group:
            for inner in sorted(group):
                resources.append((f"proofs/{dirname}/{inner}", group[inner]))
            continue
        attempt = parse_proof_info(group.pop(PROOF_INFO_NAME))
        outputs = tuple((inner, group[inner]) for inner in sorted(group))
        proofs.append(
            ProofAttempt(
                prover=attempt.prover,
                version=attempt.version,
                method=attempt.method,
                status=attempt.status,
                limits=attempt.limits,
                measures=attempt.measures,
                platform=attempt.platform,
                outputs=outputs,
            )
        )

    return canonicalize_problem(
        Problem(
            construction=construction,
            info=info,
            conjecture=conjecture,
            proofs=tuple(proofs),
            resources=tuple(sorted(resources)),
            metadata=tuple(metadata),
            private=tuple(private),
        )
    )


# ---------------------------------------------------------------------------
# Public container operations


def pack(problem: Problem) -> bytes:
    """Pack a valid problem into deterministic zip bytes."""

    violations = validate_problem(problem)
    if violations:
        raise ContainerError(
            "InvalidProblem",
            f"problem has {len(violations)} violation(s); first: {violations[0].code} at {violations[0].path}",
            violations,
        )
    return _write_zip(entries_from_problem(problem))


def suggested_filename(problem: Problem, name: str | None = None) -> str:
    """Conventional archive filename problem<name>.zip."""

    if name is None:
        if problem.info is None:
            raise ValueError("problem has no information record; pass an explicit name")
        name = problem.info.name
    return f"problem{name}.zip"


def read_container_entries(data: bytes) -> list[Entry]:
    """Raw (path, bytes) entries of a container, path-checked; directory
    entries carry None."""

    return _read_zip(data)


def unpack(data: bytes) -> Problem:
    """Read a container back into a problem (canonical order)."""

    return problem_from_entries(_read_zip(data))


def canonicalize_container(data: bytes) -> bytes:
    """pack-after-unpack; the identity on canonically packed containers."""

    return pack(unpack(data))


def strip_to_i2g(data: bytes) -> bytes:
    """Drop information/, conjecture/ and proofs/; relocate construction/
    content to the archive root (the i2g layout).  File bytes, in particular
    intergeo.xml, are carried unchanged; idempotent."""

    entries = _read_zip(data)
    files: dict[str, bytes] = {}
    has_intergeo = False
    for name, content in entries:
        if content is None:
            continue
        if name.startswith(("information/", "conjecture/", "proofs/")):
            continue
        if name.startswith("construction/"):
            name = name[len("construction/") :]
        if name == "intergeo.xml":
            has_intergeo = True
        files[name] = content
    if not has_intergeo:
        raise ContainerError("MissingIntergeo", "container lacks construction/intergeo.xml")
    dirs: set[str] = set()
    for path in files:
        dirs.update(_parent_dirs(path))
    out: list[Entry] = [(d, None) for d in dirs]
    out.extend(files.items())
    return _write_zip(out)


def add_proof_attempt(data: bytes, attempt: ProofAttempt) -> bytes:
    """Insert one proof attempt directory; every other entry's content is
    carried unchanged (the archive is rewritten canonically)."""

    violations = validate_attempt(attempt)
    if violations:
        raise ContainerError(
            "InvalidProblem",
            f"attempt has {len(violations)} violation(s); first: {violations[0].code}",
            violations,
        )
    entries = _read_zip(data)
    new_dir = f"proofs/{attempt.directory_name}/"
    existing = {name for name, _ in entries}
    if any(name == new_dir or name.startswith(new_dir) for name in existing):
        raise ContainerError("DuplicateAttempt", f"directory {new_dir!r} already present")
    for name, content in entries:
        if content is None or not name.startswith("proofs/") or not name.endswith("/" + PROOF_INFO_NAME):
            continue
        try:
            other = parse_proof_info(content)
        except CodecError:
            continue
        if other.identity == attempt.identity:
            raise ContainerError(
                "DuplicateAttempt",
                f"attempt {attempt.prover}/{attempt.version}/{attempt.method} already present",
            )
    added: list[Entry] = [(new_dir, None), (new_dir + PROOF_INFO_NAME, serialize_proof_info(attempt))]
    for name, out_data in attempt.outputs:
        added.append((new_dir + name, out_data))
        for parent in _parent_dirs(new_dir + name):
            if parent != new_dir and parent not in existing and all(parent != e[0] for e in added):
                added.append((parent, None))
    return _write_zip(entries + added)


# ---------------------------------------------------------------------------
# Container validation

_KNOWN_TOP_DIRS = ("information/", "construction/", "conjecture/", "proofs/", "metadata/", "resources/", "private/")


def _doc_violations(kind: DocumentKind, entry: str, data: bytes) -> list[Violation]:
    return [Violation(v.code, f"{entry}{v.path}", v.message) for v in validate_document(kind, data)]


def validate_container(data: bytes, i2g: bool = False) -> list[Violation]:
    """Manifest-level plus per-document violations, entry paths in locators.

    With ``i2g`` the stripped layout is checked instead: intergeo.xml at the
    root, none of the three extension directories.
    """

    try:
        entries = _read_zip(data)
    except ContainerError as exc:
        return [Violation(exc.code, "/", str(exc))]
    return validate_entries(entries, i2g)


def validate_entries(entries: list[Entry], i2g: bool = False) -> list[Violation]:
    """validate_container over already-extracted entries (e.g. a directory
    tree mirroring the container layout)."""

    out: list[Violation] = []
    for name, content in entries:
        check = name[:-1] if name.endswith("/") else name
        if not is_safe_relative_path(check):
            out.append(Violation("BadPath", name, f"unsafe entry path {name!r}"))
            return out

    files: dict[str, bytes] = {}
    prefixes: set[str] = set()
    for name, content in entries:
        if content is None:
            prefixes.add(name)
        else:
            files[name] = content
            for parent in _parent_dirs(name):
                prefixes.add(parent)

    if i2g:
        if "intergeo.xml" not in files:
            out.append(Violation("MissingIntergeo", "intergeo.xml", "i2g container lacks a root intergeo.xml"))
        else:
            out.extend(_doc_violations(DocumentKind.CONSTRUCTION, "intergeo.xml", files["intergeo.xml"]))
        for name in sorted(files) + sorted(prefixes):
            if name.startswith(("information/", "conjecture/", "proofs/")):
                out.append(Violation("UnexpectedEntry", name, "extension directories must be stripped from an i2g container"))
        return out

    for d in MANDATORY_DIRS:
        if d not in prefixes:
            out.append(Violation("MissingMandatoryDir", d, f"mandatory directory {d!r} is absent"))
    if INTERGEO_PATH not in files:
        out.append(Violation("MissingIntergeo", INTERGEO_PATH, "the construction document is mandatory"))
    else:
        out.extend(_doc_violations(DocumentKind.CONSTRUCTION, INTERGEO_PATH, files[INTERGEO_PATH]))
    if INFORMATION_PATH in files:
        out.extend(_doc_violations(DocumentKind.INFORMATION, INFORMATION_PATH, files[INFORMATION_PATH]))
    if CONJECTURE_PATH in files:
        out.extend(_doc_violations(DocumentKind.CONJECTURE, CONJECTURE_PATH, files[CONJECTURE_PATH]))

    proof_dirs = sorted(
        {p[len("proofs/") :].split("/", 1)[0] for p in (set(files) | prefixes) if p.startswith("proofs/") and p != "proofs/"}
    )
    triples_seen: set[tuple[str, str, str]] = set()
    for dirname in proof_dirs:
        dir_path = f"proofs/{dirname}/"
        if not PROOF_DIR_RE.match(dirname):
            out.append(Violation("BadProofDirName", dir_path, "proof directories are named proof<GATP><Version><Method>"))
            continue
        info_path = dir_path + PROOF_INFO_NAME
        if info_path not in files:
            continue  # proofInfo.xml itself is optional
        out.extend(_doc_violations(DocumentKind.PROOF_INFO, info_path, files[info_path]))
        try:
            attempt = parse_proof_info(files[info_path])
        except CodecError:
            continue
        if attempt.identity in triples_seen:
            out.append(
                Violation(
                    "DuplicateAttempt",
                    info_path,
                    f"attempt {attempt.prover}/{attempt.version}/{attempt.method} appears in more than one directory",
                )
            )
        triples_seen.add(attempt.identity)
        if attempt.directory_name != dirname:
            out.append(
                Violation(
                    "DirNameMismatch",
                    dir_path,
                    f"directory named {dirname!r} but proofInfo.xml identifies {attempt.directory_name!r}",
                )
            )

    for name in sorted(files):
        top = name.split("/", 1)[0] + "/"
        if top not in _KNOWN_TOP_DIRS and "/" in name:
            out.append(Violation("UnknownEntry", name, f"unknown top-level directory {top!r}"))
        elif "/" not in name:
            out.append(Violation("UnknownEntry", name, "loose file at container root"))
        elif top in ("information/", "conjecture/") and name not in (INFORMATION_PATH, CONJECTURE_PATH):
            out.append(Violation("UnknownEntry", name, f"unexpected file under {top}"))
    return out
