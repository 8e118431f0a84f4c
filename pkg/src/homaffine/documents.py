"""JSON documents: problem instances, certificates and decision traces.

Problem file (one algebra per file)::

    {"dim": 3, "basis": ["p", "q", "z"],
     "brackets": {"0,1": [[2, "1"]]},
     "levi": [], "nilradical": [0, 1, 2],
     "element": ["0", "0", "1"]}

Rationals are written ``"p/q"``, or ``"p"`` when the denominator is 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .certify import Certificate, EmbeddingCert, SectionCert
from .engine import Verdict
from .linalg import Matrix, Vector, format_rational, parse_rational
from .lie import LeviData, LieAlgebra

PROBLEM_KEYS = ("dim", "basis", "brackets", "levi", "nilradical", "element")


class DocumentError(ValueError):
    """Malformed document; the message names the offending line or field."""


@dataclass(frozen=True)
class ProblemInstance:
    name: str
    algebra: LieAlgebra
    levi_data: LeviData
    element: Vector


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _rational(value: Any, where: str):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _vector(value: Any, where: str, length: int | None = None) -> Vector:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list of rationals")
    if length is not None and len(value) != length:
        raise DocumentError(f"{where}: expected {length} entries, got {len(value)}")
    return tuple(_rational(v, f"{where}[{i}]") for i, v in enumerate(value))


def _index(value: Any, where: str, dim: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer index")
    if not 0 <= value < dim:
        raise DocumentError(f"{where}: index {value} out of range for dim {dim}")
    return value


def problem_from_dict(doc: Any, name: str = "instance", source: str = "<document>") -> ProblemInstance:
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    missing = [k for k in PROBLEM_KEYS if k not in doc]
    if missing:
        raise DocumentError(f"{source}: missing field(s) {', '.join(missing)}")
    extra = sorted(set(doc) - set(PROBLEM_KEYS))
    if extra:
        raise DocumentError(f"{source}: unknown field(s) {', '.join(extra)}")

    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise DocumentError(f"{source}: dim: expected a non-negative integer")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise DocumentError(f"{source}: basis: expected a list of names")
    if len(basis) != dim:
        raise DocumentError(f"{source}: basis: {len(basis)} names for dim {dim}")
    if len(set(basis)) != dim:
        raise DocumentError(f"{source}: basis: names must be distinct")

    raw = doc["brackets"]
    if not isinstance(raw, dict):
        raise DocumentError(f"{source}: brackets: expected an object")
    brackets = {}
    for key, terms in raw.items():
        where = f"{source}: brackets[{key!r}]"
        parts = key.split(",")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise DocumentError(f"{where}: key must be 'i,j'")
        i, j = (int(p) for p in parts)
        if not i < j:
            raise DocumentError(f"{where}: only pairs i < j may appear")
        if j >= dim:
            raise DocumentError(f"{where}: index out of range for dim {dim}")
        if not isinstance(terms, list):
            raise DocumentError(f"{where}: expected a list of [index, rational] pairs")
        parsed = []
        for t, term in enumerate(terms):
            if not isinstance(term, list) or len(term) != 2:
                raise DocumentError(f"{where}[{t}]: expected [index, rational]")
            parsed.append((_index(term[0], f"{where}[{t}][0]", dim),
                           _rational(term[1], f"{where}[{t}][1]")))
        brackets[(i, j)] = parsed

    idx = {}
    for field in ("levi", "nilradical"):
        if not isinstance(doc[field], list):
            raise DocumentError(f"{source}: {field}: expected a list of basis indices")
        idx[field] = [_index(v, f"{source}: {field}[{i}]", dim) for i, v in enumerate(doc[field])]
    element = _vector(doc["element"], f"{source}: element", dim)

    algebra = LieAlgebra(basis, brackets)
    ld = LeviData.from_indices(dim, idx["levi"], idx["nilradical"])
    return ProblemInstance(name, algebra, ld, element)


def load_problem(path: str | Path) -> ProblemInstance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return problem_from_dict(_load_json(text, str(path)), name=path.stem, source=str(path))


def problem_to_dict(p: ProblemInstance) -> dict:
    """Inverse of :func:`problem_from_dict` for coordinate Levi data."""
    g, ld = p.algebra, p.levi_data

    def indices(s) -> list[int]:
        if any(sum(1 for c in v if c) != 1 for v in s.vectors):
            raise ValueError("Levi data is not spanned by basis vectors")
        return list(s.pivots)

    return {
        "dim": g.dim,
        "basis": list(g.basis_names),
        "brackets": {
            f"{i},{j}": [[k, format_rational(c)] for k, c in terms]
            for (i, j), terms in sorted(g.brackets.items())
        },
        "levi": indices(ld.levi),
        "nilradical": indices(ld.nilradical),
        "element": _fmt(p.element),
    }


def _fmt(v) -> list[str]:
    return [format_rational(c) for c in v]


def _fmt_matrix(m: Matrix) -> list[list[str]]:
    return [_fmt(r) for r in m.to_rows()]


def certificate_to_dict(cert: Certificate) -> dict:
    if isinstance(cert, EmbeddingCert):
        return {
            "type": "embedding",
            "conjugators": [_fmt(y) for y in cert.conjugators],
            "final": _fmt(cert.final),
        }
    return {
        "type": "section",
        "level": cert.level,
        "conjugators": [_fmt(y) for y in cert.conjugators],
        "phi": _fmt(cert.phi),
    }


def certificate_from_dict(doc: Any, source: str = "<certificate>") -> Certificate:
    """Read a certificate, or the ``certificate`` field of a trace document."""
    if isinstance(doc, dict) and "certificate" in doc and "type" not in doc:
        doc = doc["certificate"]
        source = f"{source}: certificate"
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: expected an object")
    kind = doc.get("type")
    ys = doc.get("conjugators")
    if not isinstance(ys, list):
        raise DocumentError(f"{source}: conjugators: expected a list")
    conjugators = tuple(_vector(y, f"{source}: conjugators[{i}]") for i, y in enumerate(ys))
    if kind == "embedding":
        if set(doc) != {"type", "conjugators", "final"}:
            raise DocumentError(f"{source}: embedding certificate needs exactly type, conjugators, final")
        return EmbeddingCert(conjugators, _vector(doc["final"], f"{source}: final"))
    if kind == "section":
        if set(doc) != {"type", "level", "conjugators", "phi"}:
            raise DocumentError(f"{source}: section certificate needs exactly type, level, conjugators, phi")
        level = doc["level"]
        if isinstance(level, bool) or not isinstance(level, int):
            raise DocumentError(f"{source}: level: expected an integer")
        return SectionCert(level, conjugators, _vector(doc["phi"], f"{source}: phi"))
    raise DocumentError(f"{source}: type must be 'embedding' or 'section'")


def load_certificate(path: str | Path) -> Certificate:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return certificate_from_dict(_load_json(text, str(path)), source=str(path))


def trace_to_dict(p: ProblemInstance, verdict: Verdict) -> dict:
    levels = []
    for rec in verdict.trace:
        entry: dict[str, Any] = {
            "level": rec.index,
            "quotient_dim": rec.quotient_dim,
            "action": _fmt_matrix(rec.action),
            "image": [_fmt(v) for v in rec.image.vectors],
            "vbar": _fmt(rec.vbar),
            "branch": rec.branch.value,
        }
        if rec.ybar is not None:
            entry["ybar"] = _fmt(rec.ybar)
            entry["y"] = _fmt(rec.y)
        if rec.phi is not None:
            entry["phi"] = _fmt(rec.phi)
        levels.append(entry)
    return {
        "instance": p.name,
        "verdict": verdict.kind.value,
        "element": _fmt(p.element),
        "levels": levels,
        "final": _fmt(verdict.final),
        "certificate": certificate_to_dict(verdict.certificate),
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def corpus_dir() -> Path:
    return Path(str(resources.files("homaffine") / "corpus"))


def corpus_paths() -> list[Path]:
    return sorted(corpus_dir().glob("*.json"))
