"""Reading and writing the ``rado-complex/v1`` JSON document.

The canonical form is a single line::

    {"format":"rado-complex/v1","vertices":["1","2"],"facets":[["1","2"]]}

Labels are decimal strings so that arbitrarily large integers survive any
JSON consumer.  Vertices are sorted numerically and facets lexicographically
(as integer tuples), which makes ``dumps(loads(text)) == text`` for every
canonical document.
"""

from __future__ import annotations

import json
import re
from decimal import Decimal
from pathlib import Path

from rado.core import Complex, check_simplex, facets, from_facets, label_text, materialize
from rado.errors import ValidationError

FORMAT = "rado-complex/v1"
_DECIMAL = re.compile(r"[1-9][0-9]*\Z")


def _label(token) -> int:
    if isinstance(token, bool):
        raise ValidationError(f"bad vertex label {token!r}")
    if isinstance(token, int):
        if token < 1:
            raise ValidationError(f"bad vertex label {token!r}")
        return token
    if not isinstance(token, str) or not _DECIMAL.match(token):
        raise ValidationError(f"vertex labels must be positive decimal strings, got {token!r}")
    return int(token) if len(token) < 4000 else int(Decimal(token))


def to_document(X) -> dict:
    X = materialize(X)
    fs = sorted(facets(X))
    return {
        "format": FORMAT,
        "vertices": [label_text(v) for v in sorted(X.vertices)],
        "facets": [[label_text(a) for a in f] for f in fs],
    }


def dumps(X) -> str:
    return json.dumps(to_document(X), separators=(",", ":")) + "\n"


def from_document(doc, *, strict: bool = True) -> Complex:
    """Build a complex from a parsed document.

    With ``strict=False`` the ``format`` and ``vertices`` keys may be
    omitted, which is convenient for complexes given inline on the command
    line.
    """
    if not isinstance(doc, dict):
        raise ValidationError("complex document must be a JSON object")
    fmt = doc.get("format")
    if fmt is None and strict:
        raise ValidationError("missing 'format' key")
    if fmt is not None and fmt != FORMAT:
        raise ValidationError(f"unsupported format {fmt!r}")
    raw_facets = doc.get("facets")
    if not isinstance(raw_facets, list):
        raise ValidationError("'facets' must be a list")
    fs = []
    for f in raw_facets:
        if not isinstance(f, list):
            raise ValidationError("each facet must be a list of labels")
        fs.append(check_simplex(_label(t) for t in f))
    X = from_facets(fs)
    if "vertices" in doc:
        verts = doc["vertices"]
        if not isinstance(verts, list):
            raise ValidationError("'vertices' must be a list")
        declared = {_label(t) for t in verts}
        if len(declared) != len(verts):
            raise ValidationError("duplicate entries in 'vertices'")
        extra = declared - X.vertices
        if extra:
            # isolated vertices given only in the vertex list
            X = Complex(X.vertices | extra, X.simplexes | {(v,) for v in extra}, check=False)
        if X.vertices != declared:
            raise ValidationError("facets use vertices missing from 'vertices'")
    elif strict:
        raise ValidationError("missing 'vertices' key")
    return X


def loads(text: str, *, strict: bool = True) -> Complex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
    return from_document(doc, strict=strict)


def read(path) -> Complex:
    return loads(Path(path).read_text())


def write(X, path) -> None:
    Path(path).write_text(dumps(X))
