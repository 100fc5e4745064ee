"""Canonical JSON encoding shared by the CLI and the HTTP service.

Both front ends must emit byte-identical documents for identical inputs,
so every response funnels through dump_doc.
"""

from __future__ import annotations

import json

from .errors import ParseError


def dump_doc(doc):
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def load_doc(data):
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def relations_from_doc(doc):
    if not isinstance(doc, dict) or "relations" not in doc:
        raise ParseError("relations document needs a 'relations' key")
    rel = doc["relations"]
    if not isinstance(rel, list):
        raise ParseError("'relations' must be a list of [first, second] pairs")
    out = []
    for i, pair in enumerate(rel):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            raise ParseError(f"relations[{i}] must be a pair of arrow ids")
        out.append((pair[0], pair[1]))
    return out
