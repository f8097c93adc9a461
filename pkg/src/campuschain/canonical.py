"""Canonical JSON: the single byte-exact encoding used everywhere.

Hashing, signing, the wire, and storage all serialize through this module so
that two nodes always produce identical bytes for identical values.  The rules:

* object keys sorted lexicographically, no insignificant whitespace
* integers unquoted; floats are rejected (fixed-point values travel as strings)
* strings as raw UTF-8 (no \\uXXXX escapes for non-ASCII)
* byte-valued fields (hashes, keys, signatures) as lowercase hex strings
"""
from __future__ import annotations

import json
from typing import Any

_SCALARS = (str, int, bool, type(None))


def _check(value: Any) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key {k!r} has no canonical form")
            _check(v)
    elif isinstance(value, (list, tuple)):
        for v in value:
            _check(v)
    elif not isinstance(value, _SCALARS):
        # floats are the important rejection: they have no stable canonical form
        raise TypeError(f"{type(value).__name__} has no canonical form")


def encode(value: Any) -> bytes:
    """Serialize a JSON-compatible tree to canonical bytes."""
    _check(value)
    return json.dumps(
        value, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def decode(data: bytes | str) -> Any:
    """Inverse of encode; plain JSON parse."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return json.loads(data)
