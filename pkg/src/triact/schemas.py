"""JSON schemas for the exported documents, as plain dicts.

Validation itself is left to callers (the test suite uses ``jsonschema``).
"""

from __future__ import annotations

_INT = {"type": "integer", "minimum": 0}

BALL = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ball",
    "type": "object",
    "required": ["family", "params", "center", "radius", "vertices", "edges"],
    "properties": {
        "family": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "integer"}},
        "center": {"type": "string"},
        "radius": _INT,
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "token", "depth"],
                "properties": {"index": _INT, "token": {"type": "string"}, "depth": _INT},
                "additionalProperties": False,
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "color"],
                "properties": {
                    "u": _INT,
                    "v": _INT,
                    "color": {"enum": ["none", "red", "blue"]},
                },
                "additionalProperties": False,
            },
        },
        "arcs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to"],
                "properties": {"from": _INT, "to": _INT},
                "additionalProperties": False,
            },
        },
    },
}

ALT_ARCS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "alt-arcs",
    "type": "object",
    "required": ["family", "s", "first_color", "count", "orbit_count", "violations"],
    "properties": {
        "family": {"type": "string"},
        "s": {"type": "integer", "minimum": 1},
        "first_color": {"enum": ["red", "blue"]},
        "count": _INT,
        "orbit_count": _INT,
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["s", "vertices", "colors", "type"],
                "properties": {
                    "s": {"type": "integer", "minimum": 1},
                    "vertices": {"type": "array", "items": {"type": "string"}},
                    "colors": {"type": "array", "items": {"enum": ["red", "blue"]}},
                    "type": {"enum": ["rr", "rb", "br", "bb"]},
                },
            },
        },
    },
}

# every JSON document from the command line carries these
HEADER = {
    "type": "object",
    "required": ["invocation", "limits", "backend"],
    "properties": {
        "invocation": {"type": "string"},
        "backend": {"enum": ["numba", "numpy"]},
        "limits": {
            "type": "object",
            "required": ["vertices", "nodes", "blocks"],
            "properties": {"vertices": _INT, "nodes": _INT, "blocks": _INT},
        },
    },
}


def with_header(schema: dict) -> dict:
    """``schema`` extended with the command-line header fields."""
    out = dict(schema)
    out["required"] = list(schema.get("required", [])) + HEADER["required"]
    out["properties"] = {**schema.get("properties", {}), **HEADER["properties"]}
    return out
