"""Trivalent vertex-transitive graphs: construction, local actions and checks."""

from triact.ball import Ball, ball
from triact.core import (
    Color,
    DeclaredLine,
    EdgeDecoration,
    GraphGenerator,
    Orientation,
    declared_line,
    format_token,
    neighbors,
    parse_token,
    reverse,
    underlying_undirected,
)
from triact.errors import (
    BudgetExceededError,
    ColoringMismatchError,
    ContractionError,
    InvalidTokenError,
    ParameterError,
    PreconditionError,
    TriactError,
    UnsupportedError,
)
from triact.families import FamilySpec, make, parse_family

__all__ = [
    "Ball",
    "BudgetExceededError",
    "Color",
    "ColoringMismatchError",
    "ContractionError",
    "DeclaredLine",
    "EdgeDecoration",
    "FamilySpec",
    "GraphGenerator",
    "InvalidTokenError",
    "Orientation",
    "ParameterError",
    "PreconditionError",
    "TriactError",
    "UnsupportedError",
    "ball",
    "declared_line",
    "format_token",
    "make",
    "neighbors",
    "parse_family",
    "parse_token",
    "reverse",
    "underlying_undirected",
]

__version__ = "0.1.0"
