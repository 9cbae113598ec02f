"""Exact construction of the Fibonacci space-filling curve on the unit square."""
from .curve import (
    EvalResult,
    PartitionLevel,
    PreimageResult,
    connectedness_check,
    continuity_modulus,
    evaluate,
    locate,
    partition,
    preimage,
)
from .export import Polyline, polygon, tessellate, to_csv, to_json, to_svg
from .goldenfield import GoldenInt, GoldenRat, Point2, Rect, fibonacci, phi_pow
from .prototiles import ALL_LABELS, Label
from .solver import DecorationSystem, solve_decorations
from .substitution import (
    Patch,
    count_matrix,
    dominant_eigenvalue,
    nu_word,
    rule_omega,
    supertile,
)

__version__ = "0.1.0"
