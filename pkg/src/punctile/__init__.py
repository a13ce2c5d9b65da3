"""Punctured lattice substitution tilings and their algebraic machinery.

The package realizes, on exactly computable block substitution tilings,
the inverse semigroup of doubly-pointed pattern classes, its idempotent
filters and characters, the groupoid of germs of the semigroup action on
windows, the translational pair groupoid, and the isomorphism between the
two - every claim checkable as a finite, decidable identity.
"""

from .errors import PunctileError
from .geometry import (
    ORIGIN,
    Patch,
    Tile,
    Vec2,
    Window,
    canonicalize_patch,
    connected_interior,
    find_occurrences,
    patch_union,
    patches_compatible,
    tile,
    translate_patch,
    window_distance,
)
from .substitution import (
    Seed,
    SubstitutionSystem,
    atlas,
    detect_period,
    distinct_windows,
    find_seed,
    fixed_point_window,
    is_admissible,
    load_builtin,
    load_system,
    parse_system,
    supertile,
    window_at,
)

__all__ = [
    "ORIGIN",
    "Patch",
    "PunctileError",
    "Seed",
    "SubstitutionSystem",
    "Tile",
    "Vec2",
    "Window",
    "atlas",
    "canonicalize_patch",
    "connected_interior",
    "detect_period",
    "distinct_windows",
    "find_occurrences",
    "find_seed",
    "fixed_point_window",
    "is_admissible",
    "load_builtin",
    "load_system",
    "parse_system",
    "patch_union",
    "patches_compatible",
    "supertile",
    "tile",
    "translate_patch",
    "window_at",
    "window_distance",
]

__version__ = "0.1.0"
