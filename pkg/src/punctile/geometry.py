"""Exact integer geometry of labeled unit cells, patches and windows.

Everything lives on the Z^2 lattice: a tile is a labeled unit cell whose
puncture is identified with its lattice anchor, a patch is a finite
non-overlapping set of tiles, and a window is a patch known to be correct
out to a declared Chebyshev radius around the origin.  All values are
immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import IncompatibleOverlap, InsufficientWindow


class Vec2(NamedTuple):
    x: int
    y: int

    def __add__(self, other: "Vec2") -> "Vec2":  # type: ignore[override]
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    @property
    def chebyshev(self) -> int:
        return max(abs(self.x), abs(self.y))


ORIGIN = Vec2(0, 0)


class Tile(NamedTuple):
    label: str
    pos: Vec2

    def translate(self, v: Vec2) -> "Tile":
        return Tile(self.label, self.pos + v)


def tile(label: str, x: int, y: int) -> Tile:
    return Tile(label, Vec2(x, y))


def _tile_sort_key(t: Tile) -> tuple[int, int, str]:
    return (t.pos.y, t.pos.x, t.label)


class Patch:
    """A finite set of labeled cells, at most one label per cell.

    Identity is the sorted tile tuple; two patches are equal iff they hold
    exactly the same tiles.  Cell lookups go through a dict so occurrence
    scans stay linear in the pattern size.
    """

    __slots__ = ("tiles", "cells", "_hash")

    def __init__(self, tiles: Iterable[Tile]):
        ordered = tuple(sorted(set(tiles), key=_tile_sort_key))
        if not ordered:
            raise ValueError("a patch is nonempty")
        cells: dict[Vec2, str] = {}
        for t in ordered:
            if t.pos in cells:
                raise IncompatibleOverlap(
                    f"two tiles occupy cell {tuple(t.pos)}: "
                    f"{cells[t.pos]!r} and {t.label!r}"
                )
            cells[t.pos] = t.label
        object.__setattr__(self, "tiles", ordered)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_hash", hash(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("Patch is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Patch) and self.tiles == other.tiles

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def __contains__(self, t: Tile) -> bool:
        return self.cells.get(t.pos) == t.label

    def __repr__(self) -> str:
        inner = ", ".join(f"{t.label}@({t.pos.x},{t.pos.y})" for t in self.tiles)
        return f"Patch[{inner}]"

    def label_at(self, pos: Vec2) -> str | None:
        return self.cells.get(pos)

    def bbox(self) -> tuple[int, int, int, int]:
        """(xmin, ymin, xmax, ymax) over occupied cells, inclusive."""
        xs = [t.pos.x for t in self.tiles]
        ys = [t.pos.y for t in self.tiles]
        return (min(xs), min(ys), max(xs), max(ys))

    def diameter(self) -> int:
        """Chebyshev diameter in cells (a single tile has diameter 1)."""
        xmin, ymin, xmax, ymax = self.bbox()
        return max(xmax - xmin, ymax - ymin) + 1

    def contains_patch(self, other: "Patch") -> bool:
        cells = self.cells
        return all(cells.get(p) == lab for p, lab in other.cells.items())

    def serialize(self) -> str:
        """Canonical text form: one `label x y` line per tile, (y,x) sorted."""
        return "\n".join(f"{t.label} {t.pos.x} {t.pos.y}" for t in self.tiles)

    @staticmethod
    def deserialize(text: str) -> "Patch":
        tiles = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"bad patch line: {raw!r}")
            tiles.append(tile(parts[0], int(parts[1]), int(parts[2])))
        return Patch(tiles)


def translate_patch(patch: Patch, v: Vec2) -> Patch:
    """Shift every tile of `patch` by `v`."""
    return Patch(Tile(t.label, t.pos + v) for t in patch.tiles)


def patches_compatible(p: Patch, q: Patch) -> bool:
    """True iff the two patches agree on every cell they share."""
    if len(q) < len(p):
        p, q = q, p
    qcells = q.cells
    for pos, lab in p.cells.items():
        other = qcells.get(pos)
        if other is not None and other != lab:
            return False
    return True


def patch_union(p: Patch, q: Patch) -> Patch:
    """Union of compatible patches; raises IncompatibleOverlap otherwise."""
    if not patches_compatible(p, q):
        raise IncompatibleOverlap("patches disagree on a shared cell")
    return Patch(p.tiles + q.tiles)


_NEIGHBORS = (Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1))


def connected_interior(patch: Patch) -> bool:
    """True iff the cell set is connected under edge (4-)adjacency.

    For unit squares this is exactly connectivity of the interior of the
    support: corner-only contact does not connect interiors.
    """
    cells = patch.cells
    if len(cells) == 1:
        return True
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        pos = stack.pop()
        for d in _NEIGHBORS:
            nb = pos + d
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def canonical_anchor(patch: Patch) -> Vec2:
    """The minimal cell in (y, x) order; translating it to the origin
    canonicalizes the patch's translation class."""
    best = min(patch.tiles, key=_tile_sort_key)
    return best.pos


def canonicalize_patch(patch: Patch) -> Patch:
    return translate_patch(patch, -canonical_anchor(patch))


def find_occurrences(pattern: Patch, haystack: Patch) -> list[Vec2]:
    """All v with translate_patch(pattern, v) a sub-patch of haystack,
    sorted lexicographically by (y, x)."""
    first = pattern.tiles[0]
    rest = pattern.tiles[1:]
    hcells = haystack.cells
    hits = []
    for t in haystack.tiles:
        if t.label != first.label:
            continue
        v = t.pos - first.pos
        if all(hcells.get(u.pos + v) == u.label for u in rest):
            hits.append(v)
    hits.sort(key=lambda v: (v.y, v.x))
    return hits


def ball_cells(radius: int, center: Vec2 = ORIGIN) -> list[Vec2]:
    """Cells of B_radius(center) = Chebyshev ball, (y, x) ordered."""
    return [
        Vec2(center.x + dx, center.y + dy)
        for dy in range(-radius, radius + 1)
        for dx in range(-radius, radius + 1)
    ]


class Window:
    """A finite, exact approximation of a punctured tiling.

    Holds exactly the tiles of B_radius(0); there is a tile at the origin
    cell (the puncture).  Anything outside the radius is unknown, never
    assumed.
    """

    __slots__ = ("patch", "radius", "_hash")

    def __init__(self, patch: Patch, radius: int):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        trimmed = Patch(t for t in patch.tiles if t.pos.chebyshev <= radius)
        if len(trimmed) != (2 * radius + 1) ** 2:
            raise InsufficientWindow(
                f"patch does not cover B_{radius}(0) completely"
            )
        if ORIGIN not in trimmed.cells:
            raise InsufficientWindow("no puncture tile at the origin cell")
        object.__setattr__(self, "patch", trimmed)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "_hash", hash((trimmed, radius)))

    def __setattr__(self, name, value):
        raise AttributeError("Window is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Window)
            and self.radius == other.radius
            and self.patch == other.patch
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Window(radius={self.radius}, origin={self.origin_label()!r})"

    def origin_tile(self) -> Tile:
        return Tile(self.patch.cells[ORIGIN], ORIGIN)

    def origin_label(self) -> str:
        return self.patch.cells[ORIGIN]

    def restrict(self, radius: int) -> "Window":
        if radius > self.radius:
            raise InsufficientWindow(
                f"cannot grow a window from radius {self.radius} to {radius}"
            )
        return Window(self.patch, radius)

    def recenter(self, pos: Vec2, radius: int) -> "Window":
        """Window of the same tiling content around `pos`; the new radius
        must stay within the truthful region."""
        if pos.chebyshev + radius > self.radius:
            raise InsufficientWindow(
                f"B_{radius}({tuple(pos)}) exceeds truthful radius {self.radius}"
            )
        tiles = [
            Tile(self.patch.cells[pos + d], d)
            for d in ball_cells(radius)
        ]
        return Window(Patch(tiles), radius)

    def contains_patch(self, patch: Patch) -> bool:
        """True iff every tile of `patch` matches window content.

        Raises InsufficientWindow when a queried cell is outside the
        truthful radius: such a query is undecidable, not false.
        """
        cells = self.patch.cells
        r = self.radius
        for pos, lab in patch.cells.items():
            if pos.chebyshev > r:
                raise InsufficientWindow(
                    f"cell {tuple(pos)} is beyond truthful radius {r}"
                )
            if cells[pos] != lab:
                return False
        return True

    def decides_patch(self, patch: Patch) -> bool:
        """True iff the whole patch lies within the truthful radius."""
        r = self.radius
        return all(pos.chebyshev <= r for pos in patch.cells)

    def plaque(self, radius: int, center: Vec2 = ORIGIN) -> Patch:
        """The full B_radius(center) sub-patch, in window coordinates."""
        if center.chebyshev + radius > self.radius:
            raise InsufficientWindow(
                f"B_{radius}({tuple(center)}) exceeds truthful radius {self.radius}"
            )
        cells = self.patch.cells
        return Patch(Tile(cells[p], p) for p in ball_cells(radius, center))


def window_distance(w1: Window, w2: Window) -> Fraction:
    """Lattice tiling metric between two windows, a rational in [0, 1].

    Micro-translations are fixed to zero (punctures are lattice-aligned),
    so the distance is 1/rho where rho is the largest radius at which the
    windows agree.  Disagreement at the origin cell gives 1; agreement on
    the whole comparable region bottoms out at 1/min(R1, R2), a
    truncation-honest floor.
    """
    rmax = min(w1.radius, w2.radius)
    c1, c2 = w1.patch.cells, w2.patch.cells
    if c1[ORIGIN] != c2[ORIGIN]:
        return Fraction(1)
    rho = 0
    for r in range(1, rmax + 1):
        ring = [
            Vec2(x, y)
            for x in range(-r, r + 1)
            for y in range(-r, r + 1)
            if max(abs(x), abs(y)) == r
        ]
        if all(c1[p] == c2[p] for p in ring):
            rho = r
        else:
            break
    if rho == 0:
        return Fraction(1)
    if rho == rmax:
        return Fraction(1, rmax)
    return Fraction(1, rho)
