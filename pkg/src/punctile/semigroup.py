"""The inverse semigroup of doubly-pointed pattern classes.

A non-zero element is a translation class of (marked tile, patch, marked
tile); the canonical representative puts the second mark's puncture at the
origin, so class equality is structural equality.  The product glues the
two patches along the shared mark and collapses to the adjoined zero
whenever the glued patch fails to occur in the tiling.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import (
    BudgetExceeded,
    InsufficientWindow,
    NotAdmissible,
    NotConnected,
    NotIdempotent,
    NotInDomain,
    TileNotInPatch,
)
from .geometry import (
    ORIGIN,
    Patch,
    Tile,
    Vec2,
    Window,
    connected_interior,
    patches_compatible,
    translate_patch,
)
from .substitution import SubstitutionSystem, atlas, is_admissible

DEFAULT_ELEMENT_BUDGET = 2_000_000


class Element:
    """Zero, or a canonical doubly-pointed pattern class.

    Canonical: the second marked tile sits at the origin.  Instances are
    immutable; build them through dppc() or the semigroup operations.
    """

    __slots__ = ("system", "t1", "patch", "t2", "_hash")

    def __init__(self, system, t1, patch, t2):
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "patch", patch)
        object.__setattr__(self, "t2", t2)
        key = None if patch is None else (t1, patch.tiles)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @property
    def is_zero(self) -> bool:
        return self.patch is None

    @property
    def displacement(self) -> Vec2:
        """x_s: the vector from the second puncture to the first."""
        if self.is_zero:
            raise ValueError("zero has no displacement")
        return self.t1.pos

    def is_idempotent(self) -> bool:
        return self.patch is not None and self.t1.pos == ORIGIN

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.patch is None or other.patch is None:
            return self.patch is None and other.patch is None
        return (
            self.system is other.system
            and self.t1 == other.t1
            and self.patch == other.patch
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero:
            return "Element<0>"
        return (
            f"Element<{self.t1.label}@({self.t1.pos.x},{self.t1.pos.y})"
            f"|{len(self.patch)} tiles|{self.t2.label}@origin>"
        )

    def serialize(self) -> str:
        """`t1 | patch | t2` on one line, patch tiles ';'-joined."""
        if self.is_zero:
            return "0"
        body = "; ".join(
            f"{t.label} {t.pos.x} {t.pos.y}" for t in self.patch.tiles
        )
        return (
            f"{self.t1.label} {self.t1.pos.x} {self.t1.pos.y} | {body} | "
            f"{self.t2.label} 0 0"
        )

    def sort_key(self) -> tuple:
        if self.is_zero:
            return ((), ())
        return (
            (self.t1.pos.y, self.t1.pos.x, self.t1.label),
            tuple((t.pos.y, t.pos.x, t.label) for t in self.patch.tiles),
        )


ZERO = Element(None, None, None, None)


def _canonical(system: SubstitutionSystem, t1: Tile, patch: Patch, t2: Tile) -> Element:
    """Translate the triple so t2's puncture is the origin.  No checks."""
    if t2.pos != ORIGIN:
        shift = -t2.pos
        patch = translate_patch(patch, shift)
        t1 = t1.translate(shift)
        t2 = t2.translate(shift)
    return Element(system, t1, patch, t2)


def dppc(system: SubstitutionSystem, t1: Tile, patch: Patch, t2: Tile) -> Element:
    """Validated, canonicalized doubly-pointed pattern class."""
    if t1 not in patch:
        raise TileNotInPatch(f"first mark {t1} is not in the patch")
    if t2 not in patch:
        raise TileNotInPatch(f"second mark {t2} is not in the patch")
    if not connected_interior(patch):
        raise NotConnected("patch support has disconnected interior")
    if not is_admissible(system, patch):
        raise NotAdmissible("patch does not occur in the tiling")
    return _canonical(system, t1, patch, t2)


def multiply(a: Element, b: Element) -> Element:
    """Semigroup product; zero absorbs every failure mode."""
    if a.is_zero or b.is_zero:
        return ZERO
    if a.system is not b.system:
        raise ValueError("elements belong to different systems")
    # align b so its first mark coincides with a's second mark (the
    # origin tile); a label mismatch means no aligning translation exists
    if a.t2.label != b.t1.label:
        return ZERO
    shift = -b.t1.pos
    moved = translate_patch(b.patch, shift)
    if not patches_compatible(a.patch, moved):
        return ZERO
    union = Patch(a.patch.tiles + moved.tiles)
    # the factors share the origin tile, so the union stays connected
    assert connected_interior(union)
    if not is_admissible(a.system, union):
        return ZERO
    t2 = b.t2.translate(shift)
    return _canonical(a.system, a.t1, union, t2)


def star(a: Element) -> Element:
    """Involution: swap the marks and recanonicalize."""
    if a.is_zero:
        return ZERO
    return _canonical(a.system, a.t2, a.patch, a.t1)


def leq(e: Element, f: Element) -> bool:
    """Natural partial order on idempotents: e <= f iff e = ef."""
    if not e.is_idempotent() or not f.is_idempotent():
        raise NotIdempotent("leq is defined on idempotents only")
    return multiply(e, f) == e


def theta_omega(s: Element, window: Window) -> Window:
    """The partial bijection T -> T - x_s applied to a window.

    Requires the window to lie in the domain U(P, t2); the result radius
    shrinks by |x_s| so no cell outside the generated region is claimed.
    """
    if s.is_zero:
        raise NotInDomain("zero acts nowhere")
    if not window.contains_patch(s.patch):
        raise NotInDomain("window does not contain the element's patch")
    xs = s.displacement
    new_radius = window.radius - xs.chebyshev
    if new_radius < 0:
        raise InsufficientWindow(
            f"radius {window.radius} cannot absorb displacement {tuple(xs)}"
        )
    return window.recenter(xs, new_radius)


def window_in_domain(window: Window, s: Element) -> bool:
    """True iff the window lies in U(P, t2) for the element's patch."""
    return window.contains_patch(s.patch)


# -- enumeration ---------------------------------------------------------


def _connected_subsets(
    cells: frozenset[Vec2], root: Vec2, max_size: int
) -> Iterator[tuple[Vec2, ...]]:
    """All connected subsets of `cells` containing `root`, each exactly
    once, via ordered-frontier growth."""
    neighbors = {}
    for c in cells:
        neighbors[c] = [
            n
            for n in (Vec2(c.x + 1, c.y), Vec2(c.x - 1, c.y), Vec2(c.x, c.y + 1), Vec2(c.x, c.y - 1))
            if n in cells
        ]

    def rec(current: tuple[Vec2, ...], members: set[Vec2], frontier: list[Vec2], banned: set[Vec2]):
        yield current
        if len(current) == max_size:
            return
        for i, cand in enumerate(frontier):
            new_members = members | {cand}
            new_banned = banned | set(frontier[:i])
            grown = [
                n
                for n in neighbors[cand]
                if n not in new_members and n not in new_banned and n not in frontier[i + 1 :]
            ]
            yield from rec(
                current + (cand,), new_members, frontier[i + 1 :] + grown, new_banned
            )

    yield from rec((root,), {root}, list(neighbors[root]), set())


def enumerate_patches(
    system: SubstitutionSystem,
    bound_radius: int,
    max_tiles: int,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> frozenset[Patch]:
    """All admissible connected patches inside B_bound_radius that cover
    the origin cell and have at most max_tiles tiles.

    Every such patch is a connected subset of some full plaque around the
    origin, so growing subsets inside every atlas plaque from its center
    is exhaustive; admissibility is inherited from the plaque.
    """
    from .substitution import _patch_key

    r = bound_radius
    center = Vec2(r, r)  # atlas plaques are anchored at their min cell
    seen: dict[tuple, Patch] = {}
    adm_cache = system._admissible_cache
    for plaque in sorted(atlas(system, r), key=lambda p: p.tiles):
        cells = frozenset(plaque.cells)
        labels = plaque.cells
        for subset in _connected_subsets(cells, center, max_tiles):
            tiles = tuple(Tile(labels[pos], pos - center) for pos in subset)
            patch_key = tuple(sorted(tiles))
            if patch_key in seen:
                continue
            patch = Patch(tiles)
            # sub-patches of an occurring plaque occur themselves
            adm_cache[_patch_key(patch)] = True
            seen[patch_key] = patch
            if len(seen) > budget:
                raise BudgetExceeded(
                    f"patch enumeration exceeded budget {budget}"
                )
    return frozenset(seen.values())


def enumerate_elements(
    system: SubstitutionSystem,
    bound_radius: int,
    max_tiles: int,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> frozenset[Element]:
    """All canonical non-zero elements whose patch fits in B_bound_radius
    and has at most max_tiles tiles: every marked-tile pair over
    enumerate_patches."""
    elements: set[Element] = set()
    for patch in enumerate_patches(system, bound_radius, max_tiles, budget):
        t2 = Tile(patch.cells[ORIGIN], ORIGIN)
        for t1 in patch.tiles:
            elements.add(Element(system, t1, patch, t2))
            if len(elements) > budget:
                raise BudgetExceeded(
                    f"element enumeration exceeded budget {budget}"
                )
    return frozenset(elements)


def sorted_elements(elements: Iterable[Element]) -> list[Element]:
    return sorted(elements, key=Element.sort_key)
