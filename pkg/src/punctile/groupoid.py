"""Germs of the semigroup action on windows, translational pairs, and
the isomorphism between the two groupoids.

A germ is an element together with a window in its domain; germs are
never compared structurally, only through the equivalence the
window-local lemma provides (two marks and a common containing patch).
A translational pair (T - x, T) is stored as the right window plus the
displacement.  The bridge maps are exact at every finite scale: alpha
reads the displacement off the element, its inverse marks the two ends
of a lattice path inside the window.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import (
    InsufficientWindow,
    NotComposable,
    NotInDomain,
    UniverseTooSmall,
    ZeroProduct,
)
from .geometry import ORIGIN, Patch, Tile, Vec2, Window
from .filters import IdempotentUniverse
from .semigroup import ZERO, Element, dppc, multiply, star, theta_omega, window_in_domain


@dataclass(frozen=True)
class Germ:
    """[s, T] at finite scale: an element with a window in U(P, t2)."""

    s: Element
    window: Window

    def __post_init__(self):
        if self.s.is_zero:
            raise NotInDomain("zero has no germs")
        if not window_in_domain(self.window, self.s):
            raise NotInDomain("window is not in the element's domain")


@dataclass(frozen=True)
class RpuncPair:
    """(T - x, T), stored as the right window plus the displacement."""

    source: Window
    displacement: Vec2

    def __post_init__(self):
        if self.displacement.chebyshev > self.source.radius:
            raise InsufficientWindow(
                "displacement leaves the window's truthful region"
            )

    def displaced(self) -> Window:
        """The left component T - x as a window, radius shrunk honestly."""
        x = self.displacement
        return self.source.recenter(x, self.source.radius - x.chebyshev)


def windows_agree(w1: Window, w2: Window) -> bool:
    """Equality on the common truthful radius."""
    r = min(w1.radius, w2.radius)
    return w1.restrict(r) == w2.restrict(r)


# -- germ equivalence ------------------------------------------------------


def germ_equiv_lemma(g1: Germ, g2: Germ) -> bool:
    """Window-local equivalence: equal marks and the union of the two
    patches contained in the first germ's window."""
    if not windows_agree(g1.window, g2.window):
        return False
    if g1.s.t1 != g2.s.t1 or g1.s.t2 != g2.s.t2:
        return False
    return g1.window.contains_patch(g1.s.patch) and g1.window.contains_patch(
        g2.s.patch
    )


def _find_witness(s: Element, t: Element, window: Window, universe: IdempotentUniverse) -> bool:
    """Decide whether some universe idempotent e with window in D_e has
    s*e = t*e.

    Three exact reductions keep this fast.  If the window's full-radius
    plaque is an item, it decides alone: every witness lies above it, and
    right multiplication pushes the identity down.  Otherwise, products
    with window-contained witnesses are nonzero and keep the first marks,
    so unequal first marks rule every witness out; with equal marks, a
    witness is exactly an item inside the window covering every cell where
    the two patches differ.
    """
    plaque_patch = window.plaque(universe.radius)
    lab = window.origin_label()
    maximal = Element(
        universe.system, Tile(lab, ORIGIN), plaque_patch, Tile(lab, ORIGIN)
    )
    if maximal in universe:
        return multiply(s, maximal) == multiply(t, maximal)
    if s.t1 != t.t1:
        return False
    union = Patch(s.patch.tiles + t.patch.tiles)
    t2 = Tile(union.cells[ORIGIN], ORIGIN)
    joined = Element(universe.system, t2, union, t2)
    if joined in universe:
        return True
    diff = set(s.patch.cells) ^ set(t.patch.cells)
    for item in universe.items:
        cells = item.patch.cells
        if all(c in cells for c in diff) and window.contains_patch(item.patch):
            return True
    return False


def germ_equiv_def(
    g1: Germ,
    g2: Germ,
    universe: IdempotentUniverse,
    exhaustive_scan: bool = False,
) -> bool:
    """Definition-level equivalence: some universe idempotent e with the
    window in D_e satisfies s*e = t*e.

    `exhaustive_scan` forces the literal item-by-item search (the slow
    reference semantics); the default uses the exact reductions of
    _find_witness.  A discrepancy against the window-local lemma is
    surfaced as UniverseTooSmall, never swallowed.
    """
    if g1.window.radius < universe.radius:
        raise InsufficientWindow(
            "window cannot decide domain membership of universe items"
        )
    if not windows_agree(g1.window, g2.window):
        return False
    s, t = g1.s, g2.s
    window = g1.window
    if exhaustive_scan:
        found = any(
            window.contains_patch(e.patch)
            and multiply(s, e) == multiply(t, e)
            for e in universe.items
        )
    else:
        found = _find_witness(s, t, window, universe)
    if found:
        return True
    if germ_equiv_lemma(g1, g2):
        raise UniverseTooSmall(
            "lemma-equivalent germs have no witness in this universe"
        )
    return False


# -- groupoid operations ----------------------------------------------------


def composable(g1: Germ, g2: Germ) -> bool:
    """g1 sits where g2's action lands: g1.W = theta(s2, W2) up to the
    common truthful radius."""
    try:
        moved = theta_omega(g2.s, g2.window)
    except (NotInDomain, InsufficientWindow):
        return False
    return windows_agree(g1.window, moved)


def compose(g1: Germ, g2: Germ) -> Germ:
    if not composable(g1, g2):
        raise NotComposable("windows do not match through the action")
    product = multiply(g1.s, g2.s)
    if product == ZERO:
        # composability pins the junction tile, so the product glues
        raise ZeroProduct("composable germs multiplied to zero")
    return Germ(product, g2.window)


def invert(g: Germ) -> Germ:
    return Germ(star(g.s), theta_omega(g.s, g.window))


# -- the isomorphism --------------------------------------------------------


def alpha(g: Germ) -> RpuncPair:
    """[s, T] -> (T - x_s, T): the displacement is read off the element."""
    return RpuncPair(source=g.window, displacement=g.s.displacement)


def _lattice_path(target: Vec2, vertical_first: bool) -> list[Vec2]:
    cells = [ORIGIN]
    x, y = 0, 0
    legs = ("v", "h") if vertical_first else ("h", "v")
    for leg in legs:
        if leg == "h":
            step = 1 if target.x > 0 else -1
            while x != target.x:
                x += step
                cells.append(Vec2(x, y))
        else:
            step = 1 if target.y > 0 else -1
            while y != target.y:
                y += step
                cells.append(Vec2(x, y))
    return cells


def alpha_inv(system, pair: RpuncPair, vertical_first: bool = False) -> Germ:
    """(T - x, T) -> the germ of the path element joining the punctures.

    The connecting patch is the window content along the L-shaped lattice
    path from the origin cell to the displacement cell, horizontal run
    first by default; any containing patch gives an equivalent germ.  The
    system is needed to validate the path element.
    """
    window = pair.source
    x = pair.displacement
    if x.chebyshev > window.radius:
        raise InsufficientWindow("path would leave the truthful region")
    cells = _lattice_path(x, vertical_first)
    content = window.patch.cells
    patch = Patch(Tile(content[c], c) for c in cells)
    t1 = Tile(content[x], x)
    t2 = Tile(content[ORIGIN], ORIGIN)
    element = dppc(system, t1, patch, t2)
    return Germ(element, window)


def rpunc_compose(p1: RpuncPair, p2: RpuncPair) -> RpuncPair:
    """(A, B)(B, C) = (A, C); displacements add."""
    if not windows_agree(p1.source, p2.displaced()):
        raise NotComposable("pair sources do not match")
    return RpuncPair(
        source=p2.source, displacement=p1.displacement + p2.displacement
    )


def rpunc_invert(p: RpuncPair) -> RpuncPair:
    return RpuncPair(source=p.displaced(), displacement=-p.displacement)


# -- basis sets --------------------------------------------------------------


def window_fingerprint(window: Window) -> str:
    text = f"{window.radius}\n{window.patch.serialize()}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class BasisReport:
    """Finite identity standing in for the basis-set homeomorphism."""

    element: Element = field(compare=False)
    marker_tiles: int
    realized: int
    lhs: frozenset[tuple[str, Vec2]]
    rhs: frozenset[tuple[str, Vec2]]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def basis_correspondence(
    s: Element, marker: Patch, windows: list[Window]
) -> BasisReport:
    """Compare alpha(Theta(s, U(marker, t2))) with the graph of the
    translation over the realized windows.

    The marker patch must contain the element's patch (so U(marker, t2)
    is a subset of the element's domain), both anchored at the origin
    mark.
    """
    if not marker.contains_patch(s.patch):
        raise ValueError("marker patch must extend the element's patch")
    if ORIGIN not in marker.cells:
        raise ValueError("marker patch must cover the origin cell")
    lhs = set()
    rhs = set()
    for window in windows:
        if not window.decides_patch(marker):
            raise InsufficientWindow("marker exceeds a window's radius")
        if not window.contains_patch(marker):
            continue
        germ_image = alpha(Germ(s, window))
        lhs.add((window_fingerprint(germ_image.source), germ_image.displacement))
        rhs.add((window_fingerprint(window), s.displacement))
    return BasisReport(
        element=s,
        marker_tiles=len(marker),
        realized=len(rhs),
        lhs=frozenset(lhs),
        rhs=frozenset(rhs),
    )
