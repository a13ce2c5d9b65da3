"""Filters, ultrafilters and characters on the idempotent semilattice.

Idempotents are patches marked at the origin; the natural order is
reverse patch containment.  A window induces the filter of its
origin-anchored sub-patches, the associated character answers "does this
patch sit around the origin of the tiling", and the tight action
conjugates characters through the semigroup.

Two universe builders are provided.  `build_universe` materializes every
admissible idempotent within the bounds: the literal truncation, feasible
at small scale and the reference semantics for every oracle test.
`plaque_universe` holds only the full-ball plaques around the origin: a
small cofinal subfamily of the same truncation.  Every ultrafilter or
witness question answered over the plaque family upgrades to the full
truncation because any member's patch is covered by the widest plaque.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    BudgetExceeded,
    DomainViolation,
    InsufficientWindow,
    NotIdempotent,
)
from .geometry import ORIGIN, Patch, Tile, Vec2, Window, translate_patch
from .semigroup import (
    ZERO,
    Element,
    enumerate_patches,
    multiply,
    sorted_elements,
    star,
)
from .substitution import SubstitutionSystem, atlas

DEFAULT_UNIVERSE_BUDGET = 200_000


@dataclass(frozen=True)
class IdempotentUniverse:
    """Deterministically ordered finite truncation of the idempotents."""

    system: SubstitutionSystem = field(compare=False)
    radius: int
    max_tiles: int
    items: tuple[Element, ...]
    exhaustive: bool

    def __post_init__(self):
        object.__setattr__(
            self, "index", {e: i for i, e in enumerate(self.items)}
        )

    def __contains__(self, element: Element) -> bool:
        return element in self.index

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        kind = "exhaustive" if self.exhaustive else "plaque"
        return (
            f"IdempotentUniverse({self.system.name}, r={self.radius}, "
            f"N={self.max_tiles}, {len(self.items)} items, {kind})"
        )


def build_universe(
    system: SubstitutionSystem,
    radius: int,
    max_tiles: int,
    budget: int = DEFAULT_UNIVERSE_BUDGET,
) -> IdempotentUniverse:
    """Every idempotent with patch inside B_radius and at most max_tiles
    tiles, marked at the origin."""
    items = []
    for patch in enumerate_patches(system, radius, max_tiles, budget=budget):
        t = Tile(patch.cells[ORIGIN], ORIGIN)
        items.append(Element(system, t, patch, t))
    return IdempotentUniverse(
        system=system,
        radius=radius,
        max_tiles=max_tiles,
        items=tuple(sorted_elements(items)),
        exhaustive=True,
    )


def plaque_universe(system: SubstitutionSystem, radius: int) -> IdempotentUniverse:
    """The ball-plaque idempotents [t, T(B_rho(x)), t], rho <= radius,
    marked at their center tile.

    This is the cofinal subfamily of the (radius, (2*radius+1)**2)
    truncation that carries all separation and witness content: each of
    its members bounds every idempotent whose patch it covers.
    """
    items: list[Element] = []
    for rho in range(radius + 1):
        center = Vec2(rho, rho)
        for plaque in atlas(system, rho):
            patch = translate_patch(plaque, -center)
            t = Tile(patch.cells[ORIGIN], ORIGIN)
            items.append(Element(system, t, patch, t))
    return IdempotentUniverse(
        system=system,
        radius=radius,
        max_tiles=(2 * radius + 1) ** 2,
        items=tuple(sorted_elements(set(items))),
        exhaustive=False,
    )


# -- filters -------------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    universe: IdempotentUniverse = field(compare=False)
    members: frozenset[Element]

    def __post_init__(self):
        if not self.members:
            raise ValueError("filters are nonempty")

    def __contains__(self, element: Element) -> bool:
        return element in self.members

    def __len__(self) -> int:
        return len(self.members)


def _below(e: Element, f: Element) -> bool:
    """e <= f in the idempotent order: same mark, f's patch inside e's.

    Equivalent to multiply(e, f) == e (checked by the oracle tests);
    stated through containment so filter sweeps stay near-linear.
    """
    return e.t2.label == f.t2.label and e.patch.contains_patch(f.patch)


def xi_partial(patch: Patch, universe: IdempotentUniverse) -> Filter:
    """The filter of universe items whose patch sits inside `patch`
    around the origin.  The patch must cover the origin cell."""
    origin_label = patch.cells.get(ORIGIN)
    if origin_label is None:
        raise ValueError("xi requires a tile at the origin cell")
    members = frozenset(
        item
        for item in universe.items
        if item.t2.label == origin_label and patch.contains_patch(item.patch)
    )
    return Filter(universe=universe, members=members)


def xi_window(window: Window, universe: IdempotentUniverse) -> Filter:
    """xi_T for a window: every universe item decidable inside it."""
    if window.radius < universe.radius:
        raise InsufficientWindow(
            f"window radius {window.radius} cannot decide membership of "
            f"radius-{universe.radius} universe items"
        )
    return xi_partial(window.patch, universe)


def is_filter(members: Iterable[Element], universe: IdempotentUniverse) -> bool:
    """The three filter axioms, checked within the universe."""
    mset = frozenset(members)
    if not mset or ZERO in mset:
        return False
    if any(item not in universe for item in mset):
        return False
    # upward closure
    for e in mset:
        for f in universe.items:
            if _below(e, f) and f not in mset:
                return False
    # downward directedness
    for e in mset:
        for f in mset:
            if not any(_below(z, e) and _below(z, f) for z in mset):
                return False
    return True


@dataclass(frozen=True)
class UltrafilterReport:
    """Maximality verdict with the truncation's honest failure modes."""

    filter_ok: bool
    blockers: tuple[Element, ...]      # outside items extending the filter
    indeterminate: tuple[Element, ...]  # outside items with escaping products

    @property
    def maximal(self) -> bool:
        return self.filter_ok and not self.blockers and not self.indeterminate


def ultrafilter_report(
    members: Iterable[Element], universe: IdempotentUniverse
) -> UltrafilterReport:
    """Standard maximality criterion: every outside item must be killed
    (product zero) by some member.  An outside item whose member products
    are all nonzero and inside the universe genuinely extends the filter;
    one that only reaches outside the universe is indeterminate.
    """
    mset = frozenset(members)
    filter_ok = is_filter(mset, universe)
    blockers: list[Element] = []
    indeterminate: list[Element] = []
    bound = universe.max_tiles
    radius = universe.radius
    for e in universe.items:
        if e in mset:
            continue
        killed = False
        escaped = False
        for f in mset:
            product = multiply(e, f)
            if product == ZERO:
                killed = True
                break
            if product not in universe:
                if len(product.patch) > bound or any(
                    t.pos.chebyshev > radius for t in product.patch
                ):
                    escaped = True
                elif universe.exhaustive:
                    # an in-bounds product missing from an exhaustive
                    # universe would be an enumeration bug
                    raise AssertionError(
                        "in-bounds product escaped an exhaustive universe"
                    )
                else:
                    escaped = True
        if killed:
            continue
        if escaped:
            indeterminate.append(e)
        else:
            blockers.append(e)
    return UltrafilterReport(
        filter_ok=filter_ok,
        blockers=tuple(sorted_elements(blockers)),
        indeterminate=tuple(sorted_elements(indeterminate)),
    )


def is_ultrafilter(members: Iterable[Element], universe: IdempotentUniverse) -> bool:
    return ultrafilter_report(members, universe).maximal


# -- characters ----------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Multiplicative {0,1} map on the universe items.

    `window`, when present, backs the character: it is xi_T's indicator
    and can evaluate any admissible idempotent whose patch lies inside
    the window's truthful region, not just universe items.
    """

    universe: IdempotentUniverse = field(compare=False)
    ones: frozenset[Element]
    window: Window | None = field(default=None, compare=False)

    def __call__(self, e: Element) -> int:
        value = self.evaluate(e)
        if value is None:
            raise InsufficientWindow(
                "character cannot evaluate an element outside the universe"
            )
        return value

    def evaluate(self, e: Element) -> int | None:
        """0/1 when decidable, None when the element escapes both the
        universe and the backing window."""
        if e == ZERO:
            return 0
        if not e.is_idempotent():
            raise NotIdempotent("characters are defined on idempotents")
        if e in self.universe:
            return 1 if e in self.ones else 0
        if self.window is not None:
            try:
                return 1 if self.window.contains_patch(e.patch) else 0
            except InsufficientWindow:
                return None
        return None

    def fingerprint(self) -> str:
        bits = "".join(
            "1" if item in self.ones else "0" for item in self.universe.items
        )
        return hashlib.sha256(bits.encode()).hexdigest()[:16]

    def dump(self) -> str:
        """One `<canonical-element-hash> <0|1>` line per universe item."""
        lines = []
        for item in self.universe.items:
            digest = element_hash(item)
            lines.append(f"{digest} {1 if item in self.ones else 0}")
        return "\n".join(lines)


def element_hash(e: Element) -> str:
    return hashlib.sha256(e.serialize().encode()).hexdigest()[:16]


def character_of(filt: Filter) -> Character:
    return Character(universe=filt.universe, ones=filt.members)


def filter_of(character: Character) -> Filter:
    return Filter(universe=character.universe, members=character.ones)


def is_character(values: Mapping[Element, int], universe: IdempotentUniverse) -> bool:
    """Multiplicativity of a {0,1} table wherever the product is decidable."""
    if not any(values.get(e, 0) for e in universe.items):
        return False
    for e in universe.items:
        for f in universe.items:
            product = multiply(e, f)
            if product == ZERO:
                expected = 0
            elif product in universe:
                expected = values.get(product, 0)
            else:
                continue
            if values.get(e, 0) * values.get(f, 0) != expected:
                return False
    return True


def psi(window: Window, universe: IdempotentUniverse) -> Character:
    """The character of xi_T, window-backed for extended evaluation."""
    filt = xi_window(window, universe)
    return Character(universe=universe, ones=filt.members, window=window)


# -- the tight action ------------------------------------------------------


@dataclass(frozen=True)
class TightImage:
    """Result of conjugating a character: per-item value or indeterminate."""

    universe: IdempotentUniverse = field(compare=False)
    values: Mapping[Element, int]
    indeterminate: frozenset[Element]

    def determinate_items(self) -> list[Element]:
        return [e for e in self.universe.items if e not in self.indeterminate]

    def dump(self) -> str:
        lines = []
        for item in self.universe.items:
            mark = "?" if item in self.indeterminate else str(self.values[item])
            lines.append(f"{element_hash(item)} {mark}")
        return "\n".join(lines)


def theta_tight(s: Element, character: Character, universe: IdempotentUniverse) -> TightImage:
    """The intrinsic action on characters: e -> c(s* e s).

    Conjugates are computed in the full semigroup; entries whose
    conjugate escapes both the universe and the character's backing
    window are marked indeterminate, never guessed.
    """
    if s.is_zero:
        raise DomainViolation("zero acts nowhere on characters")
    domain_idempotent = multiply(star(s), s)
    domain_value = character.evaluate(domain_idempotent)
    if domain_value is None:
        raise DomainViolation(
            "cannot decide c(s*s): conjugate escapes the universe"
        )
    if domain_value != 1:
        raise DomainViolation("character lies outside the domain of theta_s")
    s_star = star(s)
    values: dict[Element, int] = {}
    indeterminate: set[Element] = set()
    for e in universe.items:
        conjugate = multiply(multiply(s_star, e), s)
        value = character.evaluate(conjugate)
        if value is None:
            indeterminate.add(e)
        else:
            values[e] = value
    return TightImage(
        universe=universe,
        values=values,
        indeterminate=frozenset(indeterminate),
    )
