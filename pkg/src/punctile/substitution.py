"""Block substitution systems on labeled unit cells.

A system replaces each labeled cell by a factor x factor block of labeled
cells.  Supertiles, fixed-point windows around the origin, patch
admissibility (occurrence in the tiling), the r-atlas and period detection
are all exact, array-backed computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path as FsPath

import numpy as np

from .errors import (
    DepthTooLarge,
    MalformedRule,
    NoSaturation,
    NoSeed,
    NotPrimitive,
)
from .geometry import ORIGIN, Patch, Tile, Vec2, Window, ball_cells

DEFAULT_CELL_BUDGET = 1 << 24
DEFAULT_MAX_DEPTH = 16


@dataclass(frozen=True)
class Seed:
    """Self-reproducing 2x2 block of cells around the origin corner.

    quad = (c_mm, c_pm, c_mp, c_pp) are the labels at cells (-1,-1),
    (0,-1), (-1,0), (0,0).  Applying the rule `period` times and
    restricting to the inner 2x2 corner block reproduces the quad, so
    iterating the substitution on it yields nested windows of one tiling.
    """

    quad: tuple[str, str, str, str]
    period: int


class SubstitutionSystem:
    """A primitive block substitution over a finite label set."""

    def __init__(
        self,
        name: str,
        labels: tuple[str, ...],
        factor: int,
        rule: dict[str, tuple[tuple[str, ...], ...]],
        cell_budget: int = DEFAULT_CELL_BUDGET,
    ):
        if factor < 2:
            raise MalformedRule(f"factor must be >= 2, got {factor}")
        if len(set(labels)) != len(labels) or not labels:
            raise MalformedRule("labels must be nonempty and distinct")
        for lab in labels:
            if lab not in rule:
                raise MalformedRule(f"rule missing for label {lab!r}")
            rows = rule[lab]
            if len(rows) != factor or any(len(r) != factor for r in rows):
                raise MalformedRule(
                    f"rule for {lab!r} is not a {factor}x{factor} block"
                )
            for row in rows:
                for cell in row:
                    if cell not in labels:
                        raise MalformedRule(
                            f"rule for {lab!r} uses unknown label {cell!r}"
                        )
        self.name = name
        self.labels = labels
        self.factor = factor
        self.rule = {lab: tuple(tuple(r) for r in rule[lab]) for lab in labels}
        self.cell_budget = cell_budget
        self.label_index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        # rule_array[a, dy, dx] = label index; dy = 0 is the bottom row
        arr = np.zeros((n, factor, factor), dtype=np.int16)
        for lab, rows in self.rule.items():
            for dy, row in enumerate(rows):
                for dx, cell in enumerate(row):
                    arr[self.label_index[lab], dy, dx] = self.label_index[cell]
        self.rule_array = arr
        self.matrix = self._abelianization()
        self.primitivity_power = self._check_primitive()
        self._supertile_arrays: dict[tuple[int, int], np.ndarray] = {}
        self._admissible_cache: dict = {}
        self._atlas_cache: dict[int, tuple[tuple[Patch, ...], int]] = {}
        self._seed: Seed | None = None
        self._master: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"SubstitutionSystem({self.name!r}, labels={self.labels})"

    def _abelianization(self) -> np.ndarray:
        """M[a][b] = multiplicity of b in the block of a."""
        n = len(self.labels)
        m = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            idx, counts = np.unique(self.rule_array[a], return_counts=True)
            m[a, idx] = counts
        return m

    def _check_primitive(self) -> int:
        n = len(self.labels)
        power = np.eye(n, dtype=object)
        m = self.matrix.astype(object)
        for k in range(1, n * n + 1):
            power = power @ m
            if (np.asarray(power, dtype=object) > 0).all():
                return k
        raise NotPrimitive(
            f"substitution matrix of {self.name!r} has no positive power "
            f"up to exponent {n * n}"
        )

    # -- supertiles ---------------------------------------------------

    def supertile_array(self, label: str, depth: int) -> np.ndarray:
        """Label-index array of the depth-fold expansion of one cell.

        Index [y, x]; both run over [0, factor**depth).
        """
        if depth < 0:
            raise ValueError("depth must be >= 0")
        side = self.factor**depth
        if side * side > self.cell_budget:
            raise DepthTooLarge(
                f"supertile at depth {depth} needs {side * side} cells, "
                f"budget is {self.cell_budget}"
            )
        key = (self.label_index[label], depth)
        cached = self._supertile_arrays.get(key)
        if cached is None:
            if depth == 0:
                cached = np.array([[self.label_index[label]]], dtype=np.int16)
            else:
                cached = self.expand(self.supertile_array(label, depth - 1))
            self._supertile_arrays[key] = cached
        return cached

    def expand(self, array: np.ndarray, steps: int = 1) -> np.ndarray:
        """Apply the block rule to every cell of a label-index array."""
        out = array
        lam = self.factor
        for _ in range(steps):
            h, w = out.shape
            if h * w * lam * lam > self.cell_budget:
                raise DepthTooLarge(
                    f"expansion to {h * lam}x{w * lam} exceeds cell budget"
                )
            blocks = self.rule_array[out]  # (h, w, lam, lam)
            out = blocks.transpose(0, 2, 1, 3).reshape(h * lam, w * lam)
        return out


def load_system(path: str | FsPath, cell_budget: int = DEFAULT_CELL_BUDGET) -> SubstitutionSystem:
    """Load and validate a substitution system from a rules file."""
    text = FsPath(path).read_text(encoding="utf-8")
    return parse_system(text, cell_budget=cell_budget)


def parse_system(text: str, cell_budget: int = DEFAULT_CELL_BUDGET) -> SubstitutionSystem:
    """Parse the line-oriented rules format.

    Fields: `name <id>`, `factor <int>`, `labels <l1> <l2> ...`, then one
    `rule <label>` section per label followed by factor rows of factor
    labels, written top row first.
    """
    name = None
    factor = None
    labels: tuple[str, ...] | None = None
    rules: dict[str, list[tuple[str, ...]]] = {}
    current: list[tuple[str, ...]] | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "name" and len(parts) == 2:
            name = parts[1]
            current = None
        elif head == "factor" and len(parts) == 2:
            try:
                factor = int(parts[1])
            except ValueError:
                raise MalformedRule(f"bad factor: {parts[1]!r}") from None
            current = None
        elif head == "labels":
            labels = tuple(parts[1:])
            current = None
        elif head == "rule" and len(parts) == 2:
            if parts[1] in rules:
                raise MalformedRule(f"duplicate rule for {parts[1]!r}")
            current = []
            rules[parts[1]] = current
        elif current is not None:
            current.append(tuple(parts))
        else:
            raise MalformedRule(f"unexpected line: {raw!r}")
    if name is None or factor is None or labels is None:
        raise MalformedRule("config must declare name, factor and labels")
    # rows arrive top-first; store bottom-first so index dy is the y offset
    rule = {lab: tuple(reversed(rows)) for lab, rows in rules.items()}
    extra = set(rule) - set(labels)
    if extra:
        raise MalformedRule(f"rules for undeclared labels: {sorted(extra)}")
    return SubstitutionSystem(name, labels, factor, rule, cell_budget=cell_budget)


def supertile(system: SubstitutionSystem, label: str, depth: int) -> Patch:
    """The depth-fold supertile of a label, anchored at (0, 0)."""
    arr = system.supertile_array(label, depth)
    return array_to_patch(system, arr, Vec2(0, 0))


def array_to_patch(system: SubstitutionSystem, arr: np.ndarray, anchor: Vec2) -> Patch:
    labels = system.labels
    h, w = arr.shape
    return Patch(
        Tile(labels[arr[y, x]], Vec2(anchor.x + x, anchor.y + y))
        for y in range(h)
        for x in range(w)
    )


# -- seeds and fixed-point windows -------------------------------------


def _quad_map(system: SubstitutionSystem) -> dict[tuple[int, ...], tuple[int, ...]]:
    """One substitution step on origin-corner quads, as index tuples.

    Quad order is (c_mm, c_pm, c_mp, c_pp) for cells (-1,-1), (0,-1),
    (-1,0), (0,0); each component comes from the corner of its block that
    faces the origin.
    """
    lam = system.factor
    ra = system.rule_array
    out = {}
    for quad in _admissible_quads(system):
        mm, pm, mp, pp = quad
        out[quad] = (
            int(ra[mm, lam - 1, lam - 1]),
            int(ra[pm, lam - 1, 0]),
            int(ra[mp, 0, lam - 1]),
            int(ra[pp, 0, 0]),
        )
    return out


def _admissible_quads(system: SubstitutionSystem) -> list[tuple[int, ...]]:
    """All 2x2 blocks occurring in supertiles, as (mm, pm, mp, pp) index
    quads, found by scanning increasing depths until stable."""
    prev: frozenset[tuple[int, ...]] | None = None
    for depth in range(2, DEFAULT_MAX_DEPTH):
        found = set()
        for label in system.labels:
            a = system.supertile_array(label, depth)
            quads = np.stack(
                [a[:-1, :-1], a[:-1, 1:], a[1:, :-1], a[1:, 1:]], axis=-1
            ).reshape(-1, 4)
            for q in np.unique(quads, axis=0):
                found.add(tuple(int(v) for v in q))
        cur = frozenset(found)
        if cur == prev:
            return sorted(cur)
        prev = cur
    raise NoSaturation("2x2 block census did not stabilize")


def find_seed(system: SubstitutionSystem) -> Seed:
    """Least admissible quad refixed by some power <= 4 of the quad map."""
    if system._seed is not None:
        return system._seed
    step = _quad_map(system)
    quads = sorted(step)
    for period in range(1, 5):
        for quad in quads:
            image = quad
            for _ in range(period):
                image = step[image]
            if image == quad:
                names = tuple(system.labels[i] for i in quad)
                seed = Seed(quad=names, period=period)
                system._seed = seed
                return seed
    raise NoSeed(
        f"no 2x2 block of {system.name!r} is refixed by "
        "a substitution power <= 4"
    )


def fixed_point_array(system: SubstitutionSystem, radius: int) -> np.ndarray:
    """Label-index array of the fixed-point tiling on B_radius(0).

    Returned array has side 2*radius + 1 and index [y + radius, x + radius]
    for cell (x, y).
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    cached = system._master.get(radius)
    if cached is not None:
        return cached
    seed = find_seed(system)
    idx = [system.label_index[lab] for lab in seed.quad]
    # rows bottom-first: row 0 holds cells y = -1
    arr = np.array([[idx[0], idx[1]], [idx[2], idx[3]]], dtype=np.int16)
    half = 1  # cells span [-half, half)
    while half < radius + 1:
        arr = system.expand(arr, steps=seed.period)
        half *= system.factor**seed.period
    # cell (x, y) sits at arr[y + half, x + half]
    lo = half - radius
    hi = half + radius + 1
    out = np.ascontiguousarray(arr[lo:hi, lo:hi])
    system._master[radius] = out
    return out


def fixed_point_window(system: SubstitutionSystem, radius: int) -> Window:
    """Finite truncation of the seed fixed point, trimmed to B_radius(0)."""
    arr = fixed_point_array(system, radius)
    patch = array_to_patch(system, arr, Vec2(-radius, -radius))
    return Window(patch, radius)


# -- admissibility ------------------------------------------------------


def _patch_key(patch: Patch) -> tuple:
    """Translation-canonical hash key: offsets from the (y, x)-least cell."""
    t0 = patch.tiles[0]
    return tuple(
        (t.pos.y - t0.pos.y, t.pos.x - t0.pos.x, t.label) for t in patch.tiles
    )


def _occurs_in_array(system: SubstitutionSystem, patch: Patch, arr: np.ndarray) -> bool:
    xmin, ymin, xmax, ymax = patch.bbox()
    h = ymax - ymin + 1
    w = xmax - xmin + 1
    ah, aw = arr.shape
    if h > ah or w > aw:
        return False
    valid = np.ones((ah - h + 1, aw - w + 1), dtype=bool)
    for t in patch.tiles:
        dy = t.pos.y - ymin
        dx = t.pos.x - xmin
        li = system.label_index[t.label]
        valid &= arr[dy : dy + ah - h + 1, dx : dx + aw - w + 1] == li
        if not valid.any():
            return False
    return True


def occurrence_anchors(
    system: SubstitutionSystem, patch: Patch, arr: np.ndarray
) -> list[tuple[int, int]]:
    """(row, col) anchors of the patch's bbox-min cell inside an array."""
    xmin, ymin, xmax, ymax = patch.bbox()
    h = ymax - ymin + 1
    w = xmax - xmin + 1
    ah, aw = arr.shape
    if h > ah or w > aw:
        return []
    valid = np.ones((ah - h + 1, aw - w + 1), dtype=bool)
    for t in patch.tiles:
        dy = t.pos.y - ymin
        dx = t.pos.x - xmin
        li = system.label_index[t.label]
        valid &= arr[dy : dy + ah - h + 1, dx : dx + aw - w + 1] == li
    return [(int(r), int(c)) for r, c in np.argwhere(valid)]


def _covering_depth(factor: int, size: int) -> int:
    """Least k with factor**k >= size, by exact integer arithmetic."""
    k = 0
    side = 1
    while side < size:
        side *= factor
        k += 1
    return k


def admissibility_depth(system: SubstitutionSystem, patch: Patch) -> int:
    """Scan depth: covering depth of the patch diameter plus a 2-level
    margin for occurrences that straddle supertile boundaries."""
    return _covering_depth(system.factor, patch.diameter()) + 2


def is_admissible(system: SubstitutionSystem, patch: Patch, depth: int | None = None) -> bool:
    """True iff the patch occurs, up to translation, in the tiling.

    Decided by scanning the depth-k supertile of every label; occurrence
    in a supertile implies occurrence in the tiling, and completeness of
    the default margin is validated by the saturation checks.
    """
    key = _patch_key(patch)
    if depth is None:
        cached = system._admissible_cache.get(key)
        if cached is not None:
            return cached
        depth = admissibility_depth(system, patch)
        result = any(
            _occurs_in_array(system, patch, system.supertile_array(lab, depth))
            for lab in system.labels
        )
        system._admissible_cache[key] = result
        return result
    return any(
        _occurs_in_array(system, patch, system.supertile_array(lab, depth))
        for lab in system.labels
    )


# -- atlas --------------------------------------------------------------


def atlas(system: SubstitutionSystem, radius: int) -> frozenset[Patch]:
    """All B_radius plaques of the tiling up to translation.

    Scans supertiles of increasing depth until two consecutive depths
    yield the same plaque set; each plaque is anchored with its (y, x)
    least cell at the origin.
    """
    return frozenset(atlas_with_depth(system, radius)[0])


def atlas_with_depth(system: SubstitutionSystem, radius: int) -> tuple[tuple[Patch, ...], int]:
    """Atlas plus the depth at which the scan saturated."""
    cached = system._atlas_cache.get(radius)
    if cached is not None:
        return cached
    side = 2 * radius + 1
    start = max(2, _covering_depth(system.factor, side))
    prev: frozenset[bytes] | None = None
    blocks: dict[bytes, np.ndarray] = {}
    for depth in range(start, DEFAULT_MAX_DEPTH):
        keys = set()
        for label in system.labels:
            arr = system.supertile_array(label, depth)
            view = np.lib.stride_tricks.sliding_window_view(arr, (side, side))
            flat = view.reshape(-1, side, side)
            for block in flat:
                key = block.tobytes()
                if key not in blocks:
                    blocks[key] = np.ascontiguousarray(block)
                keys.add(key)
        cur = frozenset(keys)
        if cur == prev:
            patches = tuple(
                array_to_patch(system, blocks[k], ORIGIN) for k in sorted(cur)
            )
            result = (patches, depth)
            system._atlas_cache[radius] = result
            return result
        prev = cur
    raise NoSaturation(
        f"atlas({system.name!r}, {radius}) did not stabilize below depth "
        f"{DEFAULT_MAX_DEPTH}"
    )


# -- period detection ----------------------------------------------------


def detect_period(window: Window) -> Vec2 | None:
    """Least (y, x)-ordered nonzero v, |v|_inf <= R/2, such that the window
    agrees with its v-translate on the overlap of their domains."""
    r = window.radius
    bound = r // 2
    if bound == 0:
        return None
    n = 2 * r + 1
    arr = np.empty((n, n), dtype=object)
    for pos, lab in window.patch.cells.items():
        arr[pos.y + r, pos.x + r] = lab
    candidates = []
    for y in range(0, bound + 1):
        xs = range(1, bound + 1) if y == 0 else range(-bound, bound + 1)
        for x in xs:
            candidates.append(Vec2(x, y))
    for v in candidates:
        a = arr[max(0, v.y) : n + min(0, v.y), max(0, v.x) : n + min(0, v.x)]
        b = arr[max(0, -v.y) : n + min(0, -v.y), max(0, -v.x) : n + min(0, -v.x)]
        if (a == b).all():
            return v
    return None


# -- window families -----------------------------------------------------


def window_at(system: SubstitutionSystem, center: Vec2, radius: int, master_radius: int) -> Window:
    """Window of the fixed point recentered at an arbitrary puncture."""
    arr = fixed_point_array(system, master_radius)
    if center.chebyshev + radius > master_radius:
        raise ValueError("recentered window exceeds the master array")
    r0 = master_radius
    sub = arr[
        center.y + r0 - radius : center.y + r0 + radius + 1,
        center.x + r0 - radius : center.x + r0 + radius + 1,
    ]
    patch = array_to_patch(system, sub, Vec2(-radius, -radius))
    return Window(patch, radius)


def distinct_windows(
    system: SubstitutionSystem,
    radius: int,
    distinct_radius: int,
    master_radius: int = 64,
) -> list[Window]:
    """One radius-`radius` window per B_distinct_radius content class,
    scanning recenterings of the fixed point in (y, x) order."""
    arr = fixed_point_array(system, master_radius)
    side = 2 * distinct_radius + 1
    span = master_radius - radius
    seen: set[bytes] = set()
    out: list[Window] = []
    r0 = master_radius
    for y in range(-span, span + 1):
        for x in range(-span, span + 1):
            key = np.ascontiguousarray(
                arr[
                    y + r0 - distinct_radius : y + r0 + distinct_radius + 1,
                    x + r0 - distinct_radius : x + r0 + distinct_radius + 1,
                ]
            ).tobytes()
            if key in seen:
                continue
            seen.add(key)
            out.append(window_at(system, Vec2(x, y), radius, master_radius))
    return out


def builtin_path(name: str) -> FsPath:
    return FsPath(__file__).parent / "data" / f"{name}.rules"


def load_builtin(name: str, cell_budget: int = DEFAULT_CELL_BUDGET) -> SubstitutionSystem:
    """Load one of the shipped systems: solid, checkerboard or chair."""
    path = builtin_path(name)
    if not path.exists():
        raise FileNotFoundError(f"no builtin system named {name!r}")
    return load_system(path, cell_budget=cell_budget)
