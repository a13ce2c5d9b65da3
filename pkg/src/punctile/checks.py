"""Named verification suites: every invariant as a sweep of decidable
instances producing report lines.

Each suite maps onto the invariants of one algebraic layer; check ids
carry the named statement they verify.  Sweeps are deterministic for a
fixed seed.  Aggregate summary lines are always emitted; per-instance
pass lines can be suppressed for very large sweeps (failures and
indeterminates are always emitted).
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientWindow, UniverseTooSmall
from .filters import (
    build_universe,
    character_of,
    filter_of,
    is_filter,
    plaque_universe,
    psi,
    theta_tight,
    ultrafilter_report,
    xi_partial,
    xi_window,
)
from .geometry import ORIGIN, Patch, Tile, Vec2, Window, window_distance
from .groupoid import (
    Germ,
    RpuncPair,
    alpha,
    alpha_inv,
    basis_correspondence,
    compose,
    composable,
    germ_equiv_def,
    germ_equiv_lemma,
    invert,
    rpunc_compose,
    rpunc_invert,
    windows_agree,
)
from .semigroup import (
    ZERO,
    Element,
    dppc,
    enumerate_elements,
    leq,
    multiply,
    sorted_elements,
    star,
    theta_omega,
    window_in_domain,
)
from .substitution import (
    SubstitutionSystem,
    atlas,
    atlas_with_depth,
    detect_period,
    distinct_windows,
    fixed_point_array,
    fixed_point_window,
    occurrence_anchors,
    window_at,
)

ANCHORS = {
    "semigroup.regularity": "inverse semigroup axioms: s s* s = s",
    "semigroup.involution": "inverse semigroup axioms: s** = s",
    "semigroup.idempotents-commute": "inverse semigroup axioms: ef = fe",
    "semigroup.associativity": "semigroup associativity",
    "semigroup.nonzero-criterion": "nonzero product criterion",
    "semigroup.displacement-additivity": "displacement additivity on products",
    "semigroup.theta-homomorphism": "window action is a homomorphism",
    "semigroup.theta-domain-range": "window action swaps domain and range",
    "filters.xi-is-filter": "window filter lemma: xi is a filter",
    "filters.ultrafilter": "window filter lemma: xi is an ultrafilter",
    "filters.round-trip": "character-filter correspondence",
    "filters.reconstruction": "filter reconstruction from member union",
    "filters.psi-injectivity": "window-to-character injectivity",
    "filters.commuting-diagram": "commuting diagram of the two actions",
    "groupoid.equivalence-axioms": "germ equivalence is an equivalence",
    "groupoid.def-lemma-agreement": "germ equivalence lemma",
    "groupoid.alpha-well-defined": "groupoid isomorphism: well defined",
    "groupoid.alpha-injective": "groupoid isomorphism: injective",
    "groupoid.alpha-surjective": "groupoid isomorphism: surjective",
    "groupoid.alpha-multiplicative": "groupoid isomorphism: multiplicative",
    "groupoid.alpha-inverse": "groupoid isomorphism: inverse preserving",
    "groupoid.unit-space": "unit space correspondence",
    "groupoid.compose-associative": "groupoid composition associativity",
    "groupoid.basis-correspondence": "basis sets map to translation graphs",
    "assumptions.atlas-saturation": "finite local complexity at scale",
    "assumptions.aperiodicity": "no period within the window",
    "assumptions.repetitivity": "patch recurrence radius is finite",
    "metric.self-distance": "pseudometric floor at the truncation radius",
    "metric.symmetry": "pseudometric symmetry",
    "metric.triangle": "pseudometric triangle inequality",
    "metric.origin": "origin disagreement maximizes the metric",
}


@dataclass(frozen=True)
class CheckLine:
    check_id: str
    fingerprint: str
    status: str  # pass | fail | indet

    def render(self) -> str:
        return f"{self.check_id}\t{self.fingerprint}\t{self.status}"


@dataclass
class SuiteResult:
    name: str
    lines: list[CheckLine] = field(default_factory=list)
    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def record(self, check_id: str, fingerprint, status: str, emit: bool = True):
        """fingerprint may be a string or a zero-argument callable; the
        callable is only invoked when a line is actually emitted, keeping
        large suppressed sweeps cheap."""
        per = self.counts.setdefault(
            check_id, {"pass": 0, "fail": 0, "indet": 0}
        )
        per[status] += 1
        if emit or status != "pass":
            fp = fingerprint() if callable(fingerprint) else fingerprint
            self.lines.append(CheckLine(check_id, fp, status))

    def summary_lines(self) -> list[CheckLine]:
        out = []
        for check_id in sorted(self.counts):
            c = self.counts[check_id]
            out.append(
                CheckLine(
                    f"{check_id}.summary",
                    f"pass={c['pass']},fail={c['fail']},indet={c['indet']}",
                    "fail" if c["fail"] else ("indet" if c["indet"] else "pass"),
                )
            )
        return out

    @property
    def failures(self) -> int:
        return sum(c["fail"] for c in self.counts.values())

    @property
    def indeterminates(self) -> int:
        return sum(c["indet"] for c in self.counts.values())

    def merged(self) -> list[CheckLine]:
        all_lines = self.lines + self.summary_lines()
        return sorted(all_lines, key=lambda l: (l.check_id, l.fingerprint))


def _fp(*parts: str) -> str:
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


def _efp(*elements: Element) -> str:
    return _fp(*(e.serialize() for e in elements))


# -- semigroup battery -----------------------------------------------------


def check_regularity(result: SuiteResult, elements, emit=True):
    for s in elements:
        ok = (
            multiply(s, multiply(star(s), s)) == s
            and multiply(star(s), multiply(s, star(s))) == star(s)
        )
        result.record(
            "semigroup.regularity",
            lambda s=s: _efp(s),
            "pass" if ok else "fail",
            emit,
        )


def check_involution(result: SuiteResult, elements, emit=True):
    for s in elements:
        ok = star(star(s)) == s
        result.record(
            "semigroup.involution",
            lambda s=s: _efp(s),
            "pass" if ok else "fail",
            emit,
        )


def check_idempotents_commute(result: SuiteResult, pairs, emit=True):
    for e, f in pairs:
        ok = multiply(e, f) == multiply(f, e)
        result.record(
            "semigroup.idempotents-commute",
            lambda e=e, f=f: _efp(e, f),
            "pass" if ok else "fail",
            emit,
        )


def check_associativity(result: SuiteResult, triples, emit=True):
    cache: dict[tuple, Element] = {}

    def mul(a, b):
        key = (a, b)
        got = cache.get(key)
        if got is None:
            got = multiply(a, b)
            cache[key] = got
        return got

    for a, b, c in triples:
        ok = mul(mul(a, b), c) == mul(a, mul(b, c))
        result.record(
            "semigroup.associativity",
            lambda a=a, b=b, c=c: _efp(a, b, c),
            "pass" if ok else "fail",
            emit,
        )


def realizable_in_window(system: SubstitutionSystem, patch: Patch, radius: int) -> bool:
    """Independent route: does the patch occur in the seed fixed point
    window of the given radius?  (Admissibility scans supertiles; this
    scans the window.)"""
    arr = fixed_point_array(system, radius)
    return bool(occurrence_anchors(system, patch, arr))


def check_nonzero_criterion(
    result: SuiteResult,
    system: SubstitutionSystem,
    elements,
    rng: random.Random,
    samples: int,
    window_radius: int = 32,
    emit=True,
):
    """multiply(a,b) != 0 exactly when the aligned union occurs in the
    tiling, cross-checked against realization inside a window."""
    from .geometry import patches_compatible, translate_patch

    pool = list(elements)
    for _ in range(samples):
        a, b = rng.choice(pool), rng.choice(pool)
        got = multiply(a, b)
        if a.t2.label != b.t1.label:
            ok = got == ZERO
        else:
            moved = translate_patch(b.patch, -b.t1.pos)
            if not patches_compatible(a.patch, moved):
                ok = got == ZERO
            else:
                union = Patch(a.patch.tiles + moved.tiles)
                realizable = realizable_in_window(system, union, window_radius)
                ok = (got != ZERO) == realizable
        result.record(
            "semigroup.nonzero-criterion",
            lambda a=a, b=b: _efp(a, b),
            "pass" if ok else "fail",
            emit,
        )


def check_displacement_additivity(
    result: SuiteResult, elements, rng: random.Random, samples: int, emit=True
):
    pool = list(elements)
    done = 0
    guard = 0
    while done < samples and guard < samples * 80:
        guard += 1
        a, b = rng.choice(pool), rng.choice(pool)
        ab = multiply(a, b)
        if ab == ZERO:
            continue
        ok = ab.displacement == a.displacement + b.displacement
        result.record(
            "semigroup.displacement-additivity",
            lambda a=a, b=b: _efp(a, b),
            "pass" if ok else "fail",
            emit,
        )
        done += 1


def check_theta_action(
    result: SuiteResult,
    system: SubstitutionSystem,
    elements,
    window: Window,
    rng: random.Random,
    samples: int,
    emit=True,
):
    pool = [s for s in elements if window_in_domain(window, s)]
    done = 0
    guard = 0
    while done < samples and guard < samples * 80:
        guard += 1
        s, t = rng.choice(pool), rng.choice(pool)
        st = multiply(s, t)
        if st == ZERO:
            continue
        inner = theta_omega(t, window)
        if not window_in_domain(inner, s):
            continue
        lhs = theta_omega(s, inner)
        rhs = theta_omega(st, window)
        r = min(lhs.radius, rhs.radius)
        ok = lhs.restrict(r) == rhs.restrict(r)
        result.record(
            "semigroup.theta-homomorphism",
            lambda s=s, t=t: _efp(s, t),
            "pass" if ok else "fail",
            emit,
        )
        out = theta_omega(s, window)
        ok2 = window_in_domain(out, star(s))
        result.record(
            "semigroup.theta-domain-range",
            lambda s=s: _efp(s),
            "pass" if ok2 else "fail",
            emit,
        )
        done += 1


def semigroup_suite(
    system: SubstitutionSystem,
    radius: int = 1,
    max_tiles: int = 3,
    seed: int = 0,
    samples: int = 200,
    exhaustive_cap: int = 300,
    emit_passes: bool = True,
) -> SuiteResult:
    """Inverse-semigroup certification at configurable scale.

    Regularity and involution sweep every enumerated element.  Pair and
    triple sweeps run exhaustively when the population is below the cap
    and fall back to seeded sampling above it.
    """
    result = SuiteResult(name="semigroup")
    rng = random.Random(seed)
    els = sorted_elements(enumerate_elements(system, radius, max_tiles))
    check_regularity(result, els, emit_passes)
    check_involution(result, els, emit_passes)
    idem = [e for e in els if e.is_idempotent()]
    if len(idem) <= exhaustive_cap:
        pairs = itertools.product(idem, idem)
    else:
        pairs = ((rng.choice(idem), rng.choice(idem)) for _ in range(samples))
    check_idempotents_commute(result, pairs, emit_passes)
    if len(els) <= exhaustive_cap:
        triples = itertools.product(els, els, els)
    else:
        triples = (
            (rng.choice(els), rng.choice(els), rng.choice(els))
            for _ in range(samples)
        )
    check_associativity(result, triples, emit_passes)
    check_nonzero_criterion(
        result, system, els, rng, samples, window_radius=16, emit=emit_passes
    )
    check_displacement_additivity(result, els, rng, samples, emit_passes)
    window = fixed_point_window(system, max(8, 2 * radius + 2))
    check_theta_action(result, system, els, window, rng, samples, emit_passes)
    return result


# -- filters battery --------------------------------------------------------


def check_xi_filters(
    result: SuiteResult,
    system: SubstitutionSystem,
    universe,
    rng: random.Random,
    window_count: int,
    window_radius: int,
    master_radius: int = 48,
    emit=True,
):
    span = master_radius - window_radius
    for _ in range(window_count):
        center = Vec2(rng.randint(-span, span), rng.randint(-span, span))
        window = window_at(system, center, window_radius, master_radius)
        filt = xi_window(window, universe)
        ok = is_filter(filt.members, universe)
        result.record(
            "filters.xi-is-filter",
            _fp(system.name, str(tuple(center)), str(window_radius)),
            "pass" if ok else "fail",
            emit,
        )


def check_ultrafilters(
    result: SuiteResult,
    system: SubstitutionSystem,
    universe,
    windows,
    emit=True,
):
    for window in windows:
        filt = xi_window(window, universe)
        report = ultrafilter_report(filt.members, universe)
        if report.maximal:
            status = "pass"
        elif report.indeterminate and not report.blockers:
            status = "indet"
        else:
            status = "fail"
        result.record(
            "filters.ultrafilter",
            _fp(system.name, str(window.radius), window.patch.serialize()),
            status,
            emit,
        )


def check_round_trip(result: SuiteResult, universe, emit=True):
    # every filter of a finite truncation is principal: enumerate all
    for e in universe.items:
        members = frozenset(f for f in universe.items if leq(e, f))
        from .filters import Filter

        filt = Filter(universe=universe, members=members)
        ok = is_filter(members, universe) and filter_of(character_of(filt)) == filt
        result.record(
            "filters.round-trip", _efp(e), "pass" if ok else "fail", emit
        )


def check_reconstruction(result: SuiteResult, universe, emit=True):
    for e in universe.items:
        members = frozenset(f for f in universe.items if leq(e, f))
        union = e.patch
        for f in members:
            union = Patch(union.tiles + f.patch.tiles)
        regenerated = xi_partial(union, universe)
        ok = regenerated.members == members
        result.record(
            "filters.reconstruction", _efp(e), "pass" if ok else "fail", emit
        )


def check_psi_injectivity(result: SuiteResult, universe, windows, emit=True):
    seen: dict[str, int] = {}
    collision = False
    for i, window in enumerate(windows):
        print_ = psi(window, universe).fingerprint()
        if print_ in seen:
            collision = True
            result.record(
                "filters.psi-injectivity",
                _fp(str(seen[print_]), str(i)),
                "fail",
                emit,
            )
        else:
            seen[print_] = i
            result.record(
                "filters.psi-injectivity", _fp(str(i), print_), "pass", emit
            )
    return not collision


def check_commuting_diagram(
    result: SuiteResult,
    system: SubstitutionSystem,
    universe,
    windows,
    elements,
    emit=True,
):
    """theta_tight(s, psi(W)) = psi(theta_omega(s, W)) entrywise.

    Conjugates depend only on (s, item), so they are computed once and
    reused across windows.
    """
    conjugates: dict[tuple[Element, Element], Element] = {}
    stars: dict[Element, Element] = {}
    for window in windows:
        c = psi(window, universe)
        for s in elements:
            if not window_in_domain(window, s):
                continue
            s_star = stars.get(s)
            if s_star is None:
                s_star = star(s)
                stars[s] = s_star
            moved = theta_omega(s, window)
            if moved.radius < universe.radius:
                continue
            rhs = psi(moved, universe)
            mismatches = 0
            indet = 0
            for item in universe.items:
                key = (s, item)
                conj = conjugates.get(key)
                if conj is None:
                    conj = multiply(multiply(s_star, item), s)
                    conjugates[key] = conj
                lhs_value = c.evaluate(conj)
                if lhs_value is None:
                    indet += 1
                    continue
                if lhs_value != (1 if item in rhs.ones else 0):
                    mismatches += 1
            fp = _fp(s.serialize(), window.patch.serialize()[:64])
            if mismatches:
                result.record("filters.commuting-diagram", fp, "fail", emit)
            elif indet:
                result.record("filters.commuting-diagram", fp, "indet", emit)
            else:
                result.record("filters.commuting-diagram", fp, "pass", emit)


def filters_suite(
    system: SubstitutionSystem,
    universe_radius: int = 1,
    seed: int = 0,
    window_count: int = 20,
    emit_passes: bool = True,
) -> SuiteResult:
    result = SuiteResult(name="filters")
    rng = random.Random(seed)
    universe = plaque_universe(system, universe_radius)
    window_radius = max(universe_radius, 4)
    check_xi_filters(
        result, system, universe, rng, window_count, window_radius, emit=emit_passes
    )
    wins = distinct_windows(
        system, radius=window_radius, distinct_radius=universe_radius, master_radius=32
    )
    check_ultrafilters(result, system, universe, wins[:10], emit=emit_passes)
    small = build_universe(system, 1, 4)
    check_round_trip(result, small, emit=emit_passes)
    check_reconstruction(result, small, emit=emit_passes)
    check_psi_injectivity(result, universe, wins, emit=emit_passes)
    elements = sorted_elements(enumerate_elements(system, 1, 3))
    check_commuting_diagram(
        result,
        system,
        universe,
        wins[: min(len(wins), 12)],
        elements[:80],
        emit=emit_passes,
    )
    return result


# -- groupoid battery --------------------------------------------------------


def window_class_key(system: SubstitutionSystem, window: Window, radius: int) -> bytes:
    cells = window.patch.cells
    side = 2 * radius + 1
    arr = np.empty((side, side), dtype=np.int16)
    for y in range(-radius, radius + 1):
        for x in range(-radius, radius + 1):
            arr[y + radius, x + radius] = system.label_index[cells[Vec2(x, y)]]
    return arr.tobytes()


def check_germ_kernels(
    result: SuiteResult,
    system: SubstitutionSystem,
    universe,
    windows,
    elements,
    emit=True,
):
    """Criterion-level germ check: on each window, the definition-level
    kernel (products with the maximal plaque witness) must coincide with
    the lemma kernel (equal marks).

    Kernel equality is exactly 'the two equivalence checks agree on every
    germ pair at this window', verified in linear time per window.
    """
    for window in windows:
        plaque_patch = window.plaque(universe.radius)
        lab = window.origin_label()
        estar = Element(system, Tile(lab, ORIGIN), plaque_patch, Tile(lab, ORIGIN))
        if estar not in universe:
            result.record(
                "groupoid.def-lemma-agreement",
                _fp(system.name, "missing-plaque"),
                "indet",
                emit,
            )
            continue
        def_kernel: dict[Element, list[int]] = {}
        lemma_kernel: dict[tuple, list[int]] = {}
        applicable = [s for s in elements if window.contains_patch(s.patch)]
        ok = True
        for i, s in enumerate(applicable):
            product = multiply(s, estar)
            if product == ZERO:
                ok = False
                break
            def_kernel.setdefault(product, []).append(i)
            lemma_kernel.setdefault((s.t1, s.t2), []).append(i)
        if ok:
            def_classes = {frozenset(g) for g in def_kernel.values()}
            lemma_classes = {frozenset(g) for g in lemma_kernel.values()}
            ok = def_classes == lemma_classes
        result.record(
            "groupoid.def-lemma-agreement",
            _fp(system.name, window.patch.serialize()[:80]),
            "pass" if ok else "fail",
            emit,
        )


def check_equivalence_axioms(
    result: SuiteResult, window: Window, elements, cap: int = 40, emit=True
):
    germs = [
        Germ(s, window) for s in elements if window_in_domain(window, s)
    ][:cap]
    ok = True
    for g1 in germs:
        if not germ_equiv_lemma(g1, g1):
            ok = False
    for g1, g2 in itertools.combinations(germs, 2):
        if germ_equiv_lemma(g1, g2) != germ_equiv_lemma(g2, g1):
            ok = False
    for g1 in germs:
        for g2 in germs:
            if not germ_equiv_lemma(g1, g2):
                continue
            for g3 in germs:
                if germ_equiv_lemma(g2, g3) and not germ_equiv_lemma(g1, g3):
                    ok = False
    result.record(
        "groupoid.equivalence-axioms",
        _fp(str(window.radius), window.patch.serialize()[:64]),
        "pass" if ok else "fail",
        emit,
    )


def check_alpha_theorem(
    result: SuiteResult,
    system: SubstitutionSystem,
    windows,
    elements,
    max_displacement: int = 2,
    emit=True,
):
    """Well-definedness, injectivity modulo equivalence, surjectivity
    onto realized displacements, multiplicativity and inverse
    preservation of the bridge map."""
    for window in windows:
        applicable = [s for s in elements if window.contains_patch(s.patch)]
        wfp = _fp(system.name, window.patch.serialize()[:80])
        # well-defined: lemma classes are constant in displacement
        by_marks: dict[tuple, set] = {}
        for s in applicable:
            by_marks.setdefault((s.t1, s.t2), set()).add(s.displacement)
        ok = all(len(d) == 1 for d in by_marks.values())
        result.record(
            "groupoid.alpha-well-defined", wfp, "pass" if ok else "fail", emit
        )
        # injective modulo equivalence: equal displacement means equal marks
        by_disp: dict[Vec2, set] = {}
        for s in applicable:
            by_disp.setdefault(s.displacement, set()).add((s.t1, s.t2))
        ok = all(len(marks) == 1 for marks in by_disp.values())
        result.record(
            "groupoid.alpha-injective", wfp, "pass" if ok else "fail", emit
        )
        # surjective onto realized displacements
        ok = True
        for dx in range(-max_displacement, max_displacement + 1):
            for dy in range(-max_displacement, max_displacement + 1):
                pair = RpuncPair(source=window, displacement=Vec2(dx, dy))
                g = alpha_inv(system, pair)
                if alpha(g) != pair:
                    ok = False
        result.record(
            "groupoid.alpha-surjective", wfp, "pass" if ok else "fail", emit
        )
        # units: idempotent germs are exactly zero displacement
        ok = all(
            (s.displacement == Vec2(0, 0)) == s.is_idempotent()
            for s in applicable
        )
        result.record("groupoid.unit-space", wfp, "pass" if ok else "fail", emit)


def check_alpha_functorial(
    result: SuiteResult,
    system: SubstitutionSystem,
    window: Window,
    elements,
    rng: random.Random,
    samples: int,
    emit=True,
):
    pool = [s for s in elements if window_in_domain(window, s)]
    done = 0
    guard = 0
    while done < samples and guard < samples * 60:
        guard += 1
        s2 = rng.choice(pool)
        g2 = Germ(s2, window)
        moved = theta_omega(s2, window)
        s1 = rng.choice(pool)
        if not window_in_domain(moved, s1):
            continue
        g1 = Germ(s1, moved)
        if not composable(g1, g2):
            continue
        lhs = alpha(compose(g1, g2))
        rhs = rpunc_compose(alpha(g1), alpha(g2))
        ok = lhs.displacement == rhs.displacement and windows_agree(
            lhs.source, rhs.source
        )
        result.record(
            "groupoid.alpha-multiplicative",
            _efp(s1, s2),
            "pass" if ok else "fail",
            emit,
        )
        gi = invert(g2)
        lhs_inv = alpha(gi)
        rhs_inv = rpunc_invert(alpha(g2))
        ok2 = lhs_inv.displacement == rhs_inv.displacement and windows_agree(
            lhs_inv.source, rhs_inv.source
        )
        result.record(
            "groupoid.alpha-inverse", _efp(s2), "pass" if ok2 else "fail", emit
        )
        done += 1


def check_compose_associative(
    result: SuiteResult, window: Window, elements, cap: int = 15, emit=True
):
    base = [s for s in elements if window_in_domain(window, s)][:cap]
    count = 0
    ok = True
    for s3 in base:
        g3 = Germ(s3, window)
        w2 = theta_omega(s3, window)
        for s2 in base:
            if not window_in_domain(w2, s2):
                continue
            g2 = Germ(s2, w2)
            w1 = theta_omega(s2, w2)
            for s1 in base:
                if not window_in_domain(w1, s1):
                    continue
                g1 = Germ(s1, w1)
                lhs = compose(compose(g1, g2), g3)
                rhs = compose(g1, compose(g2, g3))
                if not germ_equiv_lemma(lhs, rhs):
                    ok = False
                count += 1
    result.record(
        "groupoid.compose-associative",
        _fp(str(window.radius), str(count)),
        "pass" if ok else "fail",
        emit,
    )


def check_basis_sets(
    result: SuiteResult,
    system: SubstitutionSystem,
    windows,
    elements,
    rng: random.Random,
    samples: int = 10,
    emit=True,
):
    pool = [s for s in elements if not s.is_idempotent()]
    for _ in range(samples):
        s = rng.choice(pool)
        realizing = [w for w in windows if window_in_domain(w, s)]
        if not realizing:
            continue
        report_full = basis_correspondence(s, s.patch, windows)
        marker = Patch(
            set(realizing[0].plaque(min(2, realizing[0].radius)).tiles)
            | set(s.patch.tiles)
        )
        report_sub = basis_correspondence(s, marker, windows)
        ok = (
            report_full.equal
            and report_sub.equal
            and report_sub.realized <= report_full.realized
        )
        result.record(
            "groupoid.basis-correspondence",
            _efp(s),
            "pass" if ok else "fail",
            emit,
        )


def groupoid_suite(
    system: SubstitutionSystem,
    seed: int = 0,
    window_radius: int = 8,
    distinct_radius: int = 2,
    element_radius: int = 1,
    element_tiles: int = 3,
    samples: int = 60,
    emit_passes: bool = True,
) -> SuiteResult:
    result = SuiteResult(name="groupoid")
    rng = random.Random(seed)
    universe = plaque_universe(system, distinct_radius)
    windows = distinct_windows(
        system,
        radius=window_radius,
        distinct_radius=distinct_radius,
        master_radius=max(32, window_radius * 2),
    )
    elements = sorted_elements(
        enumerate_elements(system, element_radius, element_tiles)
    )
    check_germ_kernels(result, system, universe, windows, elements, emit_passes)
    check_equivalence_axioms(result, windows[0], elements, emit=emit_passes)
    check_alpha_theorem(result, system, windows, elements, emit=emit_passes)
    check_alpha_functorial(
        result, system, windows[0], elements, rng, samples, emit_passes
    )
    check_compose_associative(result, windows[0], elements, emit=emit_passes)
    check_basis_sets(result, system, windows, elements, rng, emit=emit_passes)
    return result


# -- assumptions battery ------------------------------------------------------


def check_assumptions(
    result: SuiteResult,
    system: SubstitutionSystem,
    atlas_radius: int = 3,
    period_radius: int = 16,
    repetitivity_radius: int = 2,
    master_radius: int = 64,
    expect_period: bool = False,
    emit=True,
) -> dict:
    """Finite local complexity (saturation), aperiodicity at scale, and
    an empirical repetitivity radius."""
    info: dict = {}
    for r in range(atlas_radius + 1):
        plaques, depth = atlas_with_depth(system, r)
        result.record(
            "assumptions.atlas-saturation",
            _fp(system.name, f"r={r}", f"classes={len(plaques)}", f"depth={depth}"),
            "pass",
            emit,
        )
        info[f"atlas_{r}"] = len(plaques)
    window = fixed_point_window(system, period_radius)
    period = detect_period(window)
    ok = (period is not None) if expect_period else (period is None)
    result.record(
        "assumptions.aperiodicity",
        _fp(system.name, f"R={period_radius}", f"period={period}"),
        "pass" if ok else "fail",
        emit,
    )
    info["period"] = period
    r0 = repetitivity_radius_bound(system, repetitivity_radius, master_radius)
    result.record(
        "assumptions.repetitivity",
        _fp(system.name, f"r={repetitivity_radius}", f"r0={r0}"),
        "pass" if r0 is not None else "fail",
        emit,
    )
    info["repetitivity_r0"] = r0
    return info


def _chebyshev_growth(mask: np.ndarray) -> np.ndarray:
    """Dilate a boolean grid by one step of the Chebyshev unit ball."""
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    out[1:, 1:] |= mask[:-1, :-1]
    out[1:, :-1] |= mask[:-1, 1:]
    out[:-1, 1:] |= mask[1:, :-1]
    out[:-1, :-1] |= mask[1:, 1:]
    return out


def repetitivity_radius_bound(
    system: SubstitutionSystem, patch_radius: int, master_radius: int
) -> int | None:
    """Least r0 such that every atlas(patch_radius) plaque occurs within
    Chebyshev distance r0 of every central master-window position; None
    when some plaque fails to recur at this scale."""
    arr = fixed_point_array(system, master_radius)
    n = arr.shape[0]
    span = master_radius // 2
    lo = master_radius - span
    hi = master_radius + span + 1
    worst = 0
    for plaque in sorted(atlas(system, patch_radius), key=lambda p: p.tiles):
        anchors = occurrence_anchors(system, plaque, arr)
        if not anchors:
            return None
        mask = np.zeros((n, n), dtype=bool)
        for row, col in anchors:
            mask[row + patch_radius, col + patch_radius] = True
        steps = 0
        while not mask[lo:hi, lo:hi].all():
            mask = _chebyshev_growth(mask)
            steps += 1
            if steps > n:
                return None
        worst = max(worst, steps)
    return worst + patch_radius


# -- metric battery -----------------------------------------------------------


def metric_suite(
    system: SubstitutionSystem,
    radius: int = 6,
    seed: int = 0,
    samples: int = 100,
    master_radius: int = 32,
    emit_passes: bool = True,
) -> SuiteResult:
    result = SuiteResult(name="metric")
    rng = random.Random(seed)
    span = master_radius - radius

    def rand_window():
        return window_at(
            system,
            Vec2(rng.randint(-span, span), rng.randint(-span, span)),
            radius,
            master_radius,
        )

    from fractions import Fraction

    for _ in range(samples):
        a, b, c = rand_window(), rand_window(), rand_window()
        fp = _fp(
            a.patch.serialize()[:40],
            b.patch.serialize()[:40],
            c.patch.serialize()[:40],
        )
        ok = window_distance(a, a) == Fraction(1, radius)
        result.record(
            "metric.self-distance", fp, "pass" if ok else "fail", emit_passes
        )
        ok = window_distance(a, b) == window_distance(b, a)
        result.record(
            "metric.symmetry", fp, "pass" if ok else "fail", emit_passes
        )
        ok = window_distance(a, c) <= window_distance(a, b) + window_distance(b, c)
        result.record(
            "metric.triangle", fp, "pass" if ok else "fail", emit_passes
        )
        if a.origin_label() != b.origin_label():
            ok = window_distance(a, b) == 1
            result.record(
                "metric.origin", fp, "pass" if ok else "fail", emit_passes
            )
    return result
