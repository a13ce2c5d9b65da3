import numpy as np
import pytest

from punctile.errors import (
    DepthTooLarge,
    MalformedRule,
    NoSeed,
    NotPrimitive,
)
from punctile.geometry import ORIGIN, Patch, Vec2, tile
from punctile.substitution import (
    SubstitutionSystem,
    atlas,
    atlas_with_depth,
    detect_period,
    find_seed,
    fixed_point_window,
    is_admissible,
    load_builtin,
    parse_system,
    supertile,
    window_at,
)


def test_solid_loads_with_unit_matrix(solid):
    assert solid.labels == ("u",)
    assert solid.matrix.tolist() == [[4]]
    assert solid.primitivity_power == 1


def test_chair_is_primitive_at_power_two(chair):
    assert chair.primitivity_power == 2
    assert (np.linalg.matrix_power(chair.matrix, 2) > 0).all()


def test_malformed_wrong_block_shape():
    text = "name bad\nfactor 2\nlabels a\nrule a\na a a\na a a\na a a\n"
    with pytest.raises(MalformedRule):
        parse_system(text)


def test_malformed_unknown_label():
    text = "name bad\nfactor 2\nlabels a\nrule a\na z\na a\n"
    with pytest.raises(MalformedRule):
        parse_system(text)


def test_malformed_missing_rule():
    text = "name bad\nfactor 2\nlabels a b\nrule a\na b\nb a\n"
    with pytest.raises(MalformedRule):
        parse_system(text)


def test_not_primitive_rejected():
    text = (
        "name split\nfactor 2\nlabels a b\n"
        "rule a\na a\na a\nrule b\nb b\nb b\n"
    )
    with pytest.raises(NotPrimitive):
        parse_system(text)


def test_supertile_solid_depth_two(solid):
    p = supertile(solid, "u", 2)
    assert p == Patch(tile("u", x, y) for x in range(4) for y in range(4))


@pytest.mark.parametrize("name", ["solid", "checkerboard", "chair"])
def test_supertile_cell_count(name):
    system = load_builtin(name)
    for label in system.labels:
        for depth in range(0, 6):
            assert len(supertile(system, label, depth)) == system.factor ** (2 * depth)


def test_supertile_census_matches_matrix_power(chair):
    m3 = np.linalg.matrix_power(chair.matrix, 3)
    for a in chair.labels:
        census = {lab: 0 for lab in chair.labels}
        for t in supertile(chair, a, 3):
            census[t.label] += 1
        expected = m3[chair.label_index[a]]
        assert [census[lab] for lab in chair.labels] == expected.tolist()


def test_supertile_depth_budget():
    system = parse_system(
        "name tiny\nfactor 2\nlabels a\nrule a\na a\na a\n", cell_budget=64
    )
    supertile(system, "a", 3)  # 64 cells: exactly at budget
    with pytest.raises(DepthTooLarge):
        supertile(system, "a", 4)


def test_seed_is_refixed_by_rule(chair, solid, checkerboard):
    for system in (chair, solid, checkerboard):
        seed = find_seed(system)
        assert seed.period >= 1
        idx = [system.label_index[lab] for lab in seed.quad]
        arr = np.array([[idx[0], idx[1]], [idx[2], idx[3]]], dtype=np.int16)
        grown = system.expand(arr, steps=seed.period)
        half = system.factor**seed.period
        inner = grown[half - 1 : half + 1, half - 1 : half + 1]
        assert inner.tolist() == arr.tolist()


def test_no_seed_when_corners_cycle():
    # corners all advance the label cyclically (period 5 > 4), while the
    # off-corner cells keep the matrix primitive
    labels = ["l0", "l1", "l2", "l3", "l4"]
    rows = []
    for i in range(5):
        nxt, jump, mid = (
            labels[(i + 1) % 5],
            labels[(i + 3) % 5],
            labels[(i + 2) % 5],
        )
        rows.append(
            f"rule {labels[i]}\n{nxt} {jump} {nxt}\n{jump} {mid} {jump}\n{nxt} {jump} {nxt}\n"
        )
    text = "name cyclic\nfactor 3\nlabels " + " ".join(labels) + "\n" + "".join(rows)
    system = parse_system(text)
    with pytest.raises(NoSeed):
        find_seed(system)


def test_fixed_point_window_solid_is_constant(solid):
    w = fixed_point_window(solid, 5)
    assert all(t.label == "u" for t in w.patch)
    assert len(w.patch) == 11 * 11


@pytest.mark.parametrize("name", ["solid", "checkerboard", "chair"])
def test_fixed_point_window_nesting(name):
    system = load_builtin(name)
    big = fixed_point_window(system, 8)
    for r in range(1, 8):
        assert big.restrict(r) == fixed_point_window(system, r)


def test_chair_window_has_origin_tile(chair):
    w = fixed_point_window(chair, 16)
    assert w.origin_tile().pos == ORIGIN


def test_single_tiles_admissible(chair, solid, checkerboard):
    for system in (chair, solid, checkerboard):
        for lab in system.labels:
            assert is_admissible(system, Patch([tile(lab, 0, 0)]))


def test_supertile_is_admissible(chair):
    assert is_admissible(chair, supertile(chair, "ne", 2))


def test_checkerboard_equal_neighbors_inadmissible(checkerboard):
    p = Patch([tile("b", 0, 0), tile("b", 1, 0)])
    assert not is_admissible(checkerboard, p)
    # oracle: exhaustive scan of every depth-4 supertile
    deep = [supertile(checkerboard, lab, 4) for lab in checkerboard.labels]
    from punctile.geometry import find_occurrences

    assert all(find_occurrences(p, s) == [] for s in deep)


def test_admissibility_hereditary(chair):
    w = fixed_point_window(chair, 6)
    plaque = w.plaque(2)
    assert is_admissible(chair, plaque)
    sub = Patch(list(plaque.tiles)[:7])
    assert is_admissible(chair, sub)


def test_admissibility_stable_under_depth_margin(chair):
    from punctile.substitution import admissibility_depth

    w = fixed_point_window(chair, 5)
    probes = [w.plaque(1), w.plaque(2), w.plaque(1, Vec2(2, -1))]
    # mutate one label to get (mostly) inadmissible variants
    bad = Patch(
        [tile("ne", 0, 0), tile("ne", 1, 0), tile("ne", 0, 1), tile("ne", 1, 1)]
    )
    probes.append(bad)
    for p in probes:
        k = admissibility_depth(chair, p)
        assert is_admissible(chair, p, depth=k) == is_admissible(chair, p, depth=k + 1)


def test_atlas_solid_single_class(solid):
    assert len(atlas(solid, 1)) == 1


def test_atlas_chair_radius_zero_has_all_labels(chair):
    classes = atlas(chair, 0)
    assert len(classes) == 4
    assert {p.tiles[0].label for p in classes} == set(chair.labels)
    # oracle: every label appears in a depth-4 supertile scan
    arr = chair.supertile_array("ne", 4)
    assert set(np.unique(arr)) == {0, 1, 2, 3}


def test_atlas_nondecreasing(chair):
    sizes = [len(atlas(chair, r)) for r in range(0, 4)]
    assert sizes == sorted(sizes)


def test_atlas_members_admissible(checkerboard):
    for p in atlas(checkerboard, 1):
        assert is_admissible(checkerboard, p)


def test_atlas_saturation_depth_recorded(chair):
    plaques, depth = atlas_with_depth(chair, 1)
    assert depth >= 2
    assert len(plaques) == len(atlas(chair, 1))


def test_detect_period_solid(solid):
    w = fixed_point_window(solid, 8)
    assert detect_period(w) == Vec2(1, 0)


def test_detect_period_checkerboard(checkerboard):
    w = fixed_point_window(checkerboard, 8)
    assert detect_period(w) == Vec2(2, 0)


def test_detect_period_chair_none(chair):
    assert detect_period(fixed_point_window(chair, 16)) is None


def test_detect_period_radius_one_none(chair, solid):
    assert detect_period(fixed_point_window(solid, 1)) is None
    assert detect_period(fixed_point_window(chair, 1)) is None


def test_window_at_agrees_with_master(chair):
    w = window_at(chair, Vec2(3, -2), 4, master_radius=16)
    big = fixed_point_window(chair, 16)
    assert w == big.recenter(Vec2(3, -2), 4)
