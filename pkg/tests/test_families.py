import pytest

from ktconway.diagram import components, connected_sum, validate, writhe
from ktconway.families import (
    FamilySpec,
    FamilySpecError,
    generate,
    is_trivial_parameters,
    mirror_partner,
    parse_family_spec,
    symmetry_partner,
    torus_skein_triple,
    twist_region_skein_triple,
)
from ktconway.invariants import alexander, jones

GRID = [(r, n) for r in range(-5, 6) for n in range(-3, 4)]


def torus(k):
    return generate(FamilySpec.torus2(k))


@pytest.mark.parametrize("kind", ["KT", "Conway"])
def test_every_grid_member_is_a_valid_knot(kind):
    for r, n in GRID:
        pd = generate(FamilySpec(kind, (r, n)))
        assert validate(pd) == [], (kind, r, n)
        assert len(components(pd)) == 1, (kind, r, n)


def test_generate_is_deterministic():
    spec = FamilySpec.conway(3, -2)
    assert generate(spec) == generate(spec)


def test_crossing_counts():
    # four boxes of sizes r+1, r, r+1, r plus the 2|n| clasp crossings
    for r, n in [(2, 1), (3, -2), (-4, 3)]:
        pd = generate(FamilySpec.kt(r, n))
        assert len(pd.crossings) == 2 * abs(r + 1) + 2 * abs(r) + 2 * abs(n)


def test_torus_generator():
    pd = torus(3)
    assert len(pd.crossings) == 3
    assert writhe(pd) == 3
    assert len(components(torus(8))) == 2


def test_kt_trivial_member_is_unknotted():
    pd = generate(FamilySpec.kt(0, 5))
    assert jones(pd) == 1
    assert alexander(pd) == 1


def test_is_trivial_parameters():
    assert is_trivial_parameters(0, 7)
    assert not is_trivial_parameters(2, 1)
    assert is_trivial_parameters(-2, 3)
    assert is_trivial_parameters(1, -3)
    assert is_trivial_parameters(4, 0)
    assert not is_trivial_parameters(-3, 1)


def test_symmetry_partner():
    assert symmetry_partner(FamilySpec.kt(2, 1)) == FamilySpec.kt(-3, 1)
    assert symmetry_partner(FamilySpec.conway(-1, 4)) == FamilySpec.conway(0, 4)
    for n in range(-3, 4):
        assert symmetry_partner(FamilySpec.kt(0, n)) == FamilySpec.kt(-1, n)
    with pytest.raises(FamilySpecError):
        symmetry_partner(FamilySpec.torus2(3))


def test_mirror_partner():
    assert mirror_partner(FamilySpec.conway(2, 1)) == FamilySpec.conway(2, -1)
    assert mirror_partner(FamilySpec.kt(3, 0)) == FamilySpec.kt(3, 0)
    for r, n in GRID[::5]:
        s = FamilySpec.conway(r, n)
        assert mirror_partner(mirror_partner(s)) == s
    with pytest.raises(FamilySpecError):
        mirror_partner(FamilySpec.pretzel4(1, 2, 3, 4))


def test_parse_family_spec():
    assert parse_family_spec("conway:2,-1") == FamilySpec.conway(2, -1)
    assert parse_family_spec("KT: -3, 2") == FamilySpec.kt(-3, 2)
    assert parse_family_spec("torus2:5") == FamilySpec.torus2(5)
    assert parse_family_spec("pretzel4:3,-2,-3,2").params == (3, -2, -3, 2)
    assert FamilySpec.conway(2, -1).label() == "conway:2,-1"
    for bad in ("conway:2", "knot:1,2", "kt", "torus2:0", "kt:1,x"):
        with pytest.raises(FamilySpecError):
            parse_family_spec(bad)


def test_conway_smoothing_gives_opposite_trefoils():
    tr = twist_region_skein_triple("Conway", 2, 1)
    got = sorted((jones(k).render() for k in tr.smooth_components()))
    want = sorted((jones(torus(3)).render(), jones(torus(-3)).render()))
    assert got == want


def test_kt_smoothing_gives_unknot_and_square_knot():
    tr = twist_region_skein_triple("KT", 2, 1)
    k1, k2 = tr.smooth_components()
    square = connected_sum(torus(3), torus(-3))
    assert jones(k1) == jones(square)
    assert jones(k2) == 1


@pytest.mark.parametrize("kind", ["KT", "Conway"])
@pytest.mark.parametrize("r", range(-5, 6))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_twist_region_triple_shape(kind, r, n):
    tr = twist_region_skein_triple(kind, r, n)
    assert len(components(tr.k_smooth)) == 2
    assert tr.k_plus == generate(FamilySpec(kind, (r, n)))
    assert jones(tr.k_minus) == jones(generate(FamilySpec(kind, (r, n - 1))))


def test_twist_region_triple_needs_positive_n():
    with pytest.raises(ValueError):
        twist_region_skein_triple("Conway", 2, 0)
    with pytest.raises(ValueError):
        twist_region_skein_triple("Conway", 2, -1)
    with pytest.raises(FamilySpecError):
        twist_region_skein_triple("Torus2", 2, 1)


@pytest.mark.parametrize("k", range(1, 9))
def test_torus_triple(k):
    tr = torus_skein_triple(k)
    assert jones(tr.k_plus) == jones(torus(2 * k + 1))
    if k > 1:
        assert jones(tr.k_minus) == jones(torus(2 * k - 1))
    else:
        assert jones(tr.k_minus) == 1
    assert len(components(tr.k_smooth)) == 2
