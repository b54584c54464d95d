import pytest

from ktconway.diagram import (
    Crossing,
    InvalidDiagram,
    PDCode,
    PDParseError,
    change_crossing,
    component_diagram,
    components,
    connected_sum,
    format_pd,
    linking_number,
    mirror,
    parse_pd,
    parse_pd_line,
    remove_kinks,
    skein_triple_at,
    split_union,
    validate,
    writhe,
)
from ktconway.families import FamilySpec, generate
from ktconway.invariants import alexander, conway, jones

from conftest import MISPRINTED_TREFOIL_PD, TREFOIL_PD, random_braid_knot


def torus(k):
    return generate(FamilySpec.torus2(k))


def test_validate_examples():
    assert validate(PDCode.unknot()) == []
    assert validate(generate(FamilySpec.kt(2, 1))) == []
    bad = PDCode((Crossing(1, 5, 2, 4, 1), Crossing(3, 1, 4, 6, 1), Crossing(5, 3, 1, 2, 1)))
    problems = validate(bad)
    assert len(problems) == 1
    assert "1" in problems[0]


def test_from_tuples_rejects_triple_label():
    with pytest.raises((InvalidDiagram, PDParseError)):
        parse_pd("PD[X(1,5,2,4),X(3,1,4,6),X(5,3,1,2)]")


def test_components():
    assert len(components(torus(3))) == 1
    assert len(components(torus(4))) == 2
    assert len(components(generate(FamilySpec.pretzel4(3, -2, -3, 2)))) == 2
    assert components(PDCode.unknot()) == [()]


def test_writhe():
    assert writhe(PDCode.unknot()) == 0
    assert writhe(torus(3)) == 3
    assert writhe(torus(-5)) == -5
    for k in (3, 4, -7):
        pd = torus(k)
        assert writhe(mirror(pd)) == -writhe(pd)


@pytest.mark.parametrize("k", range(1, 9))
def test_linking_number_of_torus_links(k):
    assert linking_number(torus(2 * k), 0, 1) == k
    assert linking_number(torus(-2 * k), 0, 1) == -k


def test_linking_number_errors_and_split_union():
    link = split_union(PDCode.unknot(), PDCode.unknot())
    assert len(components(link)) == 2
    assert linking_number(link, 0, 1) == 0
    with pytest.raises(ValueError):
        linking_number(torus(4), 0, 0)


def test_mirror_is_an_involution():
    for pd in (torus(3), generate(FamilySpec.conway(2, 1)), generate(FamilySpec.kt(-3, 2))):
        assert mirror(mirror(pd)).canonical() == pd.canonical()
    assert mirror(PDCode.unknot()) == PDCode.unknot()


def test_crossing_flip_changes_sign_only():
    for cr in torus(3).crossings:
        f = cr.flipped()
        assert f.sign == -cr.sign
        assert set(f.arcs) == set(cr.arcs)
        assert f.under != cr.under


def test_connected_sum_with_unknot():
    k = generate(FamilySpec.conway(2, -1))
    s = connected_sum(k, PDCode.unknot())
    assert jones(s) == jones(k)
    assert alexander(s) == alexander(k)


def test_connected_sum_is_additive():
    t3, m3 = torus(3), torus(-3)
    s = connected_sum(t3, m3)
    assert len(components(s)) == 1
    assert validate(s) == []
    assert conway(s).a2 == conway(t3).a2 + conway(m3).a2 == 2
    assert conway(s).full == conway(t3).full * conway(m3).full
    assert jones(s) == jones(t3) * jones(m3)


def test_connected_sum_rejects_links():
    with pytest.raises(ValueError):
        connected_sum(torus(4), torus(3))


def test_connected_sum_random(rng):
    for _ in range(5):
        a, b = random_braid_knot(rng), random_braid_knot(rng)
        s = connected_sum(a, b)
        assert jones(s) == jones(a) * jones(b)
        assert alexander(s) == alexander(a) * alexander(b)


def test_canonical_is_label_independent():
    pd = torus(5)
    shifted = PDCode(tuple(c.relabel({x: x + 100 for x in pd.arcs}) for c in pd.crossings))
    assert shifted.canonical() == pd.canonical()
    assert shifted.same_diagram(pd)


def test_change_crossing_and_kinks():
    pd = torus(3)
    unknotted = change_crossing(pd, 0)
    assert writhe(unknotted) == 1
    assert jones(unknotted) == 1
    assert remove_kinks(torus(1)) == PDCode.unknot()
    assert remove_kinks(torus(-1)) == PDCode.unknot()
    assert remove_kinks(pd) == pd


def test_skein_triple_at_shapes(rng):
    pd = random_braid_knot(rng, 4, 7)
    for i in range(len(pd.crossings)):
        tr = skein_triple_at(pd, i)
        assert len(components(tr.k_smooth)) == 2
        assert len(components(tr.k_plus)) == len(components(tr.k_minus)) == 1
        k1, k2 = tr.smooth_components()
        assert len(components(k1)) == len(components(k2)) == 1


def test_component_diagram_of_torus_link():
    link = torus(6)
    for idx in (0, 1):
        part = component_diagram(link, idx)
        assert jones(part) == 1


def test_parse_and_format_round_trip():
    name, pd = parse_pd_line("trefoil: " + TREFOIL_PD)
    assert name == "trefoil"
    assert len(pd.crossings) == 3
    assert writhe(pd) == 3
    text = format_pd(pd, "x")
    assert parse_pd_line(text)[1].canonical() == pd.canonical()
    assert parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]") == pd
    assert parse_pd("PD[]") == PDCode.unknot()


def test_names_may_contain_colons():
    name, _ = parse_pd_line("conway:2,-1: " + TREFOIL_PD)
    assert name == "conway:2,-1"


@pytest.mark.parametrize(
    "text, column",
    [
        ("PD[X(1,2,3)]", 4),
        ("PD[X(1,5,2,4) X(3,1,4,6)]", 15),
        ("X(1,2,3,4)", 1),
    ],
)
def test_parse_errors_carry_position(text, column):
    with pytest.raises(PDParseError) as err:
        parse_pd_line(text, line=7)
    assert err.value.line == 7
    assert err.value.column == column
    assert "line 7" in str(err.value)


def test_misprinted_trefoil_is_a_link():
    pd = parse_pd(MISPRINTED_TREFOIL_PD)
    assert len(components(pd)) == 3
