import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loopblocks.group_core import GroupPresentation
from loopblocks.topology import (
    BipartitionSpec,
    GenericPresentation,
    LatticeCounts,
    Lens,
    Mixed,
    NonorientPair,
    OrientPair,
    SpecError,
    TorusSlab,
    boundary_label_space,
    generic_from_spec,
    lens_canonical,
    num_base_points,
    parse_cut,
    parse_lattice,
    side_groupoids,
    spec_from_strings,
    surface_presentation,
    validate,
)


def test_validate_examples():
    spec, man = validate(OrientPair(0, 1, 1, (1,)))
    assert (man.orientable, man.genus) == (True, 1)
    assert spec.lattice.num_base_points == 1
    spec, man = validate(OrientPair(0, 0, 2, (1, -1)))
    assert (man.orientable, man.genus) == (False, 2)
    assert spec.lattice.num_base_points == 2
    spec, man = validate(NonorientPair(1, 1, 1))
    assert (man.orientable, man.genus) == (False, 2)
    assert spec.lattice.num_base_points == 1


def test_sign_normalization():
    spec, _ = validate(OrientPair(0, 0, 2, (-1, 1)))
    assert spec.variant.signs == (1, -1)
    spec, man = validate(OrientPair(1, 0, 2, (-1, -1)))
    assert spec.variant.signs == (1, 1) and man.genus == 2


def test_ignored_signs_warn():
    with pytest.warns(UserWarning):
        spec, _ = validate(NonorientPair(1, 1, 2, (1, -1)))
    assert spec.variant.signs is None
    with pytest.warns(UserWarning):
        validate(Mixed(0, 1, 1, (1,)))


@pytest.mark.parametrize(
    "bad",
    [
        OrientPair(-1, 0, 1),
        OrientPair(0, 0, 0),
        OrientPair(0, 0, 2, (1, 2)),
        NonorientPair(0, 1, 1),
        Mixed(0, 0, 1),
        TorusSlab(1, 1),
        TorusSlab(3, 4),
        Lens(4, 2),
        Lens(0, 3),
    ],
)
def test_invalid_specs(bad):
    with pytest.raises(SpecError):
        validate(bad)


def test_lattice_counts():
    with pytest.raises(SpecError):
        LatticeCounts(0, 0, 1, 2)
    with pytest.raises(SpecError):
        LatticeCounts(-1, 0, 1, 1)
    with pytest.raises(SpecError):
        validate(BipartitionSpec(OrientPair(0, 0, 2), LatticeCounts(1, 1, 3, 1)))
    lat = LatticeCounts(2, 3, 4, 2)
    assert lat.total == 9


def test_lens_canonical():
    assert lens_canonical(2, 5) == (2, 1)
    assert lens_canonical(1, 7) == (1, 0)
    assert lens_canonical(0, 1) == (0, 1)
    assert lens_canonical(0, -1) == (0, 1)
    assert lens_canonical(-5, -2) == (5, 2)
    with pytest.raises(SpecError):
        lens_canonical(6, 3)


def test_label_spaces():
    ls = boundary_label_space(OrientPair(0, 0, 2))
    assert (ls.kind, ls.arity) == ("surface", 2)
    ls = boundary_label_space(TorusSlab(4, 2))
    assert (ls.kind, ls.arity) == ("commuting", 2)
    ls = boundary_label_space(TorusSlab(3, 1))
    assert ls.kind == "commuting-pair"
    ls = boundary_label_space(Lens(3, 1))
    assert (ls.kind, ls.q) == ("lens", 3)


def test_base_points():
    assert num_base_points(OrientPair(0, 0, 3)) == 3
    assert num_base_points(TorusSlab(3, 1)) == 2
    assert num_base_points(TorusSlab(3, 2)) == 1
    assert num_base_points(Lens(5, 2)) == 1


def test_parsing():
    assert parse_cut("orient:gx=1,gy=1,n=1,s=+") == OrientPair(1, 1, 1, (1,))
    assert parse_cut("nonorient:kx=1,ky=1,n=1") == NonorientPair(1, 1, 1)
    assert parse_cut("mixed:gx=0,ky=1,n=1") == Mixed(0, 1, 1)
    assert parse_cut("torus-slab:n=3,k=2") == TorusSlab(3, 2)
    assert parse_cut("lens:q=3,p=1") == Lens(3, 1)
    for bad in ["orient:gx=1", "orient gx=1", "blob:n=1", "orient:gx=a,gy=0,n=1", "orient:gx=0,gy=0,n=2,s=+"]:
        with pytest.raises(SpecError):
            parse_cut(bad)
    assert parse_lattice("vx=2,vy=3,vb=4", 2) == LatticeCounts(2, 3, 4, 2)
    assert parse_lattice(None, 1) == LatticeCounts(0, 0, 1, 1)
    with pytest.raises(SpecError):
        parse_lattice("vz=1", 1)
    spec = spec_from_strings("orient:gx=0,gy=0,n=2,s=+-", "vx=1,vy=1,vb=5")
    assert spec.lattice == LatticeCounts(1, 1, 5, 2)


def test_presentation_file(tmp_path):
    x = GroupPresentation(2, ((1, 2, -1, -2),), ((1,),))
    y = GroupPresentation(1, (), ((1,),))
    p = tmp_path / "cut.json"
    p.write_text(json.dumps({"x": x.to_json(), "y": y.to_json(), "base_points": 1}))
    v = parse_cut(f"pres:{p}")
    assert isinstance(v, GenericPresentation) and v.pres_x == x
    with pytest.raises(SpecError):
        validate(GenericPresentation(x, GroupPresentation(1), 1))


def test_surface_presentation_shape():
    pres = surface_presentation(True, 1, 2, (1, -1))
    assert pres.names == ("a1", "b1", "c1", "c2", "f2")
    assert pres.relators == ((1, 2, -1, -2, 3, -5, 4, 5),)
    assert pres.boundary_words == ((3,), (-4,))
    pres = surface_presentation(False, 2, 1)
    assert pres.relators == ((1, 1, 2, 2, 3),)


def test_side_groupoids_and_generic_rewrite():
    xs, ys, signs = side_groupoids(OrientPair(1, 0, 2, (1, -1)))
    assert xs.num_base_points == 2 and signs == (1, -1)
    assert xs.free_generators == (0, 1, 4)
    gp = generic_from_spec(Lens(3, 1))
    assert gp.num_base_points == 1
    with pytest.raises(SpecError):
        side_groupoids(Lens(3, 1))


surface_variants = st.one_of(
    st.builds(
        OrientPair,
        st.integers(0, 3),
        st.integers(0, 3),
        st.integers(1, 3),
    ),
    st.builds(NonorientPair, st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)),
    st.builds(Mixed, st.integers(0, 3), st.integers(1, 3), st.integers(1, 3)),
    st.builds(TorusSlab, st.integers(2, 5), st.just(1)),
    st.builds(Lens, st.integers(1, 12), st.just(1)),
)


@given(surface_variants)
def test_validate_is_idempotent(variant):
    spec, man = validate(variant)
    again, man2 = validate(spec)
    assert again == spec and man2 == man


@given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3))
def test_euler_characteristic_adds(gx, gy, n):
    # chi(M) = chi(X) + chi(Y) since the glued circles have chi = 0
    _, man = validate(OrientPair(gx, gy, n))
    assert 2 - 2 * man.genus == (2 - 2 * gx - n) + (2 - 2 * gy - n)
    _, man = validate(Mixed(gx, gy + 1, n))
    assert 2 - man.genus == (2 - 2 * gx - n) + (2 - (gy + 1) - n)
