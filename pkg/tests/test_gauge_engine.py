import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL, TINY, UPTO24, table
from loopblocks.double_mtc import anyons, fusion_tensor, s_matrix
from loopblocks.gauge_engine import (
    PathDisagreement,
    SectorArrays,
    anyon_sector,
    burnside_orbit_count,
    check_two_paths,
    entropy_general,
    gauge_blocks,
    gsd,
    multiplicity_smatrix,
    perm_trace,
    sector_arrays,
    stabilizer_and_orbit,
    tee_general,
    tee_minimal,
)
from loopblocks.group_core import commuting_tuples, conjugation_orbits, evaluate_word
from loopblocks.rep_theory import R, subgroup_table
from loopblocks.topology import (
    BipartitionSpec,
    LatticeCounts,
    Lens,
    Mixed,
    NonorientPair,
    OrientPair,
    SpecError,
    TorusSlab,
    side_groupoids,
)


def brute_trace(g, side, phi, g_phi):
    """Fixed points of g_phi on the preimage of phi, by looping over free generators."""
    pres = side.presentation
    bgens = side.boundary_generators
    free = side.free_generators
    count = 0
    for vals in itertools.product(range(g.order), repeat=len(free)):
        assign = [0] * pres.num_generators
        for gen, v in zip(bgens, phi):
            assign[gen] = v
        for gen, v in zip(free, vals):
            assign[gen] = v
        if any(evaluate_word(g, w, assign) != 0 for w in pres.relators):
            continue
        if all(g.product([g_phi[t], h, g.inv(g_phi[s])]) == h for h, (s, t) in zip(assign, side.arrows)):
            count += 1
    return count


def test_stabilizer_examples():
    g = table("D6").group
    s = g.element_index("s")
    st_ = stabilizer_and_orbit(OrientPair(0, 0, 2), g, (s, s))
    assert (st_.orbit_size, st_.order) == (9, 4)
    st_ = stabilizer_and_orbit(OrientPair(0, 0, 2), g, (0, 0))
    assert (st_.orbit_size, st_.order) == (1, 36)
    r = g.element_index("r")
    st_ = stabilizer_and_orbit(OrientPair(0, 0, 2), g, (r, s))
    assert st_.factors == (g.centralizer([r]), g.centralizer([s]))
    with pytest.raises(SpecError):
        stabilizer_and_orbit(OrientPair(0, 0, 2), g, (0,))


@pytest.mark.parametrize("name", ["S3", "Z2", "Q8"])
def test_perm_trace_against_brute_force(name):
    ct = table(name)
    g = ct.group
    for v in (OrientPair(0, 0, 2), OrientPair(1, 0, 1), NonorientPair(1, 1, 2), Mixed(0, 1, 2)):
        xs, _, _ = side_groupoids(v)
        n = len(xs.boundary_generators)
        for phi in itertools.product(range(g.order), repeat=n):
            stab = stabilizer_and_orbit(v, g, phi)
            for g_phi in itertools.product(*stab.factors):
                got = perm_trace(v, ct, "X", phi, g_phi)
                assert got == brute_trace(g, xs, phi, g_phi)


def test_perm_trace_properties():
    ct = table("D6")
    g = ct.group
    cls = g.conjugacy.class_of
    v = OrientPair(0, 0, 2)
    for phi in itertools.product(range(6), repeat=2):
        stab = stabilizer_and_orbit(v, g, phi)
        r = R(ct, 0, 2, [cls[x] for x in phi])
        assert perm_trace(v, ct, "X", phi, (0, 0)) == r
        for h1, h2 in itertools.product(*stab.factors):
            if perm_trace(v, ct, "X", phi, (h1, h2)):
                assert cls[h1] == cls[h2]
    z2 = table("Z2")
    for phi in itertools.product(range(2), repeat=2):
        full = perm_trace(v, z2, "X", phi, (0, 0))
        for h in itertools.product(range(2), repeat=2):
            assert perm_trace(v, z2, "X", phi, h) == full * (h[0] == h[1])


def _brute_x(ct, spec, phi):
    g = ct.group
    xs, _, _ = side_groupoids(spec)
    stab = stabilizer_and_orbit(spec, g, phi)
    tabs = [subgroup_table(g, f) for f in stab.factors]
    out = {}
    for alpha in itertools.product(*[range(t.num_irreps) for t in tabs]):
        acc = 0j
        for g_phi in itertools.product(*stab.factors):
            chi = np.prod([t.on_parent[a, x] for t, a, x in zip(tabs, alpha, g_phi)])
            acc += chi * brute_trace(g, xs, phi, g_phi)
        out[alpha] = acc / stab.order
    return out


def test_multiplicities_match_character_projection():
    ct = table("S3")
    for v in (OrientPair(0, 0, 2), OrientPair(1, 0, 1), NonorientPair(1, 1, 2)):
        xs, _, _ = side_groupoids(v)
        for phi in itertools.product(range(6), repeat=len(xs.boundary_generators)):
            arr = sector_arrays(v, ct, phi)
            for alpha, val in _brute_x(ct, v, phi).items():
                assert arr.x[alpha] == pytest.approx(val.real, abs=1e-9) and abs(val.imag) < 1e-9


def test_tube_vacuum_multiplicity():
    ct = table("D6")
    v = OrientPair(0, 0, 2)
    # G x G acts transitively on the frame, so the vacuum sector appears once
    assert sector_arrays(v, ct, (0, 0)).x[0, 0] == 1
    # the diagonal subgroup alone acts by conjugation and sees one orbit per class
    diag = sum(perm_trace(v, ct, "X", (0, 0), (h, h)) for h in range(6)) // 6
    assert diag == ct.num_irreps == 3


@pytest.mark.parametrize("name", SMALL)
def test_disk_side_selects_vacuum(name):
    ct = table(name)
    for c in range(ct.order):
        x = sector_arrays(OrientPair(0, 1, 1), ct, (c,)).x
        expect = np.zeros_like(x)
        if c == 0:
            expect[0] = 1
        assert np.array_equal(x, expect)


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z2xZ2", "Z6"])
def test_abelian_multiplicities(name):
    ct = table(name)
    g = ct.group
    v = OrientPair(1, 0, 2)
    xs, _, _ = side_groupoids(v)
    for phi in itertools.product(range(g.order), repeat=2):
        arr = sector_arrays(v, ct, phi)
        pre = perm_trace(v, ct, "X", phi, (0, 0))
        t1 = subgroup_table(g, tuple(range(g.order)))
        for a1, a2 in itertools.product(range(g.order), repeat=2):
            trivial = np.allclose(t1.on_parent[a1] * t1.on_parent[a2], 1)
            assert arr.x[a1, a2] == (pre // g.order if trivial else 0)


@pytest.mark.parametrize("name", SMALL)
def test_smatrix_multiplicity_examples(name):
    ct = table(name)
    sm = s_matrix(ct)
    anys = sm.anyons
    for a in anys:
        assert multiplicity_smatrix(ct, True, 0, [(a.class_rep, a.irrep)]) == (a == anys[0])
    n_ = fusion_tensor(ct)
    if len(anys) <= 8:
        for i, j, k in itertools.product(range(len(anys)), repeat=3):
            a, b, c = anys[i], anys[j], anys[k]
            got = multiplicity_smatrix(ct, True, 0, [(a.class_rep, a.irrep), (b.class_rep, b.irrep), (c.class_rep, c.irrep)])
            assert got == n_[i, j, sm.index[sm.dual(c)]]


@pytest.mark.parametrize("name", SMALL)
def test_two_boundary_smatrix_pairs_duals(name):
    ct = table(name)
    sm = s_matrix(ct)
    for i, a in enumerate(sm.anyons):
        for j, b in enumerate(sm.anyons):
            got = multiplicity_smatrix(ct, True, 0, [(a.class_rep, a.irrep), (b.class_rep, b.irrep)])
            assert got == (sm.dual(a) == b)


def test_two_paths_detect_tampering():
    ct = table("S3")
    v = OrientPair(0, 0, 2)
    arr = sector_arrays(v, ct, (3, 3))
    check_two_paths(v, ct, (3, 3), arr)
    bad = SectorArrays(arr.x + 1, arr.y, arr.d)
    with pytest.raises(PathDisagreement):
        check_two_paths(v, ct, (3, 3), bad)


def _closed(v):
    if isinstance(v, OrientPair):
        if all(s == 1 for s in (v.signs or (1,) * v.n)):
            return True, v.gx + v.gy + v.n - 1
        return False, 2 * v.gx + 2 * v.gy + 2 * v.n - 2
    if isinstance(v, NonorientPair):
        return False, v.kx + v.ky + 2 * v.n - 2
    return False, 2 * v.gx + v.ky + 2 * v.n - 2


CUTS = [OrientPair(0, 0, 1), OrientPair(0, 1, 1), OrientPair(0, 0, 2), OrientPair(0, 0, 2, (1, -1)),
        OrientPair(1, 1, 1), OrientPair(0, 0, 3), NonorientPair(1, 1, 1), NonorientPair(1, 1, 2),
        Mixed(0, 1, 1), Mixed(0, 2, 1), Mixed(1, 1, 1)]


@pytest.mark.parametrize("name", TINY)
def test_sum_xy_is_gsd_and_burnside(name):
    ct = table(name)
    for v in CUTS:
        gbs = gauge_blocks(v, ct)
        orientable, genus = _closed(v)
        assert gbs.sum_xy() == gsd(ct, orientable=orientable, genus=genus) == burnside_orbit_count(v, ct), v
        for o in gbs.orbits:
            assert o.orbit_size * o.stabilizer_order == ct.order ** gbs.num_base_points
            assert all(s.x > 0 and s.y > 0 for s in o.sectors)


def test_gsd_examples():
    assert gsd(table("S3"), orientable=True, genus=0) == 1
    assert gsd(table("S3"), orientable=True, genus=1) == 8
    assert gsd(table("Z2"), orientable=False, genus=2) == 4
    d6 = table("D6")
    assert burnside_orbit_count(OrientPair(1, 1, 1), d6) == gsd(d6, orientable=True, genus=2)
    assert burnside_orbit_count(OrientPair(0, 0, 1), d6) == 1
    with pytest.raises(ValueError):
        gsd(d6, orientable=False, genus=0)


@pytest.mark.parametrize("name", UPTO24)
def test_torus_gsd_counts_anyons(name):
    ct = table(name)
    assert gsd(ct, orientable=True, genus=1) == len(anyons(ct))
    assert burnside_orbit_count(OrientPair(0, 1, 1), ct) == len(anyons(ct))


@pytest.mark.parametrize("name", ["Z2", "S3", "D8"])
def test_torus_slab_sum_xy(name):
    ct = table(name)
    g = ct.group
    triples = np.array(commuting_tuples(g, 3, want_list=True).tuples)
    orbits = len(set(conjugation_orbits(g, triples).tolist()))
    gbs = gauge_blocks(TorusSlab(3, 1), ct)
    assert gbs.sum_xy() == orbits == burnside_orbit_count(TorusSlab(3, 1), ct)


def test_gauge_blocks_rejects_unsupported():
    with pytest.raises(SpecError):
        gauge_blocks(Lens(3, 1), table("S3"))
    with pytest.raises(SpecError):
        gauge_blocks(TorusSlab(3, 2), table("S3"))


def test_tee_examples():
    d6 = table("D6")
    gbs = gauge_blocks(OrientPair(0, 0, 2), d6)
    assert tee_minimal(gbs, (0, 0), (0, 0)) == pytest.approx(2 * math.log(6))
    orbit, sector = anyon_sector(gbs, 1, 1)
    assert tee_minimal(gbs, orbit.label, sector.alpha) == pytest.approx(2 * math.log(6) - 2 * math.log(2))
    for name in ("Z2", "Z3", "Z2xZ2"):
        ct = table(name)
        gbs = gauge_blocks(OrientPair(0, 0, 2), ct)
        for o in gbs.orbits:
            for s in o.sectors:
                assert tee_minimal(gbs, o.label, s.alpha) == pytest.approx(2 * math.log(ct.order))
    with pytest.raises(KeyError):
        anyon_sector(gbs, 99, 0)


def test_entropy_general():
    z2 = table("Z2")
    spec = BipartitionSpec(OrientPair(0, 0, 2), LatticeCounts(0, 0, 5, 2))
    gbs = gauge_blocks(spec, z2)
    keys = [(o.label, s.alpha) for o in gbs.orbits for s in o.sectors]
    assert len(keys) == 4
    one = {keys[0]: [1.0]}
    minimal = tee_minimal(gbs, *keys[0])
    assert tee_general(gbs, one) == pytest.approx(minimal)
    assert entropy_general(gbs, one) == pytest.approx(3 * math.log(2) + 2 * math.log(2) - minimal)
    equal = {k: [0.5] for k in keys}
    assert tee_general(gbs, equal) == pytest.approx(minimal - math.log(4))
    with pytest.raises(ValueError):
        tee_general(gbs, {keys[0]: [0.0]})
    with pytest.raises(ValueError):
        tee_general(gbs, {keys[0]: [1.0, 1.0]})


def test_d6_general_state_weights():
    d6 = table("D6")
    gbs = gauge_blocks(OrientPair(0, 0, 2), d6)
    amps, w = {}, []
    for o in gbs.orbits:
        for s in o.sectors:
            amps[(o.label, s.alpha)] = [1.0]
            w.append(o.orbit_size * s.d)
    p = np.array(w, dtype=float) / sum(w)
    expect = 2 * math.log(6) - float(-(np.array(w) * (p / np.array(w)) * np.log(p / np.array(w))).sum())
    assert tee_general(gbs, amps) == pytest.approx(expect)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(TINY), st.sampled_from(CUTS), st.data())
def test_sectors_are_nonnegative_integers(name, v, data):
    ct = table(name)
    xs, _, _ = side_groupoids(v)
    phi = data.draw(st.lists(st.integers(0, ct.order - 1), min_size=len(xs.boundary_generators),
                             max_size=len(xs.boundary_generators)))
    arr = sector_arrays(v, ct, phi)
    assert (arr.x >= 0).all() and (arr.y >= 0).all()
    assert arr.x.dtype.kind == "i"
    stab = stabilizer_and_orbit(v, ct.group, phi)
    assert int((arr.d**2).sum()) == stab.order
    # x sums to the number of preimage orbits weighted by dimension: sum_alpha d x = |preimage|
    assert int((arr.d * arr.x).sum()) == perm_trace(v, ct, "X", phi, (0,) * len(stab.factors))
