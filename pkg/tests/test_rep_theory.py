import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL, UPTO24, table
from loopblocks import rep_theory as rt
from loopblocks.group_core import count_homs, from_name
from loopblocks.rep_theory import (
    K,
    R,
    K_tensor,
    R_tensor,
    RoundingError,
    closed_hom_count,
    fs_indicators,
    gluing_identity,
    higher_fs,
    lens_image_size,
    regular_delta,
    round_int,
)
from loopblocks.topology import surface_presentation


def brute_surface_count(g, orientable, genus, boundary):
    """Solutions of prod(handles) c_1 prod_{j>1} f_j^-1 c_j f_j = 1 by plain loops."""
    n = len(boundary)
    handles = 2 * genus if orientable else genus
    total = 0
    for free in itertools.product(range(g.order), repeat=handles + max(n - 1, 0)):
        gens, frames = free[:handles], free[handles:]
        acc = 0
        if orientable:
            for a, b in zip(gens[::2], gens[1::2]):
                acc = g.product([acc, a, b, g.inv(a), g.inv(b)])
        else:
            for a in gens:
                acc = g.product([acc, a, a])
        for j, c in enumerate(boundary):
            if j == 0:
                acc = g.mul(acc, c)
            else:
                f = frames[j - 1]
                acc = g.product([acc, g.inv(f), c, f])
        total += acc == 0
    return total


def test_d6_characters():
    ct = table("D6")
    got = np.real_if_close(ct.on_elements).round(9)
    assert got.tolist() == [[1, 1, 1, 1, 1, 1], [1, 1, 1, -1, -1, -1], [2, -1, -1, 0, 0, 0]]
    assert fs_indicators(ct).iota == (1, 1, 1)


def test_small_tables():
    assert np.real(table("Z2").on_elements).tolist() == [[1, 1], [1, -1]]
    q8 = table("Q8")
    assert q8.dims.tolist() == [1, 1, 1, 1, 2]
    assert q8.fs.iota == (1, 1, 1, 1, -1)
    z3 = table("Z3")
    assert z3.fs.iota == (1, 0, 0)


@pytest.mark.parametrize("name", UPTO24)
def test_orthogonality_and_dimensions(name):
    ct = table(name)
    w = ct.class_sizes / ct.order
    gram = (ct.chars * w) @ ct.chars.conj().T
    assert np.allclose(gram, np.eye(ct.num_irreps), atol=1e-9)
    col = ct.chars.T @ ct.chars.conj()
    assert np.allclose(col, np.diag(ct.centralizer_orders), atol=1e-8)
    assert int((ct.dims.astype(int) ** 2).sum()) == ct.order
    assert np.allclose(ct.chars[:, 0], ct.dims)
    assert np.allclose(ct.chars[0], 1)
    assert set(ct.fs.iota) <= {-1, 0, 1} and ct.fs.iota[0] == 1


@pytest.mark.parametrize("name", UPTO24)
def test_higher_indicators(name):
    ct = table(name)
    g = ct.group
    for a in range(ct.num_irreps):
        assert higher_fs(ct, 1, a) == pytest.approx(1.0 if a == 0 else 0.0, abs=1e-9)
        assert higher_fs(ct, 2, a) == pytest.approx(ct.fs.iota[a], abs=1e-9)
        assert higher_fs(ct, 0, a) == pytest.approx(float(ct.dims[a]), abs=1e-9)
    for q in range(1, 7):
        assert lens_image_size(ct, q) == int(np.count_nonzero(g.power_map(q) == 0))


def test_lens_image_s3():
    assert lens_image_size(table("S3"), 2) == 4


def test_R_examples():
    ct = table("D6")
    cls = ct.group.conjugacy
    r = cls.class_of[1]
    assert R(ct, 1, 1, [0]) == 18
    assert R(ct, 0, 2, [r, ct.inverse_class[r]]) == 3
    for c in range(ct.num_irreps):
        assert R(ct, 0, 1, [c]) == (1 if c == 0 else 0)


def test_K_examples():
    z2 = table("Z2")
    assert [K(z2, 1, 1, [c]) for c in range(2)] == [2, 0]
    assert K(table("D6"), 1, 1, [0]) == 4


def test_bad_arguments():
    ct = table("S3")
    with pytest.raises(ValueError):
        R(ct, 0, 2, [0])
    with pytest.raises(ValueError):
        K(ct, 0, 1, [0])
    with pytest.raises(RoundingError):
        round_int(0.5)
    with pytest.raises(ValueError):
        higher_fs(ct, -1, 0)


def test_regular_delta():
    d6 = table("D6")
    g = d6.group
    assert regular_delta(d6, 0) == 1
    assert regular_delta(d6, 1) == 0
    s = g.element_index("s")
    lhs = sum(regular_delta(d6, g.mul(g.conj(s, h), s)) for h in range(6))
    c = g.conjugacy.class_of[s]
    rhs = (d6.chars[:, c] * d6.chars[:, c]).sum()
    assert lhs == 2 and rhs == pytest.approx(2)


@pytest.mark.parametrize("name", [n for n in SMALL if from_name(n).order <= 8])
def test_R_and_K_match_brute_force(name):
    ct = table(name)
    g = ct.group
    reps = g.conjugacy.class_rep
    for orientable, genus, n in [(True, 0, 2), (True, 0, 3), (True, 1, 1), (True, 1, 2),
                                 (False, 1, 1), (False, 1, 2), (False, 2, 1)]:
        if (2 * genus if orientable else genus) + n - 1 > 3:
            continue
        for cls in itertools.product(range(ct.num_irreps), repeat=n):
            elems = [int(reps[c]) for c in cls]
            expect = brute_surface_count(g, orientable, genus, elems)
            got = R(ct, genus, n, cls) if orientable else K(ct, genus, n, cls)
            assert got == expect, (orientable, genus, cls)


@pytest.mark.parametrize("name", UPTO24)
def test_closed_counts(name):
    ct = table(name)
    g = ct.group
    assert closed_hom_count(ct, orientable=True, genus=0) == 1
    assert closed_hom_count(ct, orientable=True, genus=1) == g.order * ct.num_irreps
    assert closed_hom_count(ct, orientable=False, genus=1) == int(np.count_nonzero(g.power_map(2) == 0))
    real = sum(1 for i in ct.fs.iota if i != 0)
    assert closed_hom_count(ct, orientable=False, genus=2) == g.order * real


@pytest.mark.parametrize("name", SMALL)
def test_symmetry_under_inversion(name):
    ct = table(name)
    inv = ct.inverse_class
    for n in (1, 2, 3):
        r = R_tensor(ct, 1, n)
        k = K_tensor(ct, 1, n)
        idx = np.ix_(*([inv] * n))
        assert np.array_equal(r, r[idx])
        # K is invariant under inverting any single boundary component
        for j in range(n):
            perm = [np.arange(ct.num_irreps)] * n
            perm[j] = inv
            assert np.array_equal(k, k[np.ix_(*perm)])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.booleans(), st.integers(0, 1), st.integers(2, 3), st.data())
def test_hom_counts_are_permutation_symmetric(name, orientable, genus, n, data):
    # justifies checking only nondecreasing label tuples when ordered ones are too many
    ct = table(name)
    g = ct.group
    if not orientable:
        genus += 1
    pres = surface_presentation(orientable, genus, n)
    first = 2 * genus if orientable else genus
    reps = g.conjugacy.class_rep
    cls = data.draw(st.lists(st.integers(0, ct.num_irreps - 1), min_size=n, max_size=n))
    perm = data.draw(st.permutations(range(n)))

    def direct(labels):
        return count_homs(g, pres, fixed={first + j: int(reps[c]) for j, c in enumerate(labels)})

    assert direct(cls) == direct([cls[i] for i in perm])

@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(SMALL),
    st.sampled_from(["RR", "KK", "RK"]),
    st.integers(0, 2),
    st.integers(1, 2),
    st.integers(1, 3),
)
def test_gluing_identities(name, kind, x, y, n):
    ct = table(name)
    if kind == "KK":
        x = max(x, 1)
    lhs, rhs = gluing_identity(ct, kind, x, y if kind != "RR" else y - 1, n)
    assert lhs == rhs


def test_round_tolerance_is_read_at_call_time(monkeypatch):
    monkeypatch.setattr(rt, "ROUND_TOL", 0.2)
    assert round_int(2.15) == 2
    monkeypatch.setattr(rt, "ROUND_TOL", 1e-6)
    with pytest.raises(RoundingError):
        round_int(2.15)
