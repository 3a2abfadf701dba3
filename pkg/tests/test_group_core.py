import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import UPTO24, table
from loopblocks._config import CapExceeded
from loopblocks.group_core import (
    BUILTIN_NAMES,
    FiniteGroup,
    GroupError,
    GroupPresentation,
    builtin,
    centralizer_of_tuple,
    commuting_tuples,
    conjugation_orbits,
    count_homs,
    direct_product,
    enumerate_homs,
    evaluate_word,
    from_name,
    load_group,
    subgroup,
)

COMMUTATOR = GroupPresentation(2, ((1, 2, -1, -2),))


def idx(g, *names):
    return [g.element_index(n) for n in names]


def test_d6_classes_and_element_order():
    g = builtin("D", 6)
    assert g.order == 6
    assert g.element_names == ("1", "r", "r2", "s", "sr", "sr2")
    r, r2, s = idx(g, "r", "r2", "s")
    assert g.mul(r, r) == r2 and g.mul(s, s) == 0
    assert g.product([s, r, s]) == r2
    classes = sorted(sorted(c) for c in g.conjugacy.classes)
    assert classes == [[0], [1, 2], [3, 4, 5]]


def test_abelian_and_quaternion_classes():
    z4 = builtin("Z", 4)
    assert z4.is_abelian and z4.conjugacy.num_classes == 4
    assert all(len(z4.centralizer([x])) == 4 for x in range(4))
    q8 = builtin("Q", 8)
    assert q8.order == 8 and q8.conjugacy.num_classes == 5


def test_d6_centralizers():
    g = from_name("D6")
    r, s, sr = idx(g, "r", "s", "sr")
    assert g.centralizer([r]) == (0, 1, 2)
    assert g.centralizer([s]) == (0, s)
    assert centralizer_of_tuple(g, (s, sr)) == (0,)
    assert centralizer_of_tuple(g, (0, 0, 0)) == tuple(range(6))


def test_commuting_tuple_counts():
    assert commuting_tuples(from_name("D6"), 2).count == 18
    assert commuting_tuples(from_name("Q8"), 2).count == 40
    for name in ("S3", "Q8", "A4"):
        g = from_name(name)
        assert commuting_tuples(g, 0).count == 1
        assert commuting_tuples(g, 1).count == g.order


def test_commuting_tuples_listing_and_within():
    g = from_name("D6")
    res = commuting_tuples(g, 2, want_list=True)
    brute = [(a, b) for a in range(6) for b in range(6) if g.mul(a, b) == g.mul(b, a)]
    assert res.tuples == brute
    rot = g.centralizer([1])
    assert commuting_tuples(g, 3, within=rot).count == 27


def test_list_cap(monkeypatch):
    monkeypatch.setenv("LOOPBLOCKS_CAP", "10")
    with pytest.raises(CapExceeded):
        commuting_tuples(from_name("D6"), 2, want_list=True)
    assert commuting_tuples(from_name("D6"), 2).count == 18


def test_hom_enumeration_examples():
    d6, s3 = from_name("D6"), from_name("S3")
    assert enumerate_homs(d6, COMMUTATOR).shape[0] == 18
    assert count_homs(s3, GroupPresentation(1, ((1, 1),))) == 4
    for g in (d6, s3, from_name("Q8")):
        assert count_homs(g, GroupPresentation(1, ((1,),))) == 1


def test_hom_enumeration_is_sorted_and_correct():
    g = from_name("S3")
    pres = GroupPresentation(2, ((1, 1), (2, 2, 2)))
    homs = enumerate_homs(g, pres)
    brute = [(a, b) for a, b in itertools.product(range(6), repeat=2)
             if g.mul(a, a) == 0 and g.product([b, b, b]) == 0]
    assert [tuple(r) for r in homs.tolist()] == brute


def test_hom_fixed_generators():
    g = from_name("D6")
    assert count_homs(g, COMMUTATOR, fixed={1: 1}) == 3
    assert count_homs(g, COMMUTATOR, fixed={1: 0}) == 6


@pytest.mark.parametrize("name", UPTO24)
def test_commutator_homs_equal_commuting_pairs(name):
    g = from_name(name)
    assert count_homs(g, COMMUTATOR) == commuting_tuples(g, 2).count


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_tables_are_groups(name):
    g = from_name(name)
    FiniteGroup(g.cayley, name=name)  # full validation
    ar = np.arange(g.order)
    assert np.all(g.cayley[ar, g.inverse] == 0)
    conj = g.conjugacy
    assert int(conj.class_sizes.sum()) == g.order
    for rep, size in zip(conj.class_rep, conj.class_sizes):
        assert size * len(g.centralizer([rep])) == g.order
        assert rep == min(conj.classes[conj.class_of[rep]])


@pytest.mark.parametrize("name", UPTO24)
def test_centralizer_orders_match_characters(name):
    ct = table(name)
    col = (np.abs(ct.chars) ** 2).sum(axis=0)
    g = ct.group
    expect = [len(g.centralizer([c])) for c in g.conjugacy.class_rep]
    assert np.allclose(col, expect, atol=1e-8)


def test_invalid_tables_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(GroupError):
        FiniteGroup([[1, 0], [0, 1]])
    # a Latin square with identity that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associative"):
        FiniteGroup(loop)


def test_unknown_names_and_families():
    with pytest.raises(GroupError):
        builtin("X", 3)
    with pytest.raises(GroupError):
        from_name("D6y")


def test_direct_product_and_subgroup():
    g = direct_product(from_name("Z2"), from_name("S3"))
    assert g.order == 12 and g.conjugacy.num_classes == 6
    assert from_name("Z3xS3").conjugacy.num_classes == 9
    d6 = from_name("D6")
    sub = subgroup(d6, d6.centralizer([1]))
    assert sub.order == 3 and sub.is_abelian


def test_load_group_files(tmp_path):
    d6 = from_name("D6")
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"order": 6, "cayley": d6.cayley.tolist()}))
    g = load_group(f"file:{p}")
    assert g.order == 6 and commuting_tuples(g, 2).count == 18
    p.write_text(json.dumps({"family": "Q", "param": 8}))
    assert load_group(f"file:{p}").conjugacy.num_classes == 5
    p.write_text(json.dumps({"order": 5, "cayley": d6.cayley.tolist()}))
    with pytest.raises(GroupError):
        load_group(f"file:{p}")


def test_presentation_validation_and_json():
    with pytest.raises(GroupError):
        GroupPresentation(1, ((2,),))
    pres = GroupPresentation(2, ((1, 2, -1, -2),), ((1,),), ("a", "b"))
    assert GroupPresentation.from_json(json.loads(json.dumps(pres.to_json()))) == pres
    assert pres.generator("b") == 2


def test_conjugation_orbits():
    g = from_name("D6")
    rows = np.array(list(itertools.product(range(6), repeat=2)))
    ids = conjugation_orbits(g, rows)
    # pairs under simultaneous conjugation: Burnside gives sum |C(a,b)| / |G|
    burnside = sum(len(centralizer_of_tuple(g, r)) for r in rows.tolist()) // 6
    assert len(set(ids.tolist())) == burnside


group_names = st.sampled_from([n for n in UPTO24 if n != "Z1"])


@settings(max_examples=60, deadline=None)
@given(group_names, st.data())
def test_word_evaluation_is_a_homomorphism(name, data):
    g = from_name(name)
    letters = st.integers(1, 3).flatmap(lambda k: st.sampled_from([k, -k]))
    u = data.draw(st.lists(letters, max_size=6))
    v = data.draw(st.lists(letters, max_size=6))
    assign = data.draw(st.lists(st.integers(0, g.order - 1), min_size=3, max_size=3))
    lhs = evaluate_word(g, u + v, assign)
    assert lhs == g.mul(evaluate_word(g, u, assign), evaluate_word(g, v, assign))
    inv = [-x for x in reversed(u)]
    assert g.mul(evaluate_word(g, u, assign), evaluate_word(g, inv, assign)) == 0


@settings(max_examples=60, deadline=None)
@given(group_names, st.data())
def test_conjugation_and_centralizers(name, data):
    g = from_name(name)
    elems = st.integers(0, g.order - 1)
    a, b, h = data.draw(elems), data.draw(elems), data.draw(elems)
    assert g.conj(g.mul(a, b), h) == g.mul(g.conj(a, h), g.conj(b, h))
    cen = set(centralizer_of_tuple(g, (a, b)))
    assert 0 in cen
    assert all(g.mul(x, y) in cen and g.inv(x) in cen for x in cen for y in cen)
    assert g.conjugacy.class_of[a] == g.conjugacy.class_of[g.conj(a, h)]
