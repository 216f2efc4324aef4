import itertools
import json
import warnings

import pytest

import oracles
from quandlekit import (BraidWord, LinkDiagram, abelianization_rank, braid_closure, count_colorings, dihedral,
                        free_quandle, link_group, parse_braid, parse_pd, split_union, trivial, unknot,
                        wirtinger_quandle)
from quandlekit.errors import EmptyBraid, InconsistentArcs, IndexOutOfRange, WordSyntaxError
from quandlekit.finite_quandle import catalog
from quandlekit.homomorphism import is_cayley_shaped
from quandlekit.presentation import canonical_presentation

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
BRAIDS = ["s1 s1 s1", "s1 s1", "s1 s2^-1 s1 s2^-1", "s1^-1 s1^-1 s1^-1", "s1 s2 s1 s2", "s1 s1 s2 s2",
          "s1 s1 s1 s1", "s1 s2 s3"]


def rels(p):
    return [((u.head, u.tail), (v.head, v.tail)) for u, v in p.relations]


def brute(p, q):
    return oracles.brute_colorings(p.names, rels(p), q.table)


# ------------------------------------------------------------------ braids

def test_parse_braid():
    b = parse_braid("s1 s1 s1")
    assert b.strands == 2 and b.letters == ((1, 1),) * 3
    assert parse_braid("s1 s2^-1 s1 s2^-1").strands == 3
    assert parse_braid("s1", strands=4).strands == 4
    with pytest.raises(EmptyBraid):
        parse_braid("")
    with pytest.raises(WordSyntaxError):
        parse_braid("s1 t2")
    with pytest.raises(IndexOutOfRange):
        parse_braid("s0")
    with pytest.raises(IndexOutOfRange):
        parse_braid("s3", strands=2)


def test_closure_counts():
    t = braid_closure(parse_braid("s1 s1 s1"))
    assert (t.num_components, t.arcs, len(t.crossings)) == (1, 3, 3)
    assert braid_closure(parse_braid("s1 s1")).num_components == 2
    u = braid_closure(BraidWord(1, ()))
    assert (u.num_components, u.arcs, len(u.crossings)) == (1, 1, 0)


@pytest.mark.parametrize("text", BRAIDS)
def test_components_are_permutation_cycles(text):
    b = parse_braid(text)
    assert braid_closure(b).num_components == oracles.cycle_count(b.permutation())


# ----------------------------------------------------------------- wirtinger

def test_trefoil_presentation():
    p = wirtinger_quandle(braid_closure(parse_braid("s1 s1 s1")))
    assert len(p.names) == 3 and len(p.relations) == 3
    assert all(len(u.tail) == 1 and u.tail[0][1] == 1 and not v.tail for u, v in p.relations)
    # each arc is an under-in once and an under-out once
    assert sorted(u.head for u, _ in p.relations) == sorted(p.names)
    assert sorted(v.head for _, v in p.relations) == sorted(p.names)
    assert count_colorings(p, dihedral(3)) == 9


def test_unknot_is_free_on_one_generator():
    p = wirtinger_quandle(unknot())
    assert canonical_presentation(p) == canonical_presentation(free_quandle(1))


def test_hopf():
    p = wirtinger_quandle(braid_closure(parse_braid("s1 s1")))
    assert len(p.names) == 2 and len(p.relations) == 2
    assert count_colorings(p, trivial(2)) == 4 == brute(p, trivial(2))


@pytest.mark.parametrize("text", BRAIDS)
def test_relations_are_cayley_shaped(text):
    p = wirtinger_quandle(braid_closure(parse_braid(text)))
    assert all(is_cayley_shaped(u, v) for u, v in p.relations)


def test_mirror_swaps_operation():
    left = wirtinger_quandle(braid_closure(parse_braid("s1 s1 s1")))
    right = wirtinger_quandle(braid_closure(parse_braid("s1^-1 s1^-1 s1^-1")))
    flipped = [((u.head, tuple((g, -e) for g, e in u.tail)), (v.head, v.tail)) for u, v in right.relations]
    # equal up to relabeling the arcs
    target = sorted(rels(left))
    found = False
    for perm in itertools.permutations(left.names):
        m = dict(zip(right.names, perm))
        moved = [((m[a], tuple((m[g], e) for g, e in t)), (m[b], ())) for (a, t), (b, _) in flipped]
        found = found or sorted(moved) == target
    assert found
    for q in catalog(5):
        assert count_colorings(left, q) == count_colorings(right, q)


# ---------------------------------------------------------------- link group

def test_link_group():
    g = link_group(unknot())
    assert g.generators == ("x0",) and g.relators == ()
    g = link_group(braid_closure(parse_braid("s1 s1 s1")))
    assert len(g.generators) == 3 and len(g.relators) == 3
    assert all(r.exponent_sum == 0 for r in g.relators)


@pytest.mark.parametrize("text", BRAIDS)
def test_abelianization_rank_counts_components(text):
    d = braid_closure(parse_braid(text))
    assert abelianization_rank(wirtinger_quandle(d)) == d.num_components


def test_rank_of_split_union():
    t = braid_closure(parse_braid("s1 s1 s1"))
    assert abelianization_rank(split_union([t, unknot()])) == 2


# --------------------------------------------------------------- split union

def test_split_union():
    assert canonical_presentation(split_union([unknot(), unknot()])) == canonical_presentation(free_quandle(2))
    t = braid_closure(parse_braid("s1 s1 s1"))
    p = split_union([t, unknot()])
    assert count_colorings(p, dihedral(3)) == 27 == brute(p, dihedral(3))
    assert p.factors == [["x0", "x1", "x2"], ["x0#1"]]
    assert [g.factor for g in p.generators] == [0, 0, 0, 1]


def test_colorings_multiply_over_split_union():
    a = wirtinger_quandle(braid_closure(parse_braid("s1 s1 s1")))
    b = wirtinger_quandle(braid_closure(parse_braid("s1 s1")))
    p = split_union([braid_closure(parse_braid("s1 s1 s1")), braid_closure(parse_braid("s1 s1"))])
    for q in catalog(4):
        assert count_colorings(p, q) == count_colorings(a, q) * count_colorings(b, q)


def test_two_component_unlink():
    p = wirtinger_quandle(braid_closure(BraidWord(2, ())))
    for k in (1, 2, 3):
        assert count_colorings(p, trivial(k)) == k * k == brute(p, trivial(k))


# ---------------------------------------------------------------------- PD

def test_pd_trefoil():
    d = parse_pd(TREFOIL_PD)
    assert (d.arcs, len(d.crossings), d.num_components) == (3, 3, 1)
    assert count_colorings(wirtinger_quandle(d), dihedral(3)) == 9
    # this code is the left-handed trefoil, the closure of s1^-3
    assert {c[3] for c in d.crossings} == {-1}


def test_pd_trefoil_matches_braid_on_catalog():
    a = wirtinger_quandle(braid_closure(parse_braid("s1 s1 s1")))
    b = wirtinger_quandle(parse_pd(TREFOIL_PD))
    for q in catalog(5):
        assert count_colorings(a, q) == count_colorings(b, q)


def test_pd_variants():
    assert parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]") == parse_pd(TREFOIL_PD)
    # hopf link: two components, each one arc
    hopf = parse_pd("X(4,1,3,2) X(2,3,1,4)")
    assert hopf.num_components == 2
    assert count_colorings(wirtinger_quandle(hopf), trivial(2)) == 4


def test_pd_errors():
    with pytest.raises(InconsistentArcs):
        parse_pd("X(1,1,1,1)")
    with pytest.raises(InconsistentArcs):
        parse_pd("X(1,2,3,4)")
    with pytest.raises(WordSyntaxError):
        parse_pd("X(1,2,3)")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert parse_pd("") == unknot()
    assert caught


def test_diagram_json_roundtrip():
    d = braid_closure(parse_braid("s1 s2^-1 s1 s2^-1"))
    assert LinkDiagram.from_json(json.loads(json.dumps(d.to_json()))) == d
    with pytest.raises(InconsistentArcs):
        LinkDiagram(2, ((0, 0, 1, 1),), ((0,), (1,)))
