import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from quandlekit import (AxiomViolation, BoundExceeded, FiniteQuandle, canonical_form, conj, coset_quandle,
                        cyclic_group, dihedral, disjoint_union_coset, dual_op, enumerate_quandles,
                        group_from_permutations, inner_group, is_isomorphic, symmetric_group, trivial, validate)
from quandlekit.errors import NotCentralizing, NotSubgroup
from quandlekit.finite_quandle import (catalog, census, is_automorphism, quandle_tables, quotient_group,
                                       relabel)

R3 = ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def small_groups():
    gs = [cyclic_group(n) for n in range(1, 13)]
    gs.append(symmetric_group(3))
    gs.append(group_from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)], "D4"))
    gs.append(group_from_permutations([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"))
    gs.append(group_from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)], "V4"))
    gs.append(group_from_permutations([(1, 2, 3, 4, 5, 0), (0, 5, 4, 3, 2, 1)], "D6"))
    return gs


def centralizer(g, z):
    return frozenset(a for a in range(g.order) if g.mul[a][z] == g.mul[z][a])


# --------------------------------------------------------------- validate

def test_dihedral3_table_validates():
    q = validate([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert q.order == 3 and q.table == R3


def test_column_not_bijective():
    with pytest.raises(AxiomViolation) as err:
        validate([[0, 0], [0, 1]])
    assert err.value.axiom == 2
    assert err.value.witness == (1, 0)


def test_idempotency_reported_first():
    with pytest.raises(AxiomViolation) as err:
        validate([[1, 0], [0, 1]])
    assert err.value.axiom == 1 and err.value.witness == (0,)


def test_distributivity_witness_is_first_in_row_major_order():
    # columns are index-fixing permutations but the table is not distributive
    t = [[0, 0, 1], [2, 1, 0], [1, 2, 2]]
    assert not oracles.axioms_hold(t)
    with pytest.raises(AxiomViolation) as err:
        validate(t)
    assert err.value.axiom == 3
    x, y, z = err.value.witness
    assert t[t[x][y]][z] != t[t[x][z]][t[y][z]]
    for a, b, c in itertools.product(range(3), repeat=3):
        if (a, b, c) == (x, y, z):
            break
        assert t[t[a][b]][c] == t[t[a][c]][t[b][c]]


def test_raw_valid_3x3_count():
    # frozen from the exhaustive filter over all 3^9 tables
    raw = oracles.all_tables_filter(3)
    assert len(raw) == 5
    assert sorted(raw) == sorted(quandle_tables(3))


def test_validate_agrees_with_oracle_on_random_tables():
    import random
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randint(1, 4)
        t = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
        ok = True
        try:
            validate(t)
        except AxiomViolation:
            ok = False
        assert ok == oracles.axioms_hold(t)


def test_bad_shapes():
    for bad in ([], [[0, 1]], [[0, 5], [1, 1]]):
        with pytest.raises(ValueError):
            validate(bad)


# ---------------------------------------------------------- constructions

def test_trivial():
    assert trivial(1).table == ((0,),)
    assert trivial(2).table == ((0, 0), (1, 1))
    validate(trivial(3).table)


def test_dihedral():
    assert dihedral(3).op(0, 1) == 2
    assert dihedral(5).op(1, 4) == 2
    for n in range(1, 9):
        validate(dihedral(n).table)


def test_conj_abelian_is_trivial():
    assert conj(cyclic_group(3)).table == trivial(3).table


def test_conj_s3_orbits():
    q = conj(symmetric_group(3))
    assert sorted(len(o) for o in inner_group(q).orbits()) == [1, 2, 3]


@pytest.mark.parametrize("g", small_groups(), ids=lambda g: g.label)
def test_group_constructions_validate(g):
    g.check()
    assert oracles.axioms_hold(conj(g).table)
    for z in range(g.order):
        for h in ({g.id}, g.closure([z]), centralizer(g, z)):
            q = coset_quandle(g, h, z)
            assert oracles.axioms_hold(q.table)
            assert q.order * len(h) == g.order
    zs = [z for z in range(g.order)][:3]
    parts = [(g.closure([z]), z) for z in zs]
    u = disjoint_union_coset(g, parts)
    assert oracles.axioms_hold(u.table)
    for a, (i, _) in enumerate(u.elements):
        for b in range(u.order):
            assert u.elements[u.table[a][b]][0] == i


def test_coset_quandle_s3_transposition():
    s3 = symmetric_group(3)
    z = s3.index((1, 0, 2))
    q = coset_quandle(s3, s3.closure([z]), z)
    assert q.order == 3
    assert canonical_form(q.table) == canonical_form(R3)


def test_coset_quandle_degenerate_cases():
    s3 = symmetric_group(3)
    assert coset_quandle(s3, {s3.id}, s3.id).table == trivial(6).table
    c4 = cyclic_group(4)
    for z in range(4):
        assert coset_quandle(c4, range(4), z).table == ((0,),)


def test_coset_quandle_errors():
    s3 = symmetric_group(3)
    z = s3.index((1, 0, 2))
    r = s3.index((1, 2, 0))
    with pytest.raises(NotCentralizing):
        coset_quandle(s3, s3.closure([r]), z)
    with pytest.raises(NotSubgroup):
        coset_quandle(s3, {s3.id, r}, s3.id)


def test_disjoint_union_s3():
    s3 = symmetric_group(3)
    t, r = s3.index((1, 0, 2)), s3.index((1, 2, 0))
    q = disjoint_union_coset(s3, [(s3.closure([t]), t), (s3.closure([r]), r)])
    assert q.order == 5
    validate(q.table)
    one = disjoint_union_coset(s3, [(s3.closure([t]), t)])
    assert one.table == coset_quandle(s3, s3.closure([t]), t).table


def test_quotient_group():
    g = cyclic_group(6)
    q, phi = quotient_group(g, {0, 3})
    q.check()
    assert q.order == 3
    assert all(phi[g.mul[a][b]] == q.mul[phi[a]][phi[b]] for a in range(6) for b in range(6))
    with pytest.raises(NotSubgroup):
        quotient_group(symmetric_group(3), symmetric_group(3).closure([symmetric_group(3).index((1, 0, 2))]))


# ------------------------------------------------------------ inner group

def test_inner_group_orders():
    assert inner_group(dihedral(3)).order == 6
    for n in range(1, 5):
        assert inner_group(trivial(n)).order == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inner_automorphisms_pointwise(n):
    for q in census(n):
        grp = inner_group(q)
        assert all(grp.generators[x][x] == x for x in range(n))
        for p in grp.elements:
            assert is_automorphism(q, p)
        assert len(grp.orbits()) == oracles.orbit_count(q.table)


# ---------------------------------------------------------------- dual_op

def test_dual_op_examples():
    assert dual_op(dihedral(3), 2, 1) == 0
    t = trivial(4)
    assert all(dual_op(t, x, y) == x for x in range(4) for y in range(4))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dual_op_inverts_columns(n):
    for q in census(n):
        for x in range(n):
            for y in range(n):
                assert dual_op(q, q.op(x, y), y) == x
                assert q.op(dual_op(q, x, y), y) == x


# ----------------------------------------------------------------- census

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labeled_counts_match_oracle(n):
    expected = oracles.column_product_tables(n)
    got = [q.table for q in enumerate_quandles(n)]
    assert got == expected


def test_labeled_counts_frozen():
    # oracle values recorded when the generator was first checked
    assert [len(quandle_tables(n)) for n in range(1, 6)] == [1, 1, 5, 36, 404]


def test_parallel_enumeration_is_identical():
    assert quandle_tables(4, jobs=2) == quandle_tables(4, jobs=1)
    assert enumerate_quandles(4, up_to_iso=True, jobs=2) == enumerate_quandles(4, up_to_iso=True)


def test_census_contains_r3_and_validates():
    reps = census(3)
    assert canonical_form(R3) in [q.table for q in reps]
    for n in range(1, 6):
        for q in census(n):
            assert oracles.axioms_hold(q.table)
            assert canonical_form(q.table) == q.table


def test_canonical_form_matches_numpy_oracle():
    for n in range(1, 5):
        for t in quandle_tables(n):
            assert canonical_form(t) == oracles.canonical_numpy(t)


def test_bound_exceeded():
    with pytest.raises(BoundExceeded):
        enumerate_quandles(9)
    with pytest.raises(BoundExceeded):
        catalog(7)


def test_catalog_order():
    cat = catalog(4)
    assert [q.order for q in cat] == sorted(q.order for q in cat)
    assert len(cat) == 1 + 1 + 3 + 7


def test_census_disk_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("QUANDLE_CACHE_DIR", str(tmp_path))
    first = census.__wrapped__(4)
    assert (tmp_path / "census-4-v1.json").exists()
    again = census.__wrapped__(4)
    assert [q.table for q in first] == [q.table for q in again]


# ----------------------------------------------------------- isomorphism

def test_isomorphism_examples():
    q = dihedral(3)
    assert is_isomorphic(q, q) == (0, 1, 2)
    assert is_isomorphic(trivial(2), dihedral(2)) is not None
    assert is_isomorphic(trivial(3), dihedral(3)) is None
    # exhaust all relabelings directly
    assert all(relabel(trivial(3).table, p) != R3 for p in itertools.permutations(range(3)))


def _inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _check_iso(a, b, p):
    return all(p[a.table[x][y]] == b.table[p[x]][p[y]] for x in range(a.order) for y in range(a.order))


@given(st.integers(0, 35), st.integers(0, 35), st.permutations(range(4)), st.permutations(range(4)))
def test_isomorphism_is_an_equivalence(i, j, p1, p2):
    tables = quandle_tables(4)
    a = FiniteQuandle(4, tables[i])
    b = validate(relabel(a.table, p1))
    c = validate(relabel(b.table, p2))
    pab = is_isomorphic(a, b)
    assert pab is not None and _check_iso(a, b, pab)
    pba = is_isomorphic(b, a)
    assert pba is not None and _check_iso(b, a, _inverse(pab))
    assert is_isomorphic(a, c) is not None
    other = FiniteQuandle(4, tables[j])
    same_class = canonical_form(a.table) == canonical_form(other.table)
    assert (is_isomorphic(a, other) is not None) == same_class


# ------------------------------------------------------------------- json

def test_json_roundtrip():
    q = dihedral(5)
    back = FiniteQuandle.from_json(json.loads(json.dumps(q.to_json())))
    assert back == q
    with pytest.raises(ValueError):
        FiniteQuandle.from_json({"order": 4, "table": [list(r) for r in q.table]})
    g = symmetric_group(3)
    assert type(g).from_json(json.loads(json.dumps(g.to_json()))).mul == g.mul
