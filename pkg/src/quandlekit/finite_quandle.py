"""Finite quandles as Cayley tables, finite groups, and the group-derived constructions.

Conventions: ``table[x][y] = x * y``. Permutations are tuples ``p`` with
``p[i]`` the image of ``i``; group elements built from permutations multiply
left to right, ``(a . b)[i] = b[a[i]]``, so that cosets ``Hx`` are right cosets
and ``S_y`` acts on the right.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import AxiomViolation, BoundExceeded, NotCentralizing, NotSubgroup

DEFAULT_CATALOG_BOUND = 6
CENSUS_VERSION = "1"

Table = tuple[tuple[int, ...], ...]


def _freeze(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class FiniteQuandle:
    order: int
    table: Table
    label: str = field(default="", compare=False)
    # descriptors of the carrier, e.g. (part, coset representative); informational only
    elements: Optional[tuple] = field(default=None, compare=False, repr=False)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def dual(self) -> Table:
        """``dual[x][y]`` is the unique ``z`` with ``z * y == x``."""
        n = self.order
        out = [[0] * n for _ in range(n)]
        for z in range(n):
            row = self.table[z]
            for y in range(n):
                out[row[y]][y] = z
        return _freeze(out)

    def column(self, y: int) -> tuple[int, ...]:
        return tuple(self.table[x][y] for x in range(self.order))

    def to_json(self) -> dict:
        d = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, data: dict) -> "FiniteQuandle":
        q = validate(data["table"], label=data.get("label", ""))
        if "order" in data and data["order"] != q.order:
            raise ValueError(f"declared order {data['order']} does not match table size {q.order}")
        return q


def validate(table, label: str = "", elements: Optional[tuple] = None) -> FiniteQuandle:
    """Check the three quandle axioms and wrap the table.

    Raises :class:`AxiomViolation` carrying the first failure found, scanning
    axioms in order 1, 2, 3 and each one in row-major order.
    """
    t = _freeze(table)
    n = len(t)
    if n == 0:
        raise ValueError("a quandle table must be non-empty")
    for row in t:
        if len(row) != n:
            raise ValueError("table must be square")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"entry {v} out of range 0..{n - 1}")
    for x in range(n):
        if t[x][x] != x:
            raise AxiomViolation(1, (x,))
    seen = [set() for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if t[x][y] in seen[y]:
                raise AxiomViolation(2, (x, y))
            seen[y].add(t[x][y])
    for x in range(n):
        tx = t[x]
        for y in range(n):
            txy = t[tx[y]]
            ty = t[y]
            for z in range(n):
                if txy[z] != t[tx[z]][ty[z]]:
                    raise AxiomViolation(3, (x, y, z))
    return FiniteQuandle(n, t, label, elements)


def is_quandle_table(table) -> bool:
    try:
        validate(table)
    except AxiomViolation:
        return False
    return True


def trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteQuandle(n, tuple(tuple(x for _ in range(n)) for x in range(n)), f"T{n}")


def dihedral(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteQuandle(n, tuple(tuple((2 * j - i) % n for j in range(n)) for i in range(n)), f"R{n}")


def dual_op(q: FiniteQuandle, x: int, y: int) -> int:
    return q.dual[x][y]


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mul: Table
    inv: tuple[int, ...]
    id: int
    label: str = field(default="", compare=False)
    elements: Optional[tuple] = field(default=None, compare=False, repr=False)

    def m(self, *xs: int) -> int:
        acc = self.id
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def index(self, element) -> int:
        """Index of a descriptor from ``elements`` (e.g. a permutation tuple)."""
        if self.elements is None:
            raise ValueError("group carries no element descriptors")
        return self.elements.index(tuple(element) if isinstance(element, list) else element)

    def check(self) -> None:
        n = self.order
        r = range(n)
        for a in r:
            if self.mul[self.id][a] != a or self.mul[a][self.id] != a:
                raise ValueError(f"{self.id} is not an identity for {a}")
            if self.mul[a][self.inv[a]] != self.id or self.mul[self.inv[a]][a] != self.id:
                raise ValueError(f"inv[{a}] is not an inverse")
        for a, b, c in itertools.product(r, r, r):
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise ValueError(f"associativity fails at {(a, b, c)}")

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        out = {self.id}
        frontier = deque([self.id])
        gens = list(gens)
        while frontier:
            a = frontier.popleft()
            for g in gens:
                b = self.mul[a][g]
                if b not in out:
                    out.add(b)
                    frontier.append(b)
        return frozenset(out)

    def is_subgroup(self, h: Iterable[int]) -> bool:
        h = set(h)
        if self.id not in h:
            return False
        return all(self.mul[a][b] in h for a in h for b in h) and all(self.inv[a] in h for a in h)

    def right_coset(self, h: Iterable[int], x: int) -> frozenset[int]:
        return frozenset(self.mul[a][x] for a in h)

    def to_json(self) -> dict:
        d = {"order": self.order, "mul": [list(r) for r in self.mul], "inv": list(self.inv), "id": self.id}
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        g = cls(int(data["order"]), _freeze(data["mul"]), tuple(int(v) for v in data["inv"]),
                int(data["id"]), data.get("label", ""))
        g.check()
        return g


def cyclic_group(n: int) -> FiniteGroup:
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(n, mul, tuple((-a) % n for a in range(n)), 0, f"C{n}", tuple(range(n)))


def group_from_permutations(gens: Sequence[Sequence[int]], label: str = "") -> FiniteGroup:
    """Close a set of permutations into a group; elements are sorted lexicographically."""
    perms = [tuple(g) for g in gens]
    if not perms:
        raise ValueError("need at least one generator")
    degree = len(perms[0])
    elems = set(PermutationGroup(degree, tuple(perms)).elements)
    ordered = tuple(sorted(elems))
    idx = {p: i for i, p in enumerate(ordered)}
    mul = tuple(tuple(idx[tuple(b[a[i]] for i in range(degree))] for b in ordered) for a in ordered)
    inv = tuple(idx[_perm_inverse(p)] for p in ordered)
    return FiniteGroup(len(ordered), mul, inv, idx[tuple(range(degree))], label, ordered)


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_permutations([(0,)], "S1")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return group_from_permutations(gens, f"S{n}")


def quotient_group(g: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Return ``(G/N, phi)`` where ``phi[x]`` is the index of the coset ``Nx``."""
    n_set = frozenset(normal)
    if not g.is_subgroup(n_set):
        raise NotSubgroup("N is not a subgroup")
    for x in range(g.order):
        if frozenset(g.m(g.inv[x], a, x) for a in n_set) != n_set:
            raise NotSubgroup("N is not normal")
    reps: list[int] = []
    phi = [-1] * g.order
    for x in range(g.order):
        if phi[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for y in g.right_coset(n_set, x):
            phi[y] = k
    mul = tuple(tuple(phi[g.mul[a][b]] for b in reps) for a in reps)
    inv = tuple(phi[g.inv[a]] for a in reps)
    q = FiniteGroup(len(reps), mul, inv, phi[g.id], f"{g.label}/N" if g.label else "", tuple(reps))
    return q, tuple(phi)


def _perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _perm_then(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # apply a, then b
    return tuple(b[v] for v in a)


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[tuple[int, ...], ...]

    @cached_property
    def elements(self) -> frozenset[tuple[int, ...]]:
        ident = tuple(range(self.degree))
        out = {ident}
        frontier = deque([ident])
        while frontier:
            a = frontier.popleft()
            for g in self.generators:
                b = _perm_then(a, g)
                if b not in out:
                    out.add(b)
                    frontier.append(b)
        return frozenset(out)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            orbit = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for g in self.generators:
                    if g[x] not in orbit:
                        orbit.add(g[x])
                        stack.append(g[x])
            seen |= orbit
            out.append(sorted(orbit))
        return out


# ------------------------------------------------------- group quandles


def conj(g: FiniteGroup) -> FiniteQuandle:
    """Conjugation quandle, ``a * b = b^-1 a b``."""
    table = tuple(tuple(g.m(g.inv[b], a, b) for b in range(g.order)) for a in range(g.order))
    return FiniteQuandle(g.order, table, f"Conj({g.label})" if g.label else "Conj", g.elements)


def _check_part(g: FiniteGroup, h: frozenset[int], z: int) -> None:
    if not g.is_subgroup(h):
        raise NotSubgroup(f"{sorted(h)} is not closed under multiplication and inverses")
    for a in sorted(h):
        if g.mul[a][z] != g.mul[z][a]:
            raise NotCentralizing(a)


def _coset_reps(g: FiniteGroup, h: frozenset[int]) -> tuple[list[int], list[int]]:
    """Minimal representatives of the right cosets of ``h`` and the coset index of each element."""
    where = [-1] * g.order
    reps = []
    for x in range(g.order):
        if where[x] < 0:
            for y in g.right_coset(h, x):
                where[y] = len(reps)
            reps.append(x)
    return reps, where


def disjoint_union_coset(g: FiniteGroup, parts: Sequence[tuple[Iterable[int], int]]) -> FiniteQuandle:
    """Quandle on the disjoint union of coset spaces ``H_i \\ G``.

    ``H_i x * H_j y = H_i z_i^-1 x y^-1 z_j y``. Elements are ordered by part,
    then by minimal coset representative; ``elements[k] == (part, rep)``.
    """
    frozen = []
    for h, z in parts:
        h = frozenset(h)
        _check_part(g, h, z)
        frozen.append((h, z))
    offsets, labels, wheres = [], [], []
    for i, (h, _z) in enumerate(frozen):
        reps, where = _coset_reps(g, h)
        offsets.append(len(labels))
        labels.extend((i, r) for r in reps)
        wheres.append(where)
    table = []
    for i, rx in labels:
        zi_inv = g.inv[frozen[i][1]]
        row = []
        for j, ry in labels:
            w = g.m(zi_inv, rx, g.inv[ry], frozen[j][1], ry)
            row.append(offsets[i] + wheres[i][w])
        table.append(tuple(row))
    return FiniteQuandle(len(labels), tuple(table), "", tuple(labels))


def coset_quandle(g: FiniteGroup, h: Iterable[int], z: int) -> FiniteQuandle:
    """``(G, H, z)`` on right cosets, ``Hx * Hy = H z^-1 x y^-1 z y``; ``elements[k]`` is the rep."""
    q = disjoint_union_coset(g, [(h, z)])
    return FiniteQuandle(q.order, q.table, "", tuple(r for _, r in q.elements))


def inner_group(q: FiniteQuandle) -> PermutationGroup:
    """Group generated by the right translations ``S_y: x -> x * y``."""
    return PermutationGroup(q.order, tuple(q.column(y) for y in range(q.order)))


def is_automorphism(q: FiniteQuandle, p: Sequence[int]) -> bool:
    t = q.table
    return all(p[t[x][y]] == t[p[x]][p[y]] for x in range(q.order) for y in range(q.order))


# -------------------------------------------------- relabeling / census


def relabel(table: Table, p: Sequence[int]) -> Table:
    """Table of the same quandle with element ``x`` renamed ``p[x]``."""
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[p[x]][p[y]] = p[table[x][y]]
    return _freeze(out)


def _orbit(table: Table) -> set[Table]:
    return {relabel(table, p) for p in itertools.permutations(range(len(table)))}


def canonical_form(table) -> Table:
    """Lexicographically least table over all relabelings (row-major order)."""
    return min(_orbit(_freeze(table)))


def is_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> Optional[tuple[int, ...]]:
    """Return ``p`` with ``p(x*y) = p(x)*p(y)``, or ``None``."""
    n = q1.order
    if n != q2.order:
        return None
    a, b = q1.table, q2.table
    if sorted(len(o) for o in inner_group(q1).orbits()) != sorted(len(o) for o in inner_group(q2).orbits()):
        return None
    p = [-1] * n
    used = [False] * n

    def consistent(k):
        # pairs with both ends among 0..k, whose product is also mapped
        for x in range(k + 1):
            for y in (k,) if x < k else range(k + 1):
                for s, t in ((x, y), (y, x)):
                    v = a[s][t]
                    if p[v] >= 0 and p[v] != b[p[s]][p[t]]:
                        return False
        return True

    def go(k):
        if k == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            p[k], used[c] = c, True
            if consistent(k) and go(k + 1):
                return True
            p[k], used[c] = -1, False
        return False

    if go(0):
        assert all(p[a[x][y]] == b[p[x]][p[y]] for x in range(n) for y in range(n))
        return tuple(p)
    return None


def _compose_conj(sz, sy, sz_inv):
    # x -> sz[sy[sz_inv[x]]]
    return tuple(sz[sy[v]] for v in sz_inv)


def _propagate(cols: list, queue: list[int]) -> bool:
    """Close the partial column assignment under ``S_{y*z} = S_z S_y S_z^-1``.

    The identity is equivalent to right self-distributivity; any forced
    column is written in place. Returns False on a contradiction.
    """
    n = len(cols)
    inverses = {}
    while queue:
        a = queue.pop()
        for b in range(n):
            if cols[b] is None:
                continue
            for y, z in ((a, b), (b, a)):
                sy, sz = cols[y], cols[z]
                if sy is None or sz is None:
                    continue
                if z not in inverses:
                    inverses[z] = _perm_inverse(sz)
                w = sz[y]
                req = _compose_conj(sz, sy, inverses[z])
                if cols[w] is None:
                    cols[w] = req
                    queue.append(w)
                elif cols[w] != req:
                    return False
    return True


def _search(n: int, cols: list, out: list) -> None:
    try:
        c = cols.index(None)
    except ValueError:
        out.append(tuple(tuple(cols[y][x] for y in range(n)) for x in range(n)))
        return
    others = [i for i in range(n) if i != c]
    for image in itertools.permutations(others):
        perm = list(image)
        perm.insert(c, c)
        trial = list(cols)
        trial[c] = tuple(perm)
        if _propagate(trial, [c]):
            _search(n, trial, out)


def _tables_with_first_column(n: int, first: tuple[int, ...]) -> list[Table]:
    cols: list = [None] * n
    cols[0] = first
    out: list = []
    if _propagate(cols, [0]):
        _search(n, cols, out)
    return out


def quandle_tables(n: int, jobs: int = 1) -> list[Table]:
    """Every quandle table of order ``n`` (labeled), sorted.

    Backtracks over columns, each a permutation fixing its own index, and
    propagates forced columns through distributivity.
    """
    firsts = [(0,) + p for p in itertools.permutations(range(1, n))]
    if jobs > 1 and len(firsts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_tables_with_first_column, [n] * len(firsts), firsts))
    else:
        chunks = [_tables_with_first_column(n, f) for f in firsts]
    return sorted(t for chunk in chunks for t in chunk)


def enumerate_quandles(n: int, up_to_iso: bool = False, bound: int = DEFAULT_CATALOG_BOUND,
                       jobs: int = 1) -> list[FiniteQuandle]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise BoundExceeded(f"order {n} exceeds catalog bound {bound}")
    tables = quandle_tables(n, jobs)
    if not up_to_iso:
        return [FiniteQuandle(n, t) for t in tables]
    seen: set[Table] = set()
    reps = []
    for t in tables:
        if t in seen:
            continue
        orbit = _orbit(t)
        seen |= orbit
        reps.append(min(orbit))
    return [FiniteQuandle(n, t, f"Q{n}_{i}") for i, t in enumerate(sorted(reps))]


# ---------------------------------------------------------------- catalog


def cache_dir() -> Path:
    env = os.environ.get("QUANDLE_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "quandlekit"


@lru_cache(maxsize=None)
def census(n: int, use_disk: bool = True) -> tuple[FiniteQuandle, ...]:
    """Isomorphism classes of order ``n``, cached in memory and on disk."""
    path = cache_dir() / f"census-{n}-v{CENSUS_VERSION}.json"
    if use_disk and path.exists():
        try:
            data = json.loads(path.read_text())
            return tuple(FiniteQuandle(n, _freeze(t), f"Q{n}_{i}") for i, t in enumerate(data))
        except (OSError, ValueError):
            pass
    qs = tuple(enumerate_quandles(n, up_to_iso=True, bound=max(n, DEFAULT_CATALOG_BOUND)))
    if use_disk:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps([[list(r) for r in q.table] for q in qs]))
            tmp.replace(path)
        except OSError:
            pass
    return qs


def catalog(max_order: int = DEFAULT_CATALOG_BOUND, min_order: int = 1,
            bound: int = DEFAULT_CATALOG_BOUND) -> list[FiniteQuandle]:
    """All isomorphism classes with ``min_order <= order <= max_order``, by order then canonical table."""
    if max_order > bound:
        raise BoundExceeded(f"order {max_order} exceeds catalog bound {bound}")
    return [q for n in range(max(1, min_order), max_order + 1) for q in census(n)]
