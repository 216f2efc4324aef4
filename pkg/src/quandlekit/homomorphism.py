"""Homomorphisms into finite quandles, separation witnesses, and the word problem.

Equality is semi-decided by a bounded bidirectional search over left-normed
words (:func:`prove_equal`); inequality by finding a homomorphism to a finite
quandle that tells the two words apart (:func:`separate`). :func:`word_problem`
interleaves the two under an escalating budget.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import NotHomomorphism
from .finite_quandle import (DEFAULT_CATALOG_BOUND, FiniteGroup, FiniteQuandle, catalog as census_catalog,
                             disjoint_union_coset, trivial)
from .presentation import QuandlePresentation, QuandleWord, evaluate, free_quandle_equal

NO_BOUND_NOTE = ("no effective bound relates word length to the order of a separating "
                 "finite quandle; budgets are heuristic")


# ----------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    source: QuandlePresentation
    target: FiniteQuandle
    values: tuple[int, ...]  # aligned with source.names

    @property
    def assign(self) -> dict[str, int]:
        return dict(zip(self.source.names, self.values))

    def __call__(self, w: QuandleWord) -> int:
        return evaluate(w, self.target, self.assign)

    def is_valid(self) -> bool:
        a = self.assign
        return all(evaluate(u, self.target, a) == evaluate(v, self.target, a)
                   for u, v in self.source.relations)


def _compile(w: QuandleWord, idx: dict[str, int]):
    return idx[w.head], tuple((idx[g], e) for g, e in w.tail)


def _eval_compiled(cw, vals, t, d) -> int:
    x = vals[cw[0]]
    for g, e in cw[1]:
        x = t[x][vals[g]] if e == 1 else d[x][vals[g]]
    return x


def iter_assignments(p: QuandlePresentation, f: FiniteQuandle) -> Iterator[tuple[int, ...]]:
    """Lexicographic generator assignments satisfying every relation of ``p``.

    Backtracks in declaration order; a relation is checked as soon as its
    last generator has been assigned.
    """
    names = p.names
    idx = {n: i for i, n in enumerate(names)}
    k = len(names)
    checks: list[list] = [[] for _ in range(k)]
    for u, v in p.relations:
        last = max(idx[g] for g in u.letters | v.letters)
        checks[last].append((_compile(u, idx), _compile(v, idx)))
    t, d, n = f.table, f.dual, f.order
    vals = [0] * k

    def go(i):
        if i == k:
            yield tuple(vals)
            return
        for x in range(n):
            vals[i] = x
            if all(_eval_compiled(cu, vals, t, d) == _eval_compiled(cv, vals, t, d) for cu, cv in checks[i]):
                yield from go(i + 1)

    yield from go(0)


def enumerate_homs(p: QuandlePresentation, f: FiniteQuandle) -> list[Homomorphism]:
    return [Homomorphism(p, f, vals) for vals in iter_assignments(p, f)]


def count_colorings(p: QuandlePresentation, f: FiniteQuandle) -> int:
    return sum(1 for _ in iter_assignments(p, f))


# ------------------------------------------------------------- separation


@dataclass(frozen=True)
class SeparationWitness:
    hom: Homomorphism
    left: QuandleWord
    right: QuandleWord
    left_image: int
    right_image: int
    heuristic: str  # factor-projection | free-projection | eta-conjugacy | catalog

    def replay(self) -> bool:
        """Relations hold under the assignment and the two images differ as recorded."""
        return (self.hom.is_valid()
                and self.hom(self.left) == self.left_image
                and self.hom(self.right) == self.right_image
                and self.left_image != self.right_image)

    def to_json(self) -> dict:
        return {"heuristic": self.heuristic,
                "target": self.hom.target.to_json(),
                "assign": self.hom.assign,
                "left": str(self.left), "right": str(self.right),
                "left_image": self.left_image, "right_image": self.right_image}


@dataclass
class SearchStats:
    assignments: int = 0
    exhausted: bool = False
    max_order: int = 0


def _factor_index(p: QuandlePresentation) -> dict[str, int]:
    return {g: k for k, names in enumerate(p.factors) for g in names}


def _first_catalog_hom(p, u, v, f, limit):
    """First lexicographic hom separating ``u`` and ``v`` in ``f``; returns (values, tried)."""
    idx = {n: i for i, n in enumerate(p.names)}
    cu, cv = _compile(u, idx), _compile(v, idx)
    t, d = f.table, f.dual
    tried = 0
    for vals in iter_assignments(p, f):
        tried += 1
        if _eval_compiled(cu, vals, t, d) != _eval_compiled(cv, vals, t, d):
            return vals, tried
        if limit is not None and tried >= limit:
            break
    return None, tried


def _sweep_worker(args):
    p, u, v, f = args
    vals, tried = _first_catalog_hom(p, u, v, f, None)
    return vals, tried


def separate(p: QuandlePresentation, u: QuandleWord, v: QuandleWord,
             catalog: Optional[Sequence[FiniteQuandle]] = None, max_order: int = DEFAULT_CATALOG_BOUND,
             max_homs: Optional[int] = None, stats: Optional[SearchStats] = None,
             jobs: int = 1) -> Optional[SeparationWitness]:
    """Search for a homomorphism to a finite quandle with different images of ``u`` and ``v``.

    Tries, in order: factor projection onto a trivial quandle, collapsing
    factors to a free quandle, head-factor counting, and finally a sweep over
    the catalog. Returns ``None`` when nothing is found within the budget.
    """
    p.check_word(u)
    p.check_word(v)
    stats = stats if stats is not None else SearchStats()
    stats.max_order = max(stats.max_order, max_order)
    if catalog is None:
        catalog = census_catalog(min(max_order, DEFAULT_CATALOG_BOUND)) if max_order >= 1 else []
    catalog = [q for q in catalog if q.order <= max_order]

    def witness(target, values, heuristic):
        hom = Homomorphism(p, target, tuple(values))
        return SeparationWitness(hom, u, v, hom(u), hom(v), heuristic)

    fidx = _factor_index(p)
    nfactors = len(p.factors)
    if nfactors >= 2:
        fu = {fidx[g] for g in u.letters}
        fv = {fidx[g] for g in v.letters}
        if len(fu) == 1 and len(fv) == 1 and fu != fv and max_order >= 2:
            (k,) = fu
            return witness(trivial(2), [0 if fidx[g] == k else 1 for g in p.names], "factor-projection")

        collapse = {g: f"f{fidx[g]}" for g in p.names}
        cu, cv = u.rename(collapse), v.rename(collapse)
        if not free_quandle_equal(cu, cv):
            free_names = [f"f{k}" for k in range(nfactors)]
            for q in catalog:
                for vals in itertools.product(range(q.order), repeat=nfactors):
                    stats.assignments += 1
                    a = dict(zip(free_names, vals))
                    if evaluate(cu, q, a) != evaluate(cv, q, a):
                        return witness(q, [vals[fidx[g]] for g in p.names], "free-projection")
                    if max_homs is not None and stats.assignments >= max_homs:
                        stats.exhausted = True
                        return None

        if fidx[u.head] != fidx[v.head] and nfactors <= max_order:
            return witness(trivial(nfactors), [fidx[g] for g in p.names], "eta-conjugacy")

    if jobs > 1 and max_homs is None and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_worker, [(p, u, v, q) for q in catalog]))
        for q, (vals, tried) in zip(catalog, results):
            stats.assignments += tried
            if vals is not None:
                return witness(q, vals, "catalog")
        return None

    for q in catalog:
        limit = None if max_homs is None else max_homs - stats.assignments
        vals, tried = _first_catalog_hom(p, u, v, q, limit)
        stats.assignments += tried
        if vals is not None:
            return witness(q, vals, "catalog")
        if max_homs is not None and stats.assignments >= max_homs:
            stats.exhausted = True
            return None
    return None


def second_axiom_shift(u: QuandleWord, v: QuandleWord) -> tuple[QuandleWord, QuandleWord]:
    """``u = b0 *^e1 b1 ... *^em bm`` iff ``u /^em bm ... /^e1 b1 = b0``."""
    undo = tuple((g, -e) for g, e in reversed(v.tail))
    return u.act(undo), QuandleWord(v.head)


# --------------------------------------------------------- rewrite prover


Node = tuple[str, tuple]  # (head, tail) with tail letters (name, sign)


@dataclass(frozen=True)
class TraceStep:
    move: str
    detail: str
    before: QuandleWord
    after: QuandleWord

    def to_json(self) -> dict:
        return {"move": self.move, "detail": self.detail, "before": str(self.before), "after": str(self.after)}


@dataclass(frozen=True)
class _Rules:
    gens: tuple[str, ...]
    cayley: dict          # (a, s, b) -> (c, ...) meaning a *^s b = c
    cayley_rev: dict      # (b, s, c) -> (a, ...)
    expansions: dict      # c -> [(a, s, b), ...]
    prefixes: tuple       # ((head, tail), (head, tail), label) oriented relation pairs


def _cayley_shape(u: QuandleWord, v: QuandleWord):
    if len(u.tail) == 1 and not v.tail:
        return u.head, u.tail[0][1], u.tail[0][0], v.head
    if len(v.tail) == 1 and not u.tail:
        return v.head, v.tail[0][1], v.tail[0][0], u.head
    return None


def is_cayley_shaped(u: QuandleWord, v: QuandleWord) -> bool:
    return _cayley_shape(u, v) is not None


@lru_cache(maxsize=64)
def _rules(p: QuandlePresentation) -> _Rules:
    instances = []
    for u, v in p.relations:
        shape = _cayley_shape(u, v)
        if shape:
            a, s, b, c = shape
            instances.append((a, s, b, c))
            instances.append((c, -s, b, a))
    instances += [(y, s, y, y) for y in p.names for s in (1, -1)]
    cayley: dict = {}
    rev: dict = {}
    expansions: dict = {}
    for a, s, b, c in dict.fromkeys(instances):
        cayley.setdefault((a, s, b), []).append(c)
        rev.setdefault((b, s, c), []).append(a)
        if a != c:
            expansions.setdefault(c, []).append((a, s, b))
    prefixes = []
    for i, (u, v) in enumerate(p.relations):
        label = f"r{i}: {u} = {v}"
        prefixes.append(((u.head, u.tail), (v.head, v.tail), label))
        prefixes.append(((v.head, v.tail), (u.head, u.tail), label))
    freeze = lambda d: {k: tuple(dict.fromkeys(v)) for k, v in d.items()}
    return _Rules(p.names, freeze(cayley), freeze(rev), freeze(expansions), tuple(prefixes))


def _sgn(e: int) -> str:
    return "*" if e == 1 else "/"


def _neighbors(rules: _Rules, node: Node, max_len: float):
    """Yield ``(move, detail, node)`` for every single rewrite of ``node`` within ``max_len`` letters."""
    head, tail = node
    n = len(tail)
    size = n + 1
    # inverse pairs
    for i in range(n - 1):
        (g, e), (h, f) = tail[i], tail[i + 1]
        if g == h and e == -f:
            yield "cancel", f"{_sgn(e)}{g} {_sgn(f)}{g}", (head, tail[:i] + tail[i + 2:])
    if size + 2 <= max_len:
        for i in range(n + 1):
            for g in rules.gens:
                for e in (1, -1):
                    yield "insert", f"{_sgn(e)}{g} {_sgn(-e)}{g}", (head, tail[:i] + ((g, e), (g, -e)) + tail[i:])
    # idempotency at the head
    if n and tail[0][0] == head:
        yield "idem-drop", f"{head} {_sgn(tail[0][1])} {head} = {head}", (head, tail[1:])
    if size + 1 <= max_len:
        for e in (1, -1):
            yield "idem-insert", f"{head} = {head} {_sgn(e)} {head}", (head, ((head, e),) + tail)
    # distributivity: (w *^e y) *^f z = (w *^f z) *^e (y *^f z), with y *^f z a generator
    for i in range(n - 1):
        (y, e), (z, f) = tail[i], tail[i + 1]
        for c in rules.cayley.get((y, f, z), ()):
            yield "shuffle", f"{y} {_sgn(f)} {z} = {c}", (head, tail[:i] + ((z, f), (c, e)) + tail[i + 2:])
        # reverse direction: here tail[i] is (z, f) and tail[i+1] is (y *^f z, e)
        for y2 in rules.cayley_rev.get((y, e, z), ()):
            yield "unshuffle", f"{y2} {_sgn(e)} {y} = {z}", (head, tail[:i] + ((y2, f), (y, e)) + tail[i + 2:])
    # letter c with c = a *^s b expands to /^s b *^e a *^s b
    if size + 2 <= max_len:
        for i, (c, e) in enumerate(tail):
            for a, s, b in rules.expansions.get(c, ()):
                yield "expand", f"{c} = {a} {_sgn(s)} {b}", (head, tail[:i] + ((b, -s), (a, e), (b, s)) + tail[i + 1:])
    for i in range(n - 2):
        (b, s1), (a, e), (b2, s) = tail[i], tail[i + 1], tail[i + 2]
        if b == b2 and s1 == -s:
            for c in rules.cayley.get((a, s, b), ()):
                if c == a:
                    continue
                yield "contract", f"{c} = {a} {_sgn(s)} {b}", (head, tail[:i] + ((c, e),) + tail[i + 3:])
    # relation substitution on a prefix
    for (lh, lt), (rh, rt), label in rules.prefixes:
        k = len(lt)
        if head == lh and tail[:k] == lt:
            new = (rh, rt + tail[k:])
            if len(new[1]) + 1 <= max_len and new != node:
                yield "subst", label, new


def _to_word(node: Node) -> QuandleWord:
    return QuandleWord(node[0], node[1])


def _to_node(w: QuandleWord) -> Node:
    return w.head, w.tail


def _reduction_steps(w: QuandleWord) -> list[TraceStep]:
    steps = []
    node = _to_node(w)
    while True:
        head, tail = node
        if tail and tail[0][0] == head:
            new, move, detail = (head, tail[1:]), "idem-drop", f"{head} {_sgn(tail[0][1])} {head} = {head}"
        else:
            for i in range(len(tail) - 1):
                if tail[i][0] == tail[i + 1][0] and tail[i][1] == -tail[i + 1][1]:
                    g, e = tail[i]
                    new, move, detail = (head, tail[:i] + tail[i + 2:]), "cancel", f"{_sgn(e)}{g} {_sgn(-e)}{g}"
                    break
            else:
                return steps
        steps.append(TraceStep(move, detail, _to_word(node), _to_word(new)))
        node = new


def _step_between(rules: _Rules, a: Node, b: Node) -> TraceStep:
    limit = max(len(a[1]), len(b[1])) + 1
    for move, detail, nb in _neighbors(rules, a, limit):
        if nb == b:
            return TraceStep(move, detail, _to_word(a), _to_word(b))
    raise AssertionError("nodes are not adjacent")


def _reverse(steps: list[TraceStep], rules: _Rules) -> list[TraceStep]:
    return [_step_between(rules, _to_node(s.after), _to_node(s.before)) for s in reversed(steps)]


def prove_equal(p: QuandlePresentation, u: QuandleWord, v: QuandleWord,
                max_len: Optional[int] = None, max_nodes: int = 20000) -> Optional[list[TraceStep]]:
    """Bounded bidirectional search for a derivation of ``u = v``.

    Both words are first reduced (the reduction steps are part of the trace).
    Returns a list of :class:`TraceStep` leading from ``u`` to ``v``, or
    ``None`` when the budget runs out; ``None`` never means "distinct".
    """
    p.check_word(u)
    p.check_word(v)
    rules = _rules(p)
    su, sv = _reduction_steps(u), _reduction_steps(v)
    ru = _to_node(su[-1].after) if su else _to_node(u)
    rv = _to_node(sv[-1].after) if sv else _to_node(v)
    if max_len is None:
        max_len = max(len(u), len(v)) + 4
    if ru == rv:
        return su + _reverse(sv, rules)
    if max_nodes <= 0:
        return None
    bound = max(max_len, len(ru[1]) + 1, len(rv[1]) + 1)

    parents = [{ru: None}, {rv: None}]
    frontiers = [[ru], [rv]]
    visited = 2
    meet = None
    while frontiers[0] and frontiers[1] and meet is None:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, theirs = parents[side], parents[1 - side]
        nxt = []
        for node in frontiers[side]:
            for move, detail, nb in _neighbors(rules, node, bound):
                if nb in mine:
                    continue
                mine[nb] = node
                if nb in theirs:
                    meet = nb
                    break
                nxt.append(nb)
                visited += 1
                if visited >= max_nodes:
                    return None
            if meet is not None:
                break
        frontiers[side] = nxt
    if meet is None:
        return None

    def chain(par, node):
        out = []
        while node is not None:
            out.append(node)
            node = par[node]
        return out

    path = list(reversed(chain(parents[0], meet))) + chain(parents[1], meet)[1:]
    middle = [_step_between(rules, a, b) for a, b in zip(path, path[1:])]
    return su + middle + _reverse(sv, rules)


def replay_trace(p: QuandlePresentation, u: QuandleWord, v: QuandleWord, trace: Sequence[TraceStep]) -> bool:
    """Check that ``trace`` chains from ``u`` to ``v`` and every step is a legal move."""
    rules = _rules(p)
    cur = u
    for step in trace:
        if step.before != cur:
            return False
        limit = max(len(step.before), len(step.after)) + 1
        ok = any(move == step.move and detail == step.detail and nb == _to_node(step.after)
                 for move, detail, nb in _neighbors(rules, _to_node(step.before), limit))
        if not ok:
            return False
        cur = step.after
    return cur == v


# ---------------------------------------------------------- word problem


@dataclass(frozen=True)
class Budget:
    max_len: int = 16
    max_nodes: int = 20000
    max_order: int = DEFAULT_CATALOG_BOUND
    max_homs: Optional[int] = None
    start_order: int = 3


@dataclass(frozen=True)
class WpVerdict:
    outcome: str  # equal | distinct | unknown
    trace: Optional[tuple[TraceStep, ...]] = None
    witness: Optional[SeparationWitness] = None
    budgets: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"outcome": self.outcome,
                "witness": self.witness.to_json() if self.witness else None,
                "trace": [s.to_json() for s in self.trace] if self.trace is not None else None,
                "budgets": self.budgets}


def word_problem(p: QuandlePresentation, u: QuandleWord, v: QuandleWord, budget: Budget = Budget(),
                 catalog: Optional[Sequence[FiniteQuandle]] = None, jobs: int = 1) -> WpVerdict:
    """Interleave :func:`prove_equal` and :func:`separate` under a doubling schedule.

    Starts at ``max_len = max(|u|, |v|) + 4`` and catalog order 3, then doubles
    the length bound and the catalog order alternately until both reach the
    budget caps. Exhaustion yields an ``unknown`` verdict with a report.
    """
    p.check_word(u)
    p.check_word(v)
    length = min(max(len(u), len(v)) + 4, budget.max_len)
    order = min(budget.start_order, budget.max_order)
    rounds = 0
    proved_len = separated_order = -1
    stats = SearchStats()
    grow_len = True
    while True:
        rounds += 1
        if length > proved_len:
            trace = prove_equal(p, u, v, max_len=length, max_nodes=budget.max_nodes) \
                if budget.max_nodes > 0 or u == v else None
            proved_len = length
            if trace is not None:
                return WpVerdict("equal", tuple(trace), None, _report(rounds, length, order, stats, budget))
        if order > separated_order:
            w = separate(p, u, v, catalog=catalog, max_order=order, max_homs=budget.max_homs,
                         stats=stats, jobs=jobs) if order > 0 else None
            separated_order = order
            if w is not None:
                return WpVerdict("distinct", None, w, _report(rounds, length, order, stats, budget))
        at_cap = length >= budget.max_len and order >= budget.max_order
        if at_cap:
            report = _report(rounds, length, order, stats, budget)
            report["note"] = NO_BOUND_NOTE
            return WpVerdict("unknown", None, None, report)
        if (grow_len and length < budget.max_len) or order >= budget.max_order:
            length = min(max(2 * length, 1), budget.max_len)
        else:
            order = min(max(2 * order, 1), budget.max_order)
        grow_len = not grow_len


def _report(rounds, length, order, stats, budget) -> dict:
    return {"rounds": rounds, "max_len_reached": length, "catalog_order_reached": order,
            "max_nodes": budget.max_nodes, "assignments_tried": stats.assignments,
            "hom_budget_exhausted": stats.exhausted}


# ------------------------------------------------------ coset quandle maps


@dataclass(frozen=True)
class QuandleMap:
    source: FiniteQuandle
    target: FiniteQuandle
    mapping: tuple[int, ...]

    def is_homomorphism(self) -> bool:
        s, t, m = self.source.table, self.target.table, self.mapping
        r = range(self.source.order)
        return all(m[s[x][y]] == t[m[x]][m[y]] for x in r for y in r)


def quotient_coset_hom(g: FiniteGroup, parts: Sequence[tuple[Sequence[int], int]],
                       f: FiniteGroup, phi: Sequence[int]) -> QuandleMap:
    """Map ``H_i x -> phi(H_i) phi(x)`` between the disjoint-union coset quandles over G and F."""
    for x in range(g.order):
        for y in range(g.order):
            if phi[g.mul[x][y]] != f.mul[phi[x]][phi[y]]:
                raise NotHomomorphism(x, y)
    src = disjoint_union_coset(g, parts)
    images = [(frozenset(phi[h] for h in hs), phi[z]) for hs, z in parts]
    tgt = disjoint_union_coset(f, images)
    where = {lab: k for k, lab in enumerate(tgt.elements)}
    mapping = []
    for i, rep in src.elements:
        coset = f.right_coset(images[i][0], phi[rep])
        mapping.append(where[(i, min(coset))])
    qm = QuandleMap(src, tgt, tuple(mapping))
    s, t = src.table, tgt.table
    for x in range(src.order):
        for y in range(src.order):
            if mapping[s[x][y]] != t[mapping[x]][mapping[y]]:
                raise NotHomomorphism(x, y)
    return qm
