"""Link diagrams from braid words and PD codes, and their arc presentations.

Sign convention: a crossing is positive when the over strand, rotated
counterclockwise, lines up with the under strand (the usual right-handed
crossing). At a positive crossing ``under_out = under_in * over``, at a
negative one ``under_out = under_in / over``. A braid letter ``s_k`` is a
positive crossing between positions ``k-1`` and ``k`` (0-based), strands
running downward, the right strand passing over.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .associated_group import GroupPresentation, associated_group
from .errors import EmptyBraid, InconsistentArcs, IndexOutOfRange, WordSyntaxError
from .presentation import GeneratorSymbol, QuandlePresentation, QuandleWord, free_product


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]  # (generator index 1..strands-1, sign)

    def __post_init__(self):
        if self.strands < 1:
            raise IndexOutOfRange("a braid needs at least one strand")
        for k, s in self.letters:
            if not 1 <= k < self.strands:
                raise IndexOutOfRange(f"s{k} needs at least {k + 1} strands, braid has {self.strands}")
            if s not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {s}")

    def permutation(self) -> tuple[int, ...]:
        """Bottom position of the strand starting at each top position."""
        pos = list(range(self.strands))  # pos[p] = strand at position p
        for k, _ in self.letters:
            pos[k - 1], pos[k] = pos[k], pos[k - 1]
        out = [0] * self.strands
        for p, strand in enumerate(pos):
            out[strand] = p
        return tuple(out)

    def __str__(self) -> str:
        return " ".join(f"s{k}" if s == 1 else f"s{k}^-1" for k, s in self.letters)


_BRAID_TOKEN = re.compile(r"s(\d+)(\^-1|\^1|\^\+1)?\Z")


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``; the strand count defaults to the largest index plus one."""
    letters = []
    pos = 0
    for tok in text.split():
        start = text.index(tok, pos)
        pos = start + len(tok)
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad braid token {tok!r}", start)
        k = int(m.group(1))
        if k < 1:
            raise IndexOutOfRange(f"generator index must be at least 1, got {k}")
        letters.append((k, -1 if m.group(2) == "^-1" else 1))
    if not letters:
        raise EmptyBraid("empty braid word")
    n = strands if strands is not None else max(k for k, _ in letters) + 1
    return BraidWord(n, tuple(letters))


@dataclass(frozen=True)
class LinkDiagram:
    arcs: int
    crossings: tuple[tuple[int, int, int, int], ...]  # (over, under_in, under_out, sign)
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(a for comp in self.components for a in comp)
        if seen != list(range(self.arcs)):
            raise InconsistentArcs("components must partition the arcs")
        comp_of = {a: i for i, comp in enumerate(self.components) for a in comp}
        for o, ui, uo, s in self.crossings:
            if not all(0 <= a < self.arcs for a in (o, ui, uo)) or s not in (1, -1):
                raise InconsistentArcs(f"bad crossing {(o, ui, uo, s)}")
            if comp_of[ui] != comp_of[uo]:
                raise InconsistentArcs(f"under strand changes component at {(o, ui, uo, s)}")
        ins = [c[1] for c in self.crossings]
        outs = [c[2] for c in self.crossings]
        if sorted(ins) != sorted(outs) or len(set(ins)) != len(ins):
            raise InconsistentArcs("every arc must end and start at exactly one under-crossing")

    @property
    def num_components(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {"arcs": self.arcs,
                "crossings": [list(c) for c in self.crossings],
                "components": [list(c) for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "LinkDiagram":
        return cls(int(data["arcs"]), tuple(tuple(int(v) for v in c) for c in data["crossings"]),
                   tuple(tuple(int(v) for v in c) for c in data["components"]))


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        self.add(a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _finish(raw_crossings, raw_arc_component, dsu: _DSU, all_raw) -> LinkDiagram:
    """Relabel merged raw arcs 0.. in order of their smallest raw label; group by component."""
    roots = sorted({dsu.find(a) for a in all_raw})
    label = {r: i for i, r in enumerate(roots)}
    arc = lambda a: label[dsu.find(a)]
    crossings = tuple((arc(o), arc(ui), arc(uo), s) for o, ui, uo, s in raw_crossings)
    comp_arcs: dict = {}
    for a in all_raw:
        comp_arcs.setdefault(raw_arc_component[a], set()).add(arc(a))
    comps = sorted(tuple(sorted(v)) for v in comp_arcs.values())
    return LinkDiagram(len(roots), crossings, tuple(comps))


def braid_closure(b: BraidWord) -> LinkDiagram:
    """Closed braid diagram; components are the cycles of the braid permutation."""
    n = b.strands
    perm = b.permutation()
    cycle_of = [-1] * n
    for start in range(n):
        if cycle_of[start] < 0:
            p = start
            while cycle_of[p] < 0:
                cycle_of[p] = start
                p = perm[p]
    dsu = _DSU()
    top = list(range(n))           # raw arc at each position, top of the braid
    cur = list(top)
    origin = list(range(n))        # top position of the strand now at each position
    component = {a: cycle_of[a] for a in top}
    for a in top:
        dsu.add(a)
    next_arc = n
    crossings = []
    for k, s in b.letters:
        left, right = k - 1, k
        if s == 1:
            over_pos, under_pos = right, left
        else:
            over_pos, under_pos = left, right
        over, under_in = cur[over_pos], cur[under_pos]
        under_out = next_arc
        next_arc += 1
        dsu.add(under_out)
        component[under_out] = cycle_of[origin[under_pos]]
        crossings.append((over, under_in, under_out, s))
        cur[under_pos] = under_out
        cur[left], cur[right] = cur[right], cur[left]
        origin[left], origin[right] = origin[right], origin[left]
    for p in range(n):
        dsu.union(cur[p], top[p])
    return _finish(crossings, component, dsu, list(range(next_arc)))


def unknot() -> LinkDiagram:
    return LinkDiagram(1, (), ((0,),))


def wirtinger_quandle(d: LinkDiagram, prefix: str = "x") -> QuandlePresentation:
    """One generator per arc, one Cayley-shaped relation per crossing."""
    names = [f"{prefix}{i}" for i in range(d.arcs)]
    rels = tuple((QuandleWord(names[ui], ((names[o], s),)), QuandleWord(names[uo]))
                 for o, ui, uo, s in d.crossings)
    return QuandlePresentation(tuple(GeneratorSymbol(n) for n in names), rels)


def link_group(d: LinkDiagram) -> GroupPresentation:
    return associated_group(wirtinger_quandle(d))


def split_union(ds: Sequence[LinkDiagram]) -> QuandlePresentation:
    """Free product of the arc presentations, factor ``k`` holding the ``k``-th diagram's arcs."""
    if not ds:
        raise ValueError("need at least one diagram")
    p = wirtinger_quandle(ds[0])
    for d in ds[1:]:
        p = free_product(p, wirtinger_quandle(d))
    return p


_PD_TUPLE = re.compile(r"X\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]")


def _pd_positive(j: int, l: int) -> bool:
    # over strand runs l -> j; the usual PD rule, wrap-around counted as consecutive
    return j - l == 1 or l - j > 1


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(i,j,k,l) ...``: ``i`` incoming under edge, then counterclockwise.

    ``k`` is the outgoing under edge and ``j``, ``l`` are the over edges. Empty
    input gives the unknot (with a warning).
    """
    stripped = re.sub(r"^\s*PD\s*[\(\[]|[\)\]]\s*$", "", text.strip()) if text.strip().startswith("PD") else text
    tuples = []
    pos = 0
    for m in _PD_TUPLE.finditer(stripped):
        gap = stripped[pos:m.start()]
        if gap.strip(" ,\t\n"):
            raise WordSyntaxError(f"unexpected {gap.strip()!r}", pos)
        tuples.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if stripped[pos:].strip(" ,\t\n"):
        raise WordSyntaxError(f"unexpected {stripped[pos:].strip()!r}", pos)
    if not tuples:
        warnings.warn("empty PD code read as the unknot", stacklevel=2)
        return unknot()
    counts: dict = {}
    for t in tuples:
        for e in t:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise InconsistentArcs(f"edge labels must appear exactly twice: {bad}")
    arcs = _DSU()
    comps = _DSU()
    for i, j, k, l in tuples:
        if i == k:
            raise InconsistentArcs(f"under strand enters and leaves on edge {i}")
        arcs.union(j, l)
        comps.union(i, k)
        comps.union(j, l)
    crossings = []
    for i, j, k, l in tuples:
        crossings.append((j, i, k, 1 if _pd_positive(j, l) else -1))
    edges = sorted(counts)
    component = {e: comps.find(e) for e in edges}
    d = _finish(crossings, component, arcs, edges)
    return d
