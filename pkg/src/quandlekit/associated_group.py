"""The associated group As(Q) as a presentation, its action on a quandle, and the image of psi."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .errors import UnknownElement
from .finite_quandle import FiniteQuandle, PermutationGroup, inner_group
from .presentation import (GeneratorSymbol, GroupWord, QuandlePresentation, QuandleWord, eta,
                           free_product, rename_apart)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...] = ()

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, _ in r.letters:
                if g not in gens:
                    raise ValueError(f"relator uses undeclared generator {g}")

    def canonical(self) -> tuple:
        return tuple(sorted(self.generators)), tuple(sorted(r.letters for r in self.relators))

    def to_json(self) -> dict:
        names = set(self.generators)
        if any(g.swapcase() == g or g.swapcase() in names for g in names):
            codes = None  # letter code would be ambiguous; use relator_letters
        else:
            codes = [r.to_letter_code() for r in self.relators]
        return {"generators": list(self.generators),
                "relators": codes,
                "relator_letters": [[[g, e] for g, e in r.letters] for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupPresentation":
        gens = tuple(data["generators"])
        if data.get("relator_letters") is not None:
            rels = tuple(GroupWord(tuple((g, e) for g, e in r)) for r in data["relator_letters"])
        else:
            rels = tuple(GroupWord.from_letter_code(r, gens) for r in data.get("relators", []))
        return cls(gens, rels)


def associated_group(p: QuandlePresentation) -> GroupPresentation:
    """One generator ``e_x`` per quandle generator (same name); relators ``eta(u) eta(v)^-1``."""
    return GroupPresentation(p.names, tuple(eta(u) * eta(v).inverse() for u, v in p.relations))


def as_free_product_check(p1: QuandlePresentation, p2: QuandlePresentation) -> bool:
    """Is As(P1 * P2) literally the free product of As(P1) and As(P2)?"""
    ren = rename_apart(p1, p2)
    whole = associated_group(free_product(p1, p2))
    a1 = associated_group(p1)
    a2 = associated_group(QuandlePresentation(
        tuple(GeneratorSymbol(ren.get(n, n)) for n in p2.names),
        tuple((u.rename(ren), v.rename(ren)) for u, v in p2.relations)))
    union = GroupPresentation(a1.generators + a2.generators, a1.relators + a2.relators)
    return whole.canonical() == union.canonical()


def _element(q: FiniteQuandle, name, labels: Optional[Mapping[str, int]]) -> int:
    try:
        x = labels[name] if labels is not None else int(name)
    except (KeyError, ValueError):
        raise UnknownElement(str(name)) from None
    if not 0 <= x < q.order:
        raise UnknownElement(str(name))
    return x


def act(q: FiniteQuandle, x: int, w: GroupWord, labels: Optional[Mapping[str, int]] = None) -> int:
    """Right action ``x . e_y = x * y`` extended to group words.

    Letters name elements of ``q``, either as decimal strings or via ``labels``.
    """
    if not 0 <= x < q.order:
        raise UnknownElement(str(x))
    t, d = q.table, q.dual
    for g, e in w.letters:
        y = _element(q, g, labels)
        x = t[x][y] if e == 1 else d[x][y]
    return x


def psi_image(q: FiniteQuandle) -> PermutationGroup:
    """Image of ``psi: As(Q) -> Inn(Q)``, ``e_x -> S_x``; the same group as ``inner_group``."""
    return inner_group(q)


def presentation_of(q: FiniteQuandle, prefix: str = "q") -> tuple[QuandlePresentation, dict[str, int]]:
    """Presentation with one generator per element and the full table as relations."""
    names = [f"{prefix}{x}" for x in range(q.order)]
    rels = tuple((QuandleWord(names[x], ((names[y], 1),)), QuandleWord(names[q.table[x][y]]))
                 for x in range(q.order) for y in range(q.order))
    return QuandlePresentation(tuple(GeneratorSymbol(n) for n in names), rels), dict(zip(names, range(q.order)))


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> int:
        return len({self.find(a) for a in self.parent})


def abelianization_rank(p: Union[QuandlePresentation, FiniteQuandle]) -> int:
    """Rank of the abelianized associated group.

    Abelianizing ``e_{x*y} = e_y^-1 e_x e_y`` gives ``e_{x*y} = e_x``, so each
    relation identifies the heads of its two sides; for a finite quandle this
    is the number of orbits of the inner group.
    """
    if isinstance(p, FiniteQuandle):
        return len(inner_group(p).orbits())
    uf = _UnionFind(p.names)
    for u, v in p.relations:
        uf.union(u.head, v.head)
    return uf.classes()
