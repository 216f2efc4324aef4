"""Left-normed quandle words, finitely presented quandles, free products and eta.

A word ``x0 *^e1 x1 ... *^en xn`` is read left-associatively. The surface
syntax uses ``*`` for the operation and ``/`` for its dual, e.g. ``a * b / c``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .errors import NotFreePresentation, UnassignedGenerator, UnknownGenerator, WordSyntaxError
from .finite_quandle import FiniteQuandle

Letter = tuple[str, int]


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    factor: Optional[int] = None


@dataclass(frozen=True)
class QuandleWord:
    head: str
    tail: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple((str(g), int(e)) for g, e in self.tail))
        for _, e in self.tail:
            if e not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {e}")

    def __len__(self) -> int:
        return 1 + len(self.tail)

    def __str__(self) -> str:
        parts = [self.head]
        for g, e in self.tail:
            parts.append("*" if e == 1 else "/")
            parts.append(g)
        return " ".join(parts)

    @property
    def letters(self) -> set[str]:
        return {self.head} | {g for g, _ in self.tail}

    @property
    def is_reduced(self) -> bool:
        t = self.tail
        if t and t[0][0] == self.head:
            return False
        return all(not (t[i][0] == t[i + 1][0] and t[i][1] != t[i + 1][1]) for i in range(len(t) - 1))

    def act(self, tail: Sequence[Letter]) -> "QuandleWord":
        """``self *^e1 y1 ... *^ek yk`` for the letters in ``tail``."""
        return QuandleWord(self.head, self.tail + tuple(tail))

    def rename(self, mapping: Mapping[str, str]) -> "QuandleWord":
        return QuandleWord(mapping.get(self.head, self.head),
                           tuple((mapping.get(g, g), e) for g, e in self.tail))


def word(text_or_head: str, *tail: Letter) -> QuandleWord:
    """Shorthand: ``word("a * b")`` parses, ``word("a", ("b", 1))`` builds directly."""
    if tail or re.fullmatch(r"[A-Za-z_][A-Za-z0-9_#]*", text_or_head):
        return QuandleWord(text_or_head, tuple(tail))
    return parse_word(text_or_head)


# ------------------------------------------------------------- term trees


@dataclass(frozen=True)
class Op:
    left: "Term"
    sign: int
    right: "Term"


Term = Union[str, Op]

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_#]*)|([*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(1) if m.group(1) else m.start(2)
        out.append(("id", m.group(1), start) if m.group(1) else ("op", m.group(2), start))
        pos = m.end()
    return out


def parse_term(text: str) -> Term:
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def atom() -> Term:
        nonlocal i
        t = peek()
        if t is None:
            raise WordSyntaxError("unexpected end of input", len(text))
        if t[0] == "id":
            i += 1
            return t[1]
        if t[1] == "(":
            i += 1
            inner = expr()
            t2 = peek()
            if t2 is None or t2[1] != ")":
                raise WordSyntaxError("expected ')'", t2[2] if t2 else len(text))
            i += 1
            return inner
        raise WordSyntaxError(f"unexpected {t[1]!r}", t[2])

    def expr() -> Term:
        nonlocal i
        left = atom()
        while (t := peek()) is not None and t[1] in "*/":
            i += 1
            left = Op(left, 1 if t[1] == "*" else -1, atom())
        return left

    result = expr()
    if i != len(toks):
        raise WordSyntaxError(f"unexpected {toks[i][1]!r}", toks[i][2])
    return result


def normalize_left_normed(term: Term) -> QuandleWord:
    """Rewrite a binary term into an equivalent left-normed word.

    Uses ``x *^e (u0 *^f1 u1 ... *^fk uk) = x /^fk uk ... /^f1 u1 *^e u0 *^f1 u1 ... *^fk uk``,
    i.e. conjugation of ``S_u0`` by the tail of the right operand.
    """
    if isinstance(term, str):
        return QuandleWord(term)
    left = normalize_left_normed(term.left)
    right = normalize_left_normed(term.right)
    undo = tuple((g, -e) for g, e in reversed(right.tail))
    return left.act(undo + ((right.head, term.sign),) + right.tail)


def parse_word(text: str, presentation: Optional["QuandlePresentation"] = None) -> QuandleWord:
    w = normalize_left_normed(parse_term(text))
    if presentation is not None:
        presentation.check_word(w)
    return w


def reduce(w: QuandleWord) -> QuandleWord:
    """Cancel adjacent inverse pairs and drop head repeats until the word is reduced."""
    stack: list[Letter] = []
    for g, e in w.tail:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        elif not stack and g == w.head:
            continue
        else:
            stack.append((g, e))
    return QuandleWord(w.head, tuple(stack))


def evaluate(w: QuandleWord, q: FiniteQuandle, assign: Mapping[str, int]) -> int:
    try:
        x = assign[w.head]
        t, d = q.table, q.dual
        for g, e in w.tail:
            x = t[x][assign[g]] if e == 1 else d[x][assign[g]]
    except KeyError as err:
        raise UnassignedGenerator(str(err.args[0])) from None
    return x


# ------------------------------------------------------------ presentations


Relation = tuple[QuandleWord, QuandleWord]


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple[GeneratorSymbol, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(
            g if isinstance(g, GeneratorSymbol) else GeneratorSymbol(g) for g in self.generators))
        object.__setattr__(self, "relations", tuple((u, v) for u, v in self.relations))
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for u, v in self.relations:
            self.check_word(u)
            self.check_word(v)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def factor_of(self) -> dict[str, Optional[int]]:
        return {g.name: g.factor for g in self.generators}

    @property
    def factors(self) -> list[list[str]]:
        """Generator names grouped by factor tag, in order of first appearance."""
        groups: dict = {}
        for g in self.generators:
            groups.setdefault(g.factor, []).append(g.name)
        return list(groups.values())

    @property
    def is_free(self) -> bool:
        return not self.relations

    def check_word(self, w: QuandleWord) -> None:
        missing = w.letters - set(self.names)
        if missing:
            raise UnknownGenerator(", ".join(sorted(missing)))

    def word(self, text: str) -> QuandleWord:
        return parse_word(text, self)

    def to_json(self) -> dict:
        d = {"generators": list(self.names),
             "relations": [[str(u), str(v)] for u, v in self.relations]}
        if any(g.factor is not None for g in self.generators):
            d["factors"] = [g.factor for g in self.generators]
        return d

    @classmethod
    def from_json(cls, data: dict) -> "QuandlePresentation":
        names = list(data["generators"])
        factors = data.get("factors") or [None] * len(names)
        gens = tuple(GeneratorSymbol(n, f) for n, f in zip(names, factors))
        rels = tuple((parse_word(u), parse_word(v)) for u, v in data.get("relations", []))
        return cls(gens, rels)


def presentation(generators: Sequence[str], relations: Sequence[tuple[str, str]] = ()) -> QuandlePresentation:
    """Build an untagged presentation from names and relation strings."""
    return QuandlePresentation(tuple(GeneratorSymbol(g) for g in generators),
                               tuple((parse_word(u), parse_word(v)) for u, v in relations))


def _tags(p: QuandlePresentation, offset: int) -> tuple[list[int], int]:
    order: dict = {}
    for g in p.generators:
        order.setdefault(g.factor, len(order))
    return [offset + order[g.factor] for g in p.generators], len(order)


def rename_apart(p1: QuandlePresentation, p2: QuandlePresentation) -> dict[str, str]:
    """Names for ``p2``'s generators avoiding ``p1``'s: collisions get ``#<factor>`` suffixes."""
    _, k1 = _tags(p1, 0)
    tags2, _ = _tags(p2, k1)
    taken = set(p1.names) | set(p2.names)
    mapping = {}
    for g, tag in zip(p2.names, tags2):
        if g in p1.names:
            new = f"{g}#{tag}"
            while new in taken:
                new += "#"
            taken.add(new)
            mapping[g] = new
    return mapping


def free_product(p1: QuandlePresentation, p2: QuandlePresentation) -> QuandlePresentation:
    """``<X u Y | R u S>`` with factor tags recorded; ``p2`` is renamed apart on collision."""
    tags1, k1 = _tags(p1, 0)
    tags2, _ = _tags(p2, k1)
    ren = rename_apart(p1, p2)
    gens = tuple(GeneratorSymbol(g.name, t) for g, t in zip(p1.generators, tags1))
    gens += tuple(GeneratorSymbol(ren.get(g.name, g.name), t) for g, t in zip(p2.generators, tags2))
    rels = p1.relations + tuple((u.rename(ren), v.rename(ren)) for u, v in p2.relations)
    return QuandlePresentation(gens, rels)


def free_quandle(n: int, names: Optional[Sequence[str]] = None) -> QuandlePresentation:
    if n < 1:
        raise ValueError("n must be positive")
    names = list(names) if names is not None else [f"x{i + 1}" for i in range(n)]
    if len(names) != n:
        raise ValueError("need exactly n names")
    p = QuandlePresentation((GeneratorSymbol(names[0]),))
    for name in names[1:]:
        p = free_product(p, QuandlePresentation((GeneratorSymbol(name),)))
    return p


def canonical_presentation(p: QuandlePresentation) -> tuple:
    """Name-independent form: generators by position, factors renumbered, relations sorted."""
    pos = {g: f"g{i}" for i, g in enumerate(p.names)}
    tags, _ = _tags(p, 0)
    rels = sorted((str(u.rename(pos)), str(v.rename(pos))) for u, v in p.relations)
    return tuple(tags), tuple(rels)


# ------------------------------------------------------------- group words


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word in the generators ``e_x``; letters are ``(name, +-1)``."""
    letters: tuple[Letter, ...] = field(default=())

    def __post_init__(self):
        stack: list[Letter] = []
        for g, e in self.letters:
            e = int(e)
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            if stack and stack[-1] == (g, -e):
                stack.pop()
            else:
                stack.append((str(g), e))
        object.__setattr__(self, "letters", tuple(stack))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def to_letter_code(self) -> str:
        """Space separated tokens; an inverse is written with swapped case (``a`` / ``A``)."""
        return " ".join(g if e == 1 else g.swapcase() for g, e in self.letters)

    @classmethod
    def from_letter_code(cls, text: str, generators: Sequence[str]) -> "GroupWord":
        gens = set(generators)
        out = []
        for tok in text.split():
            if tok in gens:
                out.append((tok, 1))
            elif tok.swapcase() in gens:
                out.append((tok.swapcase(), -1))
            else:
                raise UnknownGenerator(tok)
        return cls(tuple(out))


def eta(w: QuandleWord) -> GroupWord:
    """Image ``c^-1 e_x0 c`` in the associated group, ``c = e_x1^e1 ... e_xn^en``."""
    c = GroupWord(w.tail)
    return c.inverse() * GroupWord(((w.head, 1),)) * c


def free_quandle_equal(u: QuandleWord, v: QuandleWord,
                       p: Optional[QuandlePresentation] = None) -> bool:
    """Decide equality in a free quandle: a free quandle embeds in its free group via eta."""
    if p is not None and not p.is_free:
        raise NotFreePresentation("presentation has relations")
    return eta(u) == eta(v)
