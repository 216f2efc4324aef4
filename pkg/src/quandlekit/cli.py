"""Command-line interface: ``quandlekit <subcommand> ...``.

Exit codes: 0 success, 1 domain failure (invalid table, unknown verdict,
no witness, bound exceeded), 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .associated_group import associated_group
from .errors import AxiomViolation, QuandleError
from .finite_quandle import DEFAULT_CATALOG_BOUND, FiniteQuandle, catalog, census, dihedral, trivial
from .homomorphism import Budget, count_colorings, separate, word_problem
from .link import braid_closure, link_group, parse_braid, parse_pd, wirtinger_quandle
from .presentation import QuandlePresentation, QuandleWord, free_quandle, free_quandle_equal, parse_word


@dataclass(frozen=True)
class Config:
    catalog_max_order: int = DEFAULT_CATALOG_BOUND
    budget_len: int = Budget.max_len
    budget_nodes: int = Budget.max_nodes
    format: str = "json"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.catalog_max_order < 0 or self.budget_len < 0 or self.budget_nodes < 0 or self.jobs < 1:
            raise ValueError("bounds must be non-negative and jobs positive")
        if self.format not in ("json", "text"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def budget(self) -> Budget:
        return Budget(max_len=self.budget_len, max_nodes=self.budget_nodes, max_order=self.catalog_max_order)


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"{path} is not valid JSON: {err}") from None


def load_quandle(source: str) -> FiniteQuandle:
    """A Cayley-table JSON file, or ``R<n>`` (dihedral) / ``T<n>`` (trivial)."""
    if source[:1] in "RT" and source[1:].isdigit():
        return (dihedral if source[0] == "R" else trivial)(int(source[1:]))
    return FiniteQuandle.from_json(_read_json(source))


def load_presentation(source: str) -> QuandlePresentation:
    """A presentation JSON file, ``braid:<word>``, ``pd:<code>`` or ``free:<n>``."""
    kind, sep, rest = source.partition(":")
    if kind == "braid" and rest:
        return wirtinger_quandle(braid_closure(parse_braid(rest)))
    if kind == "pd" and sep:
        return wirtinger_quandle(parse_pd(rest))
    if kind == "free" and rest.isdigit():
        return free_quandle(int(rest))
    return QuandlePresentation.from_json(_read_json(source))


def _diagram(args):
    if args.braid is not None:
        return braid_closure(parse_braid(args.braid, args.strands))
    return parse_pd(args.pd)


def _emit(obj, cfg: Config, text: Optional[str] = None) -> None:
    if cfg.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(obj, sort_keys=True, indent=2))


def _table_text(q: FiniteQuandle) -> str:
    w = len(str(q.order - 1))
    return "\n".join(" ".join(str(v).rjust(w) for v in row) for row in q.table)


def cmd_validate(args, cfg) -> int:
    data = _read_json(args.file)
    try:
        q = FiniteQuandle.from_json(data)
    except AxiomViolation as err:
        _emit({"valid": False, **err.to_json()}, cfg, f"invalid: axiom {err.axiom} fails at {err.witness}")
        return 1
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"malformed table: {err}") from None
    _emit({"valid": True, "order": q.order}, cfg, f"valid quandle of order {q.order}")
    return 0


def cmd_catalog(args, cfg) -> int:
    if args.n > cfg.catalog_max_order:
        _emit({"error": "BoundExceeded", "order": args.n, "bound": cfg.catalog_max_order}, cfg,
              f"order {args.n} exceeds catalog bound {cfg.catalog_max_order}")
        return 1
    qs = census(args.n)
    text = "\n\n".join(f"# {i}\n{_table_text(q)}" for i, q in enumerate(qs)) + f"\n{len(qs)} classes"
    _emit([q.to_json() for q in qs], cfg, text)
    return 0


def cmd_colorings(args, cfg) -> int:
    p = load_presentation(args.presentation)
    q = load_quandle(args.quandle)
    n = count_colorings(p, q)
    _emit({"colorings": n, "quandle_order": q.order}, cfg, str(n))
    return 0


def _words(p, args):
    return parse_word(args.u, p), parse_word(args.v, p)


def cmd_wp(args, cfg) -> int:
    p = load_presentation(args.presentation)
    u, v = _words(p, args)
    verdict = word_problem(p, u, v, cfg.budget, jobs=cfg.jobs)
    _emit(verdict.to_json(), cfg, verdict.outcome)
    return 1 if verdict.outcome == "unknown" else 0


def cmd_separate(args, cfg) -> int:
    p = load_presentation(args.presentation)
    u, v = _words(p, args)
    w = separate(p, u, v, max_order=cfg.catalog_max_order, jobs=cfg.jobs)
    if w is None:
        _emit({"witness": None}, cfg, "no witness")
        return 1
    _emit({"witness": w.to_json()}, cfg,
          f"{w.heuristic}: {u} -> {w.left_image}, {v} -> {w.right_image} in order-{w.hom.target.order} quandle")
    return 0


def cmd_assoc(args, cfg) -> int:
    g = associated_group(load_presentation(args.presentation))
    text = "\n".join([" ".join(g.generators)] + [r.to_letter_code() or "1" for r in g.relators])
    _emit(g.to_json(), cfg, text)
    return 0


def cmd_link(args, cfg) -> int:
    d = _diagram(args)
    p = wirtinger_quandle(d)
    out = {"diagram": d.to_json(), "presentation": p.to_json(), "group": link_group(d).to_json()}
    text = "\n".join([f"{d.arcs} arcs, {len(d.crossings)} crossings, {d.num_components} components"]
                     + [f"{u} = {v}" for u, v in p.relations])
    _emit(out, cfg, text)
    return 0


def cmd_fuzz(args, cfg) -> int:
    """Random FQ_2 word pairs: word_problem against the free-group decision."""
    rng = random.Random(cfg.seed)
    p = free_quandle(2, ["a", "b"])
    tally = {"equal": 0, "distinct": 0, "unknown": 0, "mismatch": 0}
    for _ in range(args.count):
        u, v = (_random_word(rng, p.names, args.length) for _ in range(2))
        verdict = word_problem(p, u, v, cfg.budget)
        tally[verdict.outcome] += 1
        expected = "equal" if free_quandle_equal(u, v) else "distinct"
        if verdict.outcome != "unknown" and verdict.outcome != expected:
            tally["mismatch"] += 1
    _emit(tally, cfg, " ".join(f"{k}={v}" for k, v in tally.items()))
    return 1 if tally["mismatch"] else 0


def _random_word(rng, names, max_len):
    n = rng.randint(0, max_len - 1)
    return QuandleWord(rng.choice(names), tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(n)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quandlekit", description=__doc__.splitlines()[0])
    ap.add_argument("--catalog-max-order", type=int, default=DEFAULT_CATALOG_BOUND)
    ap.add_argument("--budget-len", type=int, default=Budget.max_len)
    ap.add_argument("--budget-nodes", type=int, default=Budget.max_nodes)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a Cayley-table JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("catalog", help="quandles of order n up to isomorphism")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("colorings", help="count homomorphisms from a presentation to a finite quandle")
    s.add_argument("presentation", help="JSON file, braid:<word>, pd:<code> or free:<n>")
    s.add_argument("quandle", help="Cayley JSON file, R<n> or T<n>")
    s.set_defaults(func=cmd_colorings)

    for name, func, help_ in (("separate", cmd_separate, "find a finite quandle telling two words apart"),
                              ("wp", cmd_wp, "decide equality of two words")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("presentation")
        s.add_argument("u")
        s.add_argument("v")
        s.set_defaults(func=func)

    s = sub.add_parser("assoc", help="associated group presentation")
    s.add_argument("presentation")
    s.set_defaults(func=cmd_assoc)

    s = sub.add_parser("link", help="arc presentation of a braid closure or PD code")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid")
    g.add_argument("--pd")
    s.add_argument("--strands", type=int)
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("fuzz", help="random FQ2 word problems checked against free reduction")
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--length", type=int, default=3)
    s.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code else 0
    try:
        cfg = Config(args.catalog_max_order, args.budget_len, args.budget_nodes, args.format, args.jobs, args.seed)
        return args.func(args, cfg)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except QuandleError as err:
        print(json.dumps({"error": type(err).__name__, "message": str(err)}, sort_keys=True))
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
