"""Coloring counts of a few small links against every catalog quandle.

Connected quandles only by default, since a knot's colorings by a
disconnected quandle are just the sums over its orbits.
"""
import argparse

from quandlekit import braid_closure, count_colorings, parse_braid, parse_pd, wirtinger_quandle
from quandlekit.finite_quandle import catalog, inner_group

LINKS = {
    "unknot": "braid:s1",
    "trefoil": "braid:s1 s1 s1",
    "mirror trefoil": "braid:s1^-1 s1^-1 s1^-1",
    "trefoil (PD)": "pd:X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "figure-eight": "braid:s1 s2^-1 s1 s2^-1",
    "cinquefoil": "braid:s1 s1 s1 s1 s1",
    "Hopf link": "braid:s1 s1",
    "s1^2 s2^-1 s1 s2^-1": "braid:s1 s1 s2^-1 s1 s2^-1",
}


def diagram(code):
    kind, _, rest = code.partition(":")
    return braid_closure(parse_braid(rest)) if kind == "braid" else parse_pd(rest)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument("--all", action="store_true", help="include disconnected quandles")
    args = ap.parse_args()

    qs = [q for q in catalog(args.max_order) if q.order > 1 and (args.all or len(inner_group(q).orbits()) == 1)]
    width = max(len(k) for k in LINKS)
    print(" " * width, " ".join(f"{q.label:>6}" for q in qs))
    for name, code in LINKS.items():
        p = wirtinger_quandle(diagram(code))
        print(f"{name:<{width}}", " ".join(f"{count_colorings(p, q):>6}" for q in qs))


if __name__ == "__main__":
    main()
