"""Word-problem runs: the <t> * R3 example and a fuzz sweep over two presentations.

Prints a verdict tally and the slowest pairs.
"""
import argparse
import random
import time

from quandlekit import (QuandleWord, braid_closure, free_quandle, free_quandle_equal, parse_braid, parse_word,
                        presentation, split_union, unknot, word_problem)
from quandlekit.presentation import free_product

R3 = [(f"a{i} * a{j}", f"a{(2 * j - i) % 3}") for i in range(3) for j in range(3)]


def random_word(rng, names, max_len):
    return QuandleWord(rng.choice(names), tuple((rng.choice(names), rng.choice((1, -1)))
                                                for _ in range(rng.randint(0, max_len - 1))))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--length", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = free_product(presentation(["t"]), presentation(["a0", "a1", "a2"], R3))
    u, v = parse_word("(t * a1) * a2"), parse_word("(t * a2) * a0")
    t0 = time.perf_counter()
    verdict = word_problem(p, u, v)
    print(f"{u}  vs  {v}: {verdict.outcome} in {time.perf_counter() - t0:.2f}s")
    for step in verdict.trace:
        print(f"  {step.before}  --{step.move} [{step.detail}]-->  {step.after}")

    rng = random.Random(args.seed)
    targets = {"FQ2": free_quandle(2, ["a", "b"]),
               "trefoil * unknot": split_union([braid_closure(parse_braid("s1 s1 s1")), unknot()])}
    for name, q in targets.items():
        tally, slow = {}, []
        for _ in range(args.pairs):
            a, b = random_word(rng, q.names, args.length), random_word(rng, q.names, args.length)
            t0 = time.perf_counter()
            out = word_problem(q, a, b).outcome
            slow.append((time.perf_counter() - t0, str(a), str(b), out))
            tally[out] = tally.get(out, 0) + 1
            if q.is_free and out != "unknown":
                assert (out == "equal") == free_quandle_equal(a, b)
        print(f"\n{name}: {tally}")
        for secs, a, b, out in sorted(slow, reverse=True)[:3]:
            print(f"  {secs:6.2f}s  {a}  vs  {b}  -> {out}")


if __name__ == "__main__":
    main()
