#!/usr/bin/env python3
"""Independent oracle for full linearization (multilinearization).

Implements linearization by brute-force coefficient extraction on commutative-free
words (kept noncommutative): substitute v -> v_1 + ... + v_d for every variable v of
degree d, expand, keep the part multilinear in all copies. Checks:
- y1^2 z1 -> y1a y1b z1 + y1b y1a z1 (2 terms), re-identifying copies gives 2 * y1^2 z1;
- y1^3 -> all 6 orderings, re-identification factor 3! = 6;
- y1^2 y2^2 -> 4 terms, factor 2! * 2! = 4.
"""
from itertools import permutations
from collections import Counter


def expand(word):
    """word: tuple of (var, degree-multiset handled positionally).
    Returns list of monomials (tuples of copy-labels) multilinear in the copies."""
    counts = Counter(word)
    copies = {v: [f"{v}#{i}" for i in range(c)] for v, c in counts.items()}
    out = []

    def rec(i, used, acc):
        if i == len(word):
            out.append(tuple(acc))
            return
        v = word[i]
        for c in copies[v]:
            if c not in used:
                rec(i + 1, used | {c}, acc + [c])
    rec(0, frozenset(), [])
    return out


def reidentify_count(monos):
    """All copies set back to their base variable: how many coincide per base word."""
    c = Counter(tuple(lbl.split('#')[0] for lbl in m) for m in monos)
    return c


def main():
    m = expand(("y1", "y1", "z1"))
    assert len(m) == 2, m
    ri = reidentify_count(m)
    assert ri == Counter({("y1", "y1", "z1"): 2})
    print("lin(y1^2 z1): 2 terms; re-identification gives 2 * y1 y1 z1 (factor 2! = 2)")

    m = expand(("y1", "y1", "y1"))
    assert len(m) == 6
    assert reidentify_count(m) == Counter({("y1",) * 3: 6})
    print("lin(y1^3): 6 terms; factor 3! = 6")

    m = expand(("y1", "y1", "y2", "y2"))
    assert len(m) == 4
    assert reidentify_count(m) == Counter({("y1", "y1", "y2", "y2"): 4})
    print("lin(y1^2 y2^2): 4 terms; factor 2! * 2! = 4")


if __name__ == "__main__":
    main()
