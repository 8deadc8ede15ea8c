#!/usr/bin/env python3
"""Independent oracle for alternating overflow on (M_2, transpose).

dim B+ = 3, dim B- = 1. A multilinear polynomial alternating in 4 symmetric
variables (or 2 skew ones) must vanish under every admissible substitution:
verified here by brute force, not dimension counting. Random multilinear seed
polynomials, alternated, then evaluated over all elementary tuples
(symmetric variables over {E11, E12+E21, E22}, skew over {E12-E21}).
"""
import random
from fractions import Fraction
from itertools import permutations, product


def mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def addm(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def smulm(s, a):
    return [[s * x for x in r] for r in a]


E = lambda i, j: [[Fraction(1) if (a, b) == (i, j) else Fraction(0) for b in range(2)] for a in range(2)]
D0 = [E(0, 0), addm(E(0, 1), E(1, 0)), E(1, 1)]
D1 = [[[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]]
ZERO = [[Fraction(0)] * 2 for _ in range(2)]


def eval_word(word, vals):
    cur = None
    for v in word:
        m = vals[v]
        cur = m if cur is None else mul(cur, m)
    return cur


def alternate_poly(terms, alt_vars):
    """terms: list of (coeff, word). Alternate over alt_vars (list of var names)."""
    out = []
    for perm in permutations(range(len(alt_vars))):
        sign = perm_sign(perm)
        ren = {alt_vars[i]: alt_vars[perm[i]] for i in range(len(alt_vars))}
        for (c, w) in terms:
            out.append((c * sign, tuple(ren.get(v, v) for v in w)))
    return out


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def check_case(nsym, nskew, seed):
    rng = random.Random(seed)
    yvars = [f"y{i}" for i in range(nsym)]
    zvars = [f"z{i}" for i in range(nskew)]
    allv = yvars + zvars
    for trial in range(5):
        base = []
        for _ in range(3):
            w = allv[:]
            rng.shuffle(w)
            base.append((Fraction(rng.randint(-3, 3)), tuple(w)))
        poly = alternate_poly(base, yvars)
        for vals_y in product(range(len(D0)), repeat=nsym):
            for vals_z in product(range(len(D1)), repeat=nskew):
                vals = {y: D0[i] for y, i in zip(yvars, vals_y)}
                vals.update({z: D1[i] for z, i in zip(zvars, vals_z)})
                acc = ZERO
                for (c, w) in poly:
                    if c == 0:
                        continue
                    acc = addm(acc, smulm(c, eval_word(w, vals)))
                assert acc == ZERO, (trial, vals_y, vals_z)
    print(f"(M_2,t): alternating in {nsym} symmetric + {nskew} skew free vars "
          "vanishes on all elementary tuples (5 random seed polynomials)")


def main():
    check_case(4, 1, 1)   # (t1+1, t2)
    # skew overflow: alternate over the z set of size 2 (> t2 = 1)
    rng = random.Random(2)
    zvars = ["z0", "z1"]
    yvars = ["y0"]
    base = []
    for _ in range(3):
        w = yvars + zvars
        rng.shuffle(w)
        base.append((Fraction(rng.randint(-3, 3)), tuple(w)))
    poly = alternate_poly(base, zvars)
    for iy in range(len(D0)):
        for iz in product(range(len(D1)), repeat=2):
            vals = {"y0": D0[iy], "z0": D1[iz[0]], "z1": D1[iz[1]]}
            acc = ZERO
            for (c, w) in poly:
                acc = addm(acc, smulm(c, eval_word(w, vals)))
            assert acc == ZERO
    print("(M_2,t): alternating in 2 skew free vars vanishes on all elementary tuples")


if __name__ == "__main__":
    main()
