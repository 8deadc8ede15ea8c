#!/usr/bin/env python3
"""Independent oracle for the Jacobson radical of UT_n and exchange(UT_2).

Radical = kernel of the Gram matrix G[b][i] = Tr(L_{e_i e_b}) over the rationals.
Implemented from scratch on structure constants (no shared code with the C++).
Also reports nilpotency class and the dimensions needed for the UT_3 / UT_3/J^2
cpar comparison test.
"""
from fractions import Fraction


def kernel(rows):
    """Basis (list of vectors) of the left kernel-style null space {x : M x = 0}
    for M given as list of rows."""
    m = [list(map(Fraction, r)) for r in rows]
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


class Algebra:
    def __init__(self, names, mult):
        self.names = names
        self.n = len(names)
        self.mult = mult  # mult[i][j] = coordinate list of e_i e_j

    def product(self, a, b):
        out = [Fraction(0)] * self.n
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                for r, c in enumerate(self.mult[i][j]):
                    if c != 0:
                        out[r] += ai * bj * c
        return out


def ut_algebra(n):
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    names = [f"E{i+1}{j+1}" for (i, j) in idx]
    pos = {p: k for k, p in enumerate(idx)}
    mult = []
    for (i1, j1) in idx:
        row = []
        for (i2, j2) in idx:
            out = [Fraction(0)] * len(idx)
            if j1 == i2:
                out[pos[(i1, j2)]] = Fraction(1)
            row.append(out)
        mult.append(row)
    return Algebra(names, mult), idx


def exchange(alg):
    n = alg.n
    names = [f"{s}|0" for s in alg.names] + [f"0|{s}" for s in alg.names]
    mult = [[None] * (2 * n) for _ in range(2 * n)]
    zero = [Fraction(0)] * (2 * n)
    for i in range(2 * n):
        for j in range(2 * n):
            out = list(zero)
            if i < n and j < n:
                for r, c in enumerate(alg.mult[i][j]):
                    out[r] = c
            elif i >= n and j >= n:
                for r, c in enumerate(alg.mult[j - n][i - n]):
                    out[n + r] = c
            mult[i][j] = out
    return Algebra(names, mult)


def gram_kernel(alg):
    n = alg.n
    # T[k] = Tr(L_{e_k}) = sum_j (e_k e_j)_j
    T = [sum(alg.mult[k][j][j] for j in range(n)) for k in range(n)]
    G = []
    for b in range(n):
        row = []
        for i in range(n):
            prod = alg.mult[i][b]
            row.append(sum(prod[k] * T[k] for k in range(n)))
        G.append(row)
    return kernel(G)


def span_dim(vectors):
    if not vectors:
        return 0
    m = [list(v) for v in vectors]
    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def nilpotency_class(alg, rad_basis):
    """Least s with J^s = 0 (J^1 = J)."""
    cur = list(rad_basis)
    s = 1
    while cur:
        nxt_all = [alg.product(u, v) for u in cur for v in rad_basis]
        nxt = []
        for w in nxt_all:
            if any(x != 0 for x in w) and span_dim(nxt + [w]) > len(nxt):
                nxt.append(w)
        cur = nxt
        s += 1
        if s > alg.n + 2:
            raise RuntimeError("not nilpotent")
    return s


def main():
    for n in (2, 3, 4):
        alg, idx = ut_algebra(n)
        rad = gram_kernel(alg)
        strict = {k for k, (i, j) in enumerate(idx) if i != j}
        # check radical == strict upper triangular span
        assert len(rad) == len(strict), (n, len(rad))
        for v in rad:
            assert all(v[k] == 0 for k in range(alg.n) if k not in strict)
        # nilpotency class: least s with J^s = 0
        cls = nilpotency_class(alg, rad)
        print(f"UT_{n}: dim {alg.n}, radical dim {len(rad)}, nilpotency class {cls}")
        assert cls == n
    # J^2 of UT_3 (for the cpar quotient test)
    alg, idx = ut_algebra(3)
    rad = gram_kernel(alg)
    sq = []
    for u in rad:
        for v in rad:
            sq.append(alg.product(u, v))
    print(f"UT_3: dim J^2 = {span_dim(sq)}")
    # exchange(UT_2)
    alg2, _ = ut_algebra(2)
    ex = exchange(alg2)
    rad2 = gram_kernel(ex)
    print(f"exchange(UT_2): dim {ex.n}, radical dim {len(rad2)}")
    assert len(rad2) == 2
    # exchange(M_2): radical must be 0 (semisimple)
    m2 = Algebra([f"E{i}{j}" for i in range(1, 3) for j in range(1, 3)],
                 [[[Fraction(1) if r == (i1 * 2 + j2) and j1 == i2 else Fraction(0)
                    for r in range(4)]
                   for (i2, j2) in [(a, b) for a in range(2) for b in range(2)]]
                  for (i1, j1) in [(a, b) for a in range(2) for b in range(2)]])
    exm2 = exchange(m2)
    assert len(gram_kernel(exm2)) == 0
    print("exchange(M_2): radical dim 0")


if __name__ == "__main__":
    main()
