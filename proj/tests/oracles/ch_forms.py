#!/usr/bin/env python3
"""Independent oracle for trace-form constants and Cayley-Hamilton-type values.

(a) The trace recursion X_1 = x - Tr(x), X_m = X_{m-1} x - (1/m) Tr(X_{m-1} x)
    annihilates random rational matrices for n in {1,2,3} (exact; independent of the
    C++ FormPoly machinery: computed directly on matrices).
(b) Jordan trace forms on B = M_n:  f1(b) = Tr(T_{b}) with T_b(c) = bc + cb, and
    f2(b,c) = Tr(T_b T_c), computed from explicit operator matrices; verified equal to
    2n tr(b) and 2n tr(bc) + 2 tr(b) tr(c) on random samples, plus specific frozen
    values used by the C++ tests.
(c) Same forms for the exchange algebra F x F^op: f1((a,b)) = 2(a+b),
    f2((a,b),(c,d)) = 4(ac + bd); frozen values printed.
(d) CH-type ansatz solvability (terms x^{i0} * product of f1/f2-of-powers factors,
    exponents summing to the degree, 0 < i0 < d):
      - exchange k=1: no solution at degree 2; the degree-3 polynomial
        x^3 - 1/2 f1(x) x^2 + (1/8 f1(x)^2 - 1/4 f1(x^2)) x annihilates F x F^op.
      - transpose k=2: the degree-3 polynomial
        x^3 - 1/4 f1(x) x^2 + (1/32 f1(x)^2 - 1/8 f1(x^2)) x annihilates M_2.
      - transpose k=1: degree-2 solution x^2 - 1/2 f1(x) x annihilates F.
"""
import random
from fractions import Fraction


def mat(n, entries):
    return [list(map(Fraction, entries[i * n:(i + 1) * n])) for i in range(n)]


def mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def smul(s, a):
    return [[s * x for x in r] for r in a]


def eye(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def tr(a):
    return sum(a[i][i] for i in range(len(a)))


def is_zero(a):
    return all(x == 0 for r in a for x in r)


def ch_value(m):
    """X_n(m) via the recursion, n = size of m."""
    n = len(m)
    x = [row[:] for row in m]
    cur = sub(x, smul(tr(x), eye(n)))  # X_1
    for k in range(2, n + 1):
        p = mul(cur, x)
        cur = sub(p, smul(tr(p) / k, eye(n)))
    return cur


def rand_mat(rng, n):
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]


def check_ch():
    rng = random.Random(20260814)
    for n in (1, 2, 3):
        for _ in range(40):
            m = rand_mat(rng, n)
            assert is_zero(ch_value(m)), (n, m)
    print("CH recursion: X_n(M) = 0 exact for n=1,2,3 over 40 random samples each")
    m = mat(2, [1, 2, 3, 4])
    print(f"X_2([[1,2],[3,4]]) = {ch_value(m)} (expect zero matrix)")


def jordan_op_matrix_mn(n, b):
    """Matrix of T_b(c) = bc + cb on M_n in row-major matrix-unit coordinates."""
    cols = []
    for i in range(n):
        for j in range(n):
            e = [[Fraction(0)] * n for _ in range(n)]
            e[i][j] = Fraction(1)
            img = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(mul(b, e), mul(e, b))]
            cols.append([x for row in img for x in row])
    return [list(c) for c in zip(*cols)]


def check_mn_forms():
    rng = random.Random(7)
    for n in (1, 2, 3):
        for _ in range(20):
            b = rand_mat(rng, n)
            c = rand_mat(rng, n)
            Tb = jordan_op_matrix_mn(n, b)
            Tc = jordan_op_matrix_mn(n, c)
            f1 = tr(Tb)
            f2 = tr(mul(Tb, Tc))
            assert f1 == 2 * n * tr(b)
            assert f2 == 2 * n * tr(mul(b, c)) + 2 * tr(b) * tr(c)
    print("M_n forms: f1(b) = 2n tr(b), f2(b,c) = 2n tr(bc) + 2 tr(b) tr(c) for n=1,2,3")
    e11 = mat(2, [1, 0, 0, 0])
    e12p21 = mat(2, [0, 1, 1, 0])
    print(f"M_2: f1(E11) = {tr(jordan_op_matrix_mn(2, e11))}, "
          f"f2(E11,E11) = {tr(mul(jordan_op_matrix_mn(2, e11), jordan_op_matrix_mn(2, e11)))}, "
          f"f2(E12+E21,E12+E21) = {tr(mul(jordan_op_matrix_mn(2, e12p21), jordan_op_matrix_mn(2, e12p21)))}")


def exch_f1(a, b):
    return 2 * (a + b)


def exch_f2(a, b, c, d):
    return 4 * (a * c + b * d)


def check_exchange_forms():
    # B = F x F^op, T_{(a,b)}(c,d) = (2ac, 2bd): operator diag(2a, 2b).
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, -3)]:
        Tab = [[Fraction(2 * a), Fraction(0)], [Fraction(0), Fraction(2 * b)]]
        assert tr(Tab) == exch_f1(a, b)
        for (c, d) in [(1, 0), (5, 7)]:
            Tcd = [[Fraction(2 * c), Fraction(0)], [Fraction(0), Fraction(2 * d)]]
            assert tr(mul(Tab, Tcd)) == exch_f2(a, b, c, d)
    # Traceid10 scalar shadow: symmetric (a,a) vs skew (c,-c)
    assert exch_f2(1, 1, 1, -1) == 0
    assert exch_f1(1, -1) == 0
    print("exchange k=1 forms: f1((a,b)) = 2(a+b), f2 = 4(ac+bd); "
          f"f1((1,1)) = {exch_f1(1,1)}, f2((1,1),(1,1)) = {exch_f2(1,1,1,1)}; "
          "f2(sym,skew) = 0, f1(skew) = 0")


def check_ch_type_exchange():
    # degree 2 ansatz on F x F^op: x^2 + alpha * f1(x) x. Components (a,b):
    # a^2 + 2 alpha (a+b) a = 0 for all a,b -> a=1,b=0: 1+2a=0 -> alpha=-1/2;
    # a=b=1: 1+4a = -1 != 0 -> inconsistent.
    alpha = Fraction(-1, 2)
    assert 1 + 2 * alpha == 0 and 1 + 4 * alpha != 0
    print("exchange k=1: degree-2 CH-type ansatz inconsistent (frozen: no solution)")

    def val3(a, b):
        f1 = exch_f1(a, b)
        f1sq = exch_f1(a * a, b * b)
        out = []
        for t in (a, b):
            out.append(t ** 3 - Fraction(1, 2) * f1 * t ** 2
                       + (Fraction(1, 8) * f1 ** 2 - Fraction(1, 4) * f1sq) * t)
        return out
    for (a, b) in [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(-5)),
                   (Fraction(3, 7), Fraction(11, 2))]:
        assert val3(a, b) == [0, 0], (a, b)
    print("exchange k=1: x^3 - 1/2 f1(x) x^2 + (1/8 f1(x)^2 - 1/4 f1(x^2)) x == 0 "
          "(frozen: degree-3 solution exists)")


def check_ch_type_transpose():
    rng = random.Random(99)
    # M_2 with f1(b) = 4 tr b, f1(x^2) = 4 tr(b^2)
    for _ in range(25):
        b = rand_mat(rng, 2)
        f1 = 4 * tr(b)
        f1sq = 4 * tr(mul(b, b))
        b2 = mul(b, b)
        b3 = mul(b2, b)
        val = sub(sub(b3, smul(Fraction(1, 4) * f1, b2)),
                  smul(Fraction(1, 8) * f1sq - Fraction(1, 32) * f1 * f1, b))
        assert is_zero(val), b
    print("transpose k=2: x^3 - 1/4 f1(x) x^2 + (1/32 f1(x)^2 - 1/8 f1(x^2)) x == 0 on M_2 "
          "(frozen: degree-3 solution exists)")
    # transpose k=1 (F, f1(b) = 2b): x^2 - 1/2 f1(x) x = x^2 - x*x = 0
    for a in (Fraction(3), Fraction(-7, 5)):
        assert a * a - Fraction(1, 2) * (2 * a) * a == 0
    print("transpose k=1: x^2 - 1/2 f1(x) x == 0 on F (frozen: degree-2 solution exists)")


if __name__ == "__main__":
    check_ch()
    check_mn_forms()
    check_exchange_forms()
    check_ch_type_exchange()
    check_ch_type_transpose()
