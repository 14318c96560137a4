"""Independent brute-force oracle for PGL_2(p), p prime.

Elements are 2x2 matrices over F_p normalized projectively. Used only to
freeze expected values in the C++ test-suite; it shares no code with the
library.
"""
import itertools
import sys
from math import gcd


def norm(m, p):
    a, b, c, d = m
    for x in (a, b, c, d):
        if x % p:
            inv = pow(x, p - 2, p)
            return tuple((y * inv) % p for y in m)
    raise ValueError


def mul(m, n, p):
    a, b, c, d = m
    e, f, g, h = n
    return norm(((a * e + b * g), (a * f + b * h), (c * e + d * g), (c * f + d * h)), p)


def pgl2(p):
    els = set()
    for m in itertools.product(range(p), repeat=4):
        if (m[0] * m[3] - m[1] * m[2]) % p:
            els.add(norm(m, p))
    return sorted(els)


def psl2(p):
    els = set()
    for m in itertools.product(range(p), repeat=4):
        if (m[0] * m[3] - m[1] * m[2]) % p == 1:
            els.add(norm(m, p))
    return sorted(els)


def power(m, k, p):
    r = (1, 0, 0, 1)
    for _ in range(k):
        r = mul(r, m, p)
    return r


def closure(gens, p):
    e = (1, 0, 0, 1)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def hurwitz(p, group):
    e = (1, 0, 0, 1)
    inv2 = [x for x in group if mul(x, x, p) == e]
    ord3 = [y for y in group if power(y, 3, p) == e]
    sols = [(x, y) for x in inv2 for y in ord3 if power(mul(x, y, p), 7, p) == e]
    return sols


if __name__ == "__main__":
    for p in (7, 11, 13):
        G = pgl2(p)
        S = psl2(p)
        sols = hurwitz(p, G)
        sizes = {}
        for x, y in sols:
            n = len(closure([x, y], p))
            sizes[n] = sizes.get(n, 0) + 1
        print("PGL2(%d) order %d Hurwitz phi0=%d by generated order %s" % (p, len(G), len(sols), sizes))
        gen_t = 0
        for x, y in hurwitz(p, S):
            if len(closure([x, y], p)) == len(S):
                gen_t += 1
        print("  PSL2(%d) order %d generating Hurwitz pairs %d -> s=%s" % (p, len(S), gen_t, gen_t / len(S)))
    sys.stdout.flush()
