#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Everything here is computed with plain Python integers/fractions (and sympy
for the symbolic sizes), without sharing code with the library. Run with
--out PATH to write the JSON consumed by the tests.
"""
import argparse
import json
from fractions import Fraction
from math import gcd


def somos(k, alpha, beta, init, lo, hi):
    """Somos-k over Q by the plain recurrence, forward and backward."""
    t = {i + 1: Fraction(v) for i, v in enumerate(init)}
    a, b = Fraction(alpha), Fraction(beta)
    for m in range(k + 1, hi + 1):
        t[m] = (a * t[m - 1] * t[m - k + 1] + b * t[m - 2] * t[m - k + 2]) / t[m - k]
    for j in range(0, lo - 1, -1):
        t[j] = (a * t[j + k - 1] * t[j + 1] + b * t[j + k - 2] * t[j + 2]) / t[j + k]
    return {n: t[n] for n in range(lo, hi + 1)}


def eds_duplication(a1, a2, a3, a4, hi):
    """EDS from the doubling formulas (a1 = 1)."""
    a = {0: 0, 1: a1, 2: a2, 3: a3, 4: a4}
    for n in range(5, hi + 1):
        m = n // 2
        if n % 2:
            a[n] = a[m + 2] * a[m] ** 3 - a[m - 1] * a[m + 1] ** 3
        else:
            num = a[m] * (a[m + 2] * a[m - 1] ** 2 - a[m - 2] * a[m + 1] ** 2)
            assert num % a2 == 0
            a[n] = num // a2
    return a


def vp(x, p):
    x = Fraction(x)
    if x == 0:
        return None
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def occurrences(seq, p, r):
    return [n for n in sorted(seq) if seq[n] == 0 or vp(seq[n], p) >= r]


def curve_order(c, p, x, y):
    """Order of (x, y) on y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over F_p (p odd)."""
    c3, c2, c1, c0 = [Fraction(v) for v in c]
    red = lambda q: Fraction(q).numerator * pow(Fraction(q).denominator, -1, p) % p
    c3, c2, c1, c0, x, y = map(red, (c3, c2, c1, c0, x, y))
    assert (y * y - (c3 * x ** 3 + c2 * x * x + c1 * x + c0)) % p == 0

    def add(P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2 and (y1 + y2) % p == 0:
            return None
        if x1 == x2:
            lam = (3 * c3 * x1 * x1 + 2 * c2 * x1 + c1) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = ((lam * lam - c2) * pow(c3, -1, p) - x1 - x2) % p
        return (x3, (-(y1 + lam * (x3 - x1))) % p)

    P, Q, n = (x, y), (x, y), 1
    while Q is not None:
        Q, n = add(Q, P), n + 1
    return n


def closure(seed, lo, hi):
    s = set(seed)
    while True:
        new = {2 * a - b for a in s for b in s if lo <= 2 * a - b <= hi} - s
        if not new:
            return sorted(s)
        s |= new


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def symbolic_sizes(n_max):
    import sympy
    al, be = sympy.symbols("alpha beta")
    t = {1: 1, 2: 1, 3: 1, 4: 1}
    for m in range(5, n_max + 1):
        t[m] = sympy.expand(sympy.cancel((al * t[m - 1] * t[m - 3] + be * t[m - 2] ** 2) / t[m - 4]))
    return {str(m): len(sympy.Poly(t[m], al, be).terms()) for m in range(1, n_max + 1)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out")
    ap.add_argument("--check", help="compare against an existing file; exit 1 on difference")
    args = ap.parse_args()

    s4 = somos(4, 1, 1, [1, 1, 1, 1], -50, 200)
    s5 = somos(5, 1, 1, [1] * 5, 1, 11)
    out = {}
    out["somos4_unit_1_12"] = [str(s4[n]) for n in range(1, 13)]
    out["somos5_unit_1_11"] = [str(s5[n]) for n in range(1, 12)]
    out["somos4_unit_-10_0"] = [str(s4[n]) for n in range(-10, 1)]
    out["somos4_unit_mod4_-50_200"] = [int(s4[n]) % 4 for n in range(-50, 201)]
    out["somos4_unit_p2_occurrences"] = occurrences(s4, 2, 1)
    out["somos4_unit_p2_square_occurrences"] = occurrences(s4, 2, 2)
    for p in (3, 7, 11):
        occ = occurrences({n: s4[n] for n in range(-20, 121)}, p, 1)
        out[f"somos4_unit_p{p}_gap"] = occ[1] - occ[0]
        out[f"curve_unit_order_p{p}"] = curve_order([4, 0, -4, 1], p, 1, 1)
    s49 = somos(4, 4, 9, [1, 3, 3, 1], -40, 300)
    out["a4b9_p3_valuations"] = sorted({vp(v, 3) for v in s49.values() if vp(v, 3) >= 1})
    out["a4b9_p5_gaps"] = []
    for r in range(1, 5):
        occ = occurrences(s49, 5, r)
        out["a4b9_p5_gaps"].append(occ[1] - occ[0] if len(occ) > 1 else None)
    out["a4b9_curve_order"] = curve_order(
        [4, 0, Fraction(-12428112196, 19683), Fraction(1385503884676628, 14348907)], 5, Fraction(55750, 243), 2)
    s25 = somos(4, 2, 5, [1, 3, 2, 5], -30, 120)
    out["a2b5_p7_occurrences"] = occurrences(s25, 7, 1)
    out["a2b5_p7_valuations"] = sorted({vp(s25[n], 7) for n in out["a2b5_p7_occurrences"]})
    c25 = [4, 0, Fraction(-48492460561, 38880000), Fraction(10678311547192441, 1259712000000)]
    out["a2b5_curve_orders"] = [curve_order(c25, 7, Fraction(223081, 21600), y) for y in (3, 4)]
    out["eds_1_1_m1_1"] = eds_duplication(1, 1, -1, 1, 30)
    out["eds_1_1_m1_1"] = [out["eds_1_1_m1_1"][n] for n in range(0, 31)]
    out["closure_examples"] = [
        {"seed": s, "closure": closure(s, -60, 60)} for s in ([0, 6, 10], [3], [1, 4], [-7, 2, 20], [5, 5])
    ]
    out["fib_0_40"] = [str(fib(n)) for n in range(0, 41)]
    out["cavachi_divides"] = all(
        fib(n * fib(n) ** m) % fib(n) ** (m + 1) == 0 for n in range(4, 10) for m in (1, 2))
    out["cavachi_exceptional"] = all(fib(3 * 2 ** m) % 2 ** (m + 2) == 0 for m in range(1, 7))
    out["conjecture_3_occurrences"] = [n for n in range(1, 201) if s4[n].numerator % 3 == 0]
    out["conjecture_9_occurrences"] = [n for n in range(1, 201) if s4[n].numerator % 9 == 0]
    out["somos4_symbolic_sizes"] = symbolic_sizes(16)
    gcds = [gcd(int(s4[i]), int(s4[j])) for i in range(1, 60) for j in range(i + 1, i + 4)]
    out["somos4_unit_coprime_span3"] = all(g == 1 for g in gcds)

    text = json.dumps(out, indent=1, sort_keys=True) + "\n"
    if args.check:
        with open(args.check) as f:
            stored = f.read()
        if stored != text:
            print("oracle output differs from " + args.check)
            raise SystemExit(1)
        print("oracle output matches " + args.check)
    elif args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
