#!/usr/bin/env python3
"""Writes the declared field data for k = Q(i, sqrt(10)).

Cl(k) has order 2 and k(zeta_8) = k(sqrt(5)) is its Hilbert class field, so a prime of k
is principal iff its norm is 1 mod 8. Rational primes split completely in k iff
p = 1 mod 4 and (10|p) = 1 (four primes of norm p); other unramified primes give two
primes of norm p^2. Gal(k(zeta_40)/k) is {a : a = 1 mod 4, (40|a) = 1}.
"""
import argparse
import json
import math


def is_prime(n):
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def kronecker(a, n):
    # Kronecker symbol (a|n) for n > 0
    if n == 1:
        return 1
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=1000)
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args()

    t40 = [a for a in range(1, 40) if math.gcd(a, 40) == 1 and a % 4 == 1 and kronecker(40, a) == 1]
    gal = {}
    for m in sorted(d for d in range(1, 41) if 40 % d == 0):
        gal[str(m)] = sorted({a % m for a in t40} | ({0} if m == 1 else set()))
    primes = []
    for p in range(2, args.bound + 1):
        if not is_prime(p) or p in (2, 5):
            continue
        if p % 4 == 1 and kronecker(10, p) == 1:
            cls = [0] if p % 8 == 1 else [1]
            primes.extend([[p, cls]] * 4)
        else:
            primes.extend([[p * p, [0]]] * 2)
    field = {
        "name": "Q(i,sqrt10)",
        "kind": "declared",
        "gal": gal,
        "class_group": [2],
        "prime_norm_classes": primes,
        "declared_w": [{"m": 8, "s": [1], "w": []}],
    }
    with open(args.output, "w") as f:
        json.dump(field, f, separators=(",", ":"))
        f.write("\n")


if __name__ == "__main__":
    main()
