#!/usr/bin/env python3
"""Independent golden values for the analytic engine.

Sieves rational primes, assigns prime-ideal norms by the classical splitting
laws (no ideal arithmetic), and multiplies the local factors with mpmath at
60 significant digits. The printed values are frozen into the Rust tests.
"""
from mpmath import mp, mpf

mp.dps = 60


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, v in enumerate(flags) if v]


def norms_rationals(limit):
    return [p for p in sieve(limit)]


def norms_gaussian(limit):
    out = []
    for p in sieve(limit):
        if p == 2:
            out.append(2)
        elif p % 4 == 1:
            out.extend([p, p])
        else:
            out.append(p * p)
    return out


def plain(n, d):
    n = mpf(n)
    return (n - 1) ** 2 / n ** (d + 2)


def report(label, norms, d):
    prod = mpf(1)
    mu = mpf(0)
    sq = mpf(0)
    for n in norms:
        s = plain(n, d)
        prod *= 1 - s
        mu += s
        sq += s * s
    rho = 1 - prod
    print(f"{label}: density_lo = {mp.nstr(rho, 30)}")
    print(f"{label}: mean_lo    = {mp.nstr(mu, 30)}")
    print(f"{label}: sum_sq     = {mp.nstr(sq, 30)}")
    print(f"{label}: mu/rho     = {mp.nstr(mu / rho, 30)}")


if __name__ == "__main__":
    report("Q d=2 M=1e5", norms_rationals(10 ** 5), 2)
    report("Q(i) d=3 M=1e4", norms_gaussian(10 ** 4), 3)
