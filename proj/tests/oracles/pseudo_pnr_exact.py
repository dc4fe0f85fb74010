#!/usr/bin/env python3
"""Exact pseudo-PNR click probabilities in rational arithmetic.

Evaluates C(M, n) sum_j (-1)^j C(n, j) ((1 - eta) + eta (n - j) / M)^N with
fractions.Fraction (no rounding, so the alternating sum is exact) at
eta = 7/10 and prints the values frozen into tests/detectors_test.cpp.
"""
from fractions import Fraction
from math import comb

ETA = Fraction(7, 10)
CASES = [(8, 5, 3), (8, 12, 6), (64, 20, 20), (64, 80, 30), (64, 80, 58), (64, 200, 64), (1024, 4, 2)]

for modes, photons, clicks in CASES:
    total = sum((-1) ** j * comb(clicks, j) * ((1 - ETA) + ETA * Fraction(clicks - j, modes)) ** photons
                for j in range(clicks + 1))
    value = comb(modes, clicks) * total
    print(f"{{{modes}, {photons}, {clicks}, {float(value)!r}}},")
