#!/usr/bin/env python3
"""Regenerate fixtures/groups/2a8.json.

The double cover 2.A8 is built inside the Clifford algebra Cl_{0,8}
(e_i^2 = -1) as the group generated by spin lifts of (0 1 2) and
(1 2 3 4 5 6 7). It acts by left multiplication on a minimal left ideal;
the orbit of the defining idempotent has 240 points, and -1 acts without
fixed points there, so the action is faithful.

Needs numpy. Run: python3 tools/gen_2a8.py > fixtures/groups/2a8.json
"""
import json
import sys

import numpy as np

N = 8
D = 1 << N


def blade_mul(a, b):
    s, x = 0, a >> 1
    while x:
        s += bin(x & b).count("1")
        x >>= 1
    sign = -1 if s & 1 else 1
    if bin(a & b).count("1") & 1:
        sign = -sign
    return sign, a ^ b


SIGN = np.zeros((D, D), dtype=np.int64)
PROD = np.zeros((D, D), dtype=np.int64)
for a in range(D):
    for b in range(D):
        SIGN[a, b], PROD[a, b] = blade_mul(a, b)


def mul(x, y):
    r = np.zeros(D)
    for a in np.nonzero(x)[0]:
        for b in np.nonzero(y)[0]:
            r[PROD[a, b]] += SIGN[a, b] * x[a] * y[b]
    return r


def basis(bits):
    v = np.zeros(D)
    v[0] = 1
    for i in bits:
        e = np.zeros(D)
        e[1 << i] = 1
        v = mul(v, e)
    return v


def root(i):  # e_i - e_{i+1}, scaled by sqrt(2)
    return basis([i]) - basis([i + 1])


one = basis([])
g1 = mul(root(0), root(1)) / 2
g2 = one
for i in range(1, 7):
    g2 = mul(g2, root(i))
g2 = g2 / 8


def left_matrix(g):
    m = np.zeros((D, D))
    for b in range(D):
        e = np.zeros(D)
        e[b] = 1
        m[:, b] = mul(g, e)
    return m


mats = [left_matrix(g1), left_matrix(g2)]

idem = one.copy()
for blade in [(0, 1, 2, 3), (0, 1, 4, 5), (0, 2, 4, 6), (0, 3, 4, 7)]:
    idem = mul(idem, (one + basis(blade)) / 2)


def key(v):
    # coefficients are dyadic with small denominators, so this is exact
    return tuple(np.round(v * (1 << 20)).astype(np.int64))


points, index = [idem], {key(idem): 0}
i = 0
while i < len(points):
    for m in mats:
        w = m @ points[i]
        k = key(w)
        if k not in index:
            index[k] = len(points)
            points.append(w)
    i += 1

gens = []
for m in mats:
    img = [index[key(m @ p)] for p in points]
    seen, cycles = set(), []
    for s in range(len(img)):
        if s in seen:
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = img[x]
        if len(c) > 1:
            cycles.append(c)
    gens.append(cycles)

out = {"kind": "permutation", "name": "2.A8", "degree": len(points),
       "generators": gens}
json.dump(out, sys.stdout, separators=(",", ":"))
sys.stdout.write("\n")
