#!/usr/bin/env python3
"""Regenerates hyp1f1_oracle.csv: 200 random (a, b, z) tuples with reference
values computed by mpmath at 50 digits.

Parameters are sampled away from gamma-pole degeneracies (b or b-a within
0.05 of a non-positive integer at near-real b), where the reference value is
pole-suppressed and the comparison would measure cancellation instead of the
series.
"""
import math
import random

import mpmath as mp

mp.mp.dps = 50
rng = random.Random(20260809)

rows = []
while len(rows) < 200:
    are = rng.uniform(-2.5, 2.5)
    aim = rng.uniform(-2.5, 2.5)
    b_choice = rng.random()
    if b_choice < 0.3:
        bre, bim = 0.5, 0.0
    elif b_choice < 0.5:
        bre, bim = 1.5, 0.0
    else:
        bre, bim = rng.uniform(0.3, 3.0), rng.uniform(-1.0, 1.0)
    r = rng.uniform(0.0, 30.0)
    th = rng.uniform(-math.pi, math.pi)
    zre, zim = r * math.cos(th), r * math.sin(th)
    bma = complex(bre - are, bim - aim)
    if abs(bim) < 0.05:
        if min(abs(bma - k) for k in range(0, -7, -1)) < 0.05:
            continue
        if min(abs(complex(are, aim) - k) for k in range(0, -7, -1)) < 0.05:
            continue
    rows.append((are, aim, bre, bim, zre, zim))

with open("hyp1f1_oracle.csv", "w") as f:
    f.write("a_re,a_im,b_re,b_im,z_re,z_im,f_re,f_im\n")
    for (are, aim, bre, bim, zre, zim) in rows:
        v = mp.hyp1f1(mp.mpc(are, aim), mp.mpc(bre, bim), mp.mpc(zre, zim))
        f.write(
            f"{are:.17e},{aim:.17e},{bre:.17e},{bim:.17e},"
            f"{zre:.17e},{zim:.17e},{mp.nstr(mp.re(v), 20)},{mp.nstr(mp.im(v), 20)}\n"
        )
print("wrote", len(rows), "rows")
