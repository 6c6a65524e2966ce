"""
Circular basics
===============

Angles live on the circle, so the usual mean and median need replacing.
This script walks through the primitives on the two bundled data sets.
"""

# %%
# Canonical angles
# ----------------
# Every input is mapped to [-pi, pi).  Values already inside are untouched.
import numpy as np

import circrobust as cr

raw = np.array([0.0, np.pi, -np.pi, 7.0, -3 * np.pi / 2])
print("raw      ", raw)
print("canonical", cr.canonicalize(raw))

# %%
# Summaries of the frog and sea star headings
# -------------------------------------------
for name in ("frogs", "seastars"):
    x = cr.ingest(name).angles
    s = cr.summarize(x)
    print(f"{name:9s} n={s.n:3d} mean={s.mean:+.3f} rho={s.rho:.3f} "
          f"csd={s.csd:.3f} median={s.median:+.3f} quartiles=({s.q_low:+.3f}, {s.q_high:+.3f})")

# %%
# Mean versus median under one wild point
# ---------------------------------------
# Push a single observation to the antipode of the bulk and watch which
# location estimate follows it.
x = cr.ingest("seastars").angles.copy()
med0 = cr.frechet_median(x)
for shift in (0.0, 1.0, 2.0, np.pi):
    y = x.copy()
    y[0] = cr.canonicalize(med0 + shift)
    print(f"shift {shift:4.2f}: mean {cr.circular_mean(y)[0]:+.4f}   median {cr.frechet_median(y):+.4f}")
