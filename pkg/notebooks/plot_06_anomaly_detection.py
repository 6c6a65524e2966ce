"""
Flagging anomalous directions
=============================

A point is flagged when its arc distance to the median exceeds a quantile
of the fitted model.  A robust fit keeps outliers from hiding themselves.
"""

# %%
import numpy as np

import circrobust as cr

# %%
for name in ("frogs", "seastars"):
    x = cr.ingest(name).angles
    robust = cr.detect(x, alpha=0.01)
    base = cr.detect(x, alpha=0.01, baseline=True)
    print(f"{name}: robust cutoff {robust.cutoff:.4f} flags {np.round(robust.flagged_angles, 3)}")
    print(f"{' ' * len(name)}  baseline cutoff {base.cutoff:.4f} flags {np.round(base.flagged_angles, 3)}")

# %%
# Choosing the tail convention
# ----------------------------
# The default cutoff is the 1 - alpha quantile of the model.  Passing
# ``two_sided=True`` uses 1 - alpha/2 so that the false alarm rate is alpha.
for two in (False, True):
    print(two, round(cr.cutoff("vm", 4.0, 0.05, two_sided=two), 4))

# %%
# False alarm rate on clean data
# ------------------------------
m = cr.VonMises(0, 5)
rng = np.random.default_rng(11)
for two in (False, True):
    rate = np.mean([cr.detect(m.rvs(200, rng), alpha=0.05, two_sided=two).n_flagged / 200 for _ in range(100)])
    print(f"two_sided={two}: {rate:.3f}")
