"""
Bias under contamination
========================

Empirical bias curves and a small Monte Carlo study.
"""

# %%
import numpy as np

import circrobust as cr

# %%
# Bias curves
# -----------
# One clean sample, with ten percent of it moved to each location in turn.
bc = cr.bias_curve(cr.VonMises(0, 5), epsilon=0.1, n=3000, grid=13, seed=7)
print("theta  " + "  ".join(f"{k.value:>6s}" for k in bc.rel_bias))
for i, t in enumerate(bc.theta):
    print(f"{t:+.2f}  " + "  ".join(f"{v[i]:+6.3f}" for v in bc.rel_bias.values()))

# %%
# A small simulation study
# ------------------------
# Shift contamination at the antipode.  The full size run is the ``study``
# command of the CLI; this one is kept short.
rows = cr.contamination_study("vm", [2.0], epsilons=(0.0, 0.2), n=200, reps=60, seed=3)
for r in rows:
    print(f"eps {r.epsilon:.1f} {r.estimator:5s} median {r.median:6.3f}  IQR [{r.q1:6.3f}, {r.q3:6.3f}]")

# %%
# Wrapped normal, where the estimate is sigma instead of kappa
rows = cr.contamination_study("wn", [0.5], epsilons=(0.2,), n=200, reps=60, seed=3)
print({r.estimator: round(r.median, 3) for r in rows})
