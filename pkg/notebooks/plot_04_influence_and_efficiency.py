"""
Influence functions and efficiency
==================================

Bounded influence is the price paid for efficiency.  The tables here
show both sides.
"""

# %%
import numpy as np

import circrobust as cr
from circrobust.efficiency import are_curve
from circrobust.influence import finite_difference_if, gross_error_sensitivity

model = cr.VonMises(0, 2)

# %%
# Influence function on a coarse grid
# -----------------------------------
# The classical CSD grows all the way to the antipode; the robust kinds
# are step functions that jump at the quartiles.
ys = np.linspace(0, np.pi, 7)
for k in cr.Dispersion:
    print(f"{k.value:5s}", np.round(cr.influence_function(model, k, ys), 3))

# %%
# A finite-difference check at one point
# --------------------------------------
y = 2.5
for k in cr.Dispersion:
    a = float(cr.influence_function(model, k, y))
    b = finite_difference_if(model, k, y)
    print(f"{k.value:5s} analytic {a:+.5f}  finite difference {b:+.5f}")

# %%
# Gross error sensitivity
# -----------------------
for k in cr.Dispersion:
    print(f"{k.value:5s} {gross_error_sensitivity(model, k):.4f}")

# %%
# Asymptotic relative efficiency against the MLE
# ----------------------------------------------
kappas = np.array([0.5, 1, 2, 4, 8, 50, 200])
for k in ("cmad", "clms", "clts"):
    print(f"{k:5s}", np.round(are_curve("vm", k, kappas), 4))

# %%
# CMAD breakdown bound
# --------------------
for kappa in (1, 2, 5, 20):
    print(kappa, round(cr.cmad_breakdown_bound(cr.VonMises(0, kappa)), 4))
