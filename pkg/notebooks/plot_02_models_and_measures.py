"""
Von Mises and wrapped normal models
===================================

Population values of the four dispersion measures, and how each one maps
back to the concentration through the family's eta curve.
"""

# %%
import numpy as np

import circrobust as cr
from circrobust.distributions import eta

# %%
# Densities integrate to one and agree in the limit of high concentration
# -------------------------------------------------------------------------
# A von Mises with concentration kappa is close to a wrapped normal with
# sigma = 1/sqrt(kappa) once kappa is large.
t = np.linspace(-np.pi, np.pi, 2001)
for kappa in (1.0, 10.0, 100.0):
    vm, wn = cr.VonMises(0, kappa), cr.WrappedNormal(0, 1 / np.sqrt(kappa))
    gap = np.max(np.abs(vm.pdf(t) - wn.pdf(t))) / np.max(vm.pdf(t))
    print(f"kappa {kappa:6.1f}: relative sup gap between vM and WN densities {gap:.4f}")

# %%
# Population dispersion table
# ---------------------------
print(f"{'kappa':>7s} {'CSD':>8s} {'CMAD':>8s} {'CLMS':>8s} {'CLTS':>8s}")
for kappa in (1e-6, 0.5, 1, 2, 5, 20, 200):
    p = cr.population_dispersion(cr.VonMises(0, kappa))
    print(f"{kappa:7g} {p.csd:8.4f} {p.cmad:8.4f} {p.clms:8.4f} {p.clts:8.4f}")

# %%
# The eta curves
# --------------
# eta maps the CSD of a family member to its robust measure.  It is
# increasing, which is what lets a robust measure be turned into kappa.
for family in (cr.Family.VON_MISES, cr.Family.WRAPPED_NORMAL):
    cs = np.linspace(0.05, 1.3, 6)
    vals = [eta(family, cr.Dispersion.CLTS, float(c)) for c in cs]
    print(family.value, np.round(vals, 4))
