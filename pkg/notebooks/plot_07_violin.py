"""
Circular violin plots
=====================

The violin is a kernel density wrapped around a ring, mirrored on both
sides, with the median, the interquartile box and flagged points marked.
Output is plain SVG written next to this script.
"""

# %%
from pathlib import Path

import circrobust as cr
from circrobust.violin import ViolinStyle, render_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %%
# Default: the ring is drawn only within the detection cutoff of the median
for name in ("frogs", "seastars"):
    x = cr.ingest(name).angles
    path = out / f"{name}_violin.svg"
    path.write_text(cr.violin_svg(x, title=name))
    print("wrote", path)

# %%
# Height clipping keeps the full ring and caps its thickness instead
x = cr.ingest("seastars").angles
g = cr.violin_geometry(x, clip="height")
print(f"bandwidth nu = {g.nu:.2f}, cap {g.clip_density:.4f} of peak {g.max_density:.4f}")
(out / "seastars_height.svg").write_text(render_svg(g, ViolinStyle(zero="north", clockwise=True)))
