"""
The command line
================

Every capability is reachable as ``circrobust <command>``.  Here the
entry point is called in-process so the script needs nothing on PATH.
"""

# %%
from circrobust.cli import main

# %%
main(["estimate", "--data", "frogs", "--kind", "clts"])

# %%
main(["detect", "--data", "seastars", "--alpha", "0.01"])

# %%
main(["are", "--model", "wn", "--kind", "clms", "--sigma", "0.45"])

# %%
# Failures exit non-zero and describe themselves as JSON on stderr
code = main(["detect", "--data", "larva"])
print("exit code", code)
