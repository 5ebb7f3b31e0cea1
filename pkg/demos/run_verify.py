"""
The invariant suite
===================

``verify`` rebuilds the configured model and checks sum rules, eigensolver
residuals, the Hermitian and perturbative limits, agreement of the two
occupation methods and the two-spin oracle.
"""

# %%
from superradiance.config import parse_config
from superradiance.pipeline import verify

config = parse_config("n-particles = 4\nn-orbitals = 8\ndelta-eps = 0.5\nseed = 0\n")
checks = verify(config)
for c in checks:
    print(c.line())

# %%
# The same suite from the command line::
#
#     superradiance verify run.cfg
