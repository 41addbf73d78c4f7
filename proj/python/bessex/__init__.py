"""Area distribution under Bessel excursions.

Thin wrapper over the compiled _bessex module: the spectral solver for the
rescaled eigenproblem, the distribution in its hypergeometric / Airy / Talbot
forms, closed-form moments, the Levy limit near U0 = -3, and the Langevin
Monte Carlo sampler.
"""

from _bessex import *  # noqa: F401,F403
from _bessex import __version__  # noqa: F401
