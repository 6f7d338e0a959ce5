"""Worst-case optimal quadrature for oscillatory integrals.

Computes ``I_k(f) = int_0^1 f(x) exp(-2 pi i k x) dx`` for ``f`` in Sobolev
spaces of smoothness ``s`` and certifies the worst-case error of each rule.
"""

from .exceptions import *  # noqa: F401,F403
from .bernoulli import *  # noqa: F401,F403
from .functions import *  # noqa: F401,F403
from .sobolev import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .adversary import *  # noqa: F401,F403
from .algorithms import *  # noqa: F401,F403

__version__ = "0.1.0"
