"""q-series toolkit and identity-verification harness."""
from .errors import *  # noqa: F401,F403
from .qcore import QContext, qbinomial, qpoch_finite, qpoch_infinite, qpoch_multi
from .qhyper import HyperSpec, LauricellaSpec, lauricella_sum, phi, phi_eval, phi_terminating
from .qpoly import PolyArgs, carlitz_hk, rogers_szego, stieltjes_wigert

__version__ = "0.1.0"
