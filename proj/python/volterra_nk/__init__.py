"""Arbitrary-precision solver for nonlinear Volterra integral equations of the
second kind: Picard and Newton-Kantorovich schemes with convergence diagnostics.

Scalars cross the boundary as decimal strings so values survive at any working
precision; parse them with ``mpmath.mpf`` or ``decimal.Decimal`` as needed.
"""

from ._core import (
    __version__,
    estimate_rate,
    precision_ladder,
    registered_kernels,
    solve,
)

__all__ = [
    "__version__",
    "estimate_rate",
    "precision_ladder",
    "registered_kernels",
    "solve",
]
