"""Numerics for Hasse zeta integrals of elliptic curves over Q.

Modules: ``lfunc`` (coefficients, L-series), ``hasse`` (the zeta-integral
product and its poles), ``boundary`` (the boundary function h_E), ``meanper``
(log-grid convolution algebra and annihilators), ``suite`` and ``cli``.
"""

__version__ = "0.1.0"
