"""stochlab: exact and numerical checks for stationary finitely dependent
colorings, interchange-process spectral gaps, and desk-scale interacting
particle system simulation."""

__version__ = "0.1.0"
