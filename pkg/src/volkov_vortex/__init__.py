"""Relativistic electron vortex beams in a plane-wave laser: Volkov-Bessel states,
beam-centre shifts and Berry-curvature Hall dynamics."""

from .beam import BeamParams, SpacetimePoint, TruncationPolicy, density, partial_wave, volkov_bessel
from .laser import LaserField
from .mathcore import bessel_j, bessel_j_window

__all__ = [
    "BeamParams",
    "LaserField",
    "SpacetimePoint",
    "TruncationPolicy",
    "bessel_j",
    "bessel_j_window",
    "density",
    "partial_wave",
    "volkov_bessel",
]
