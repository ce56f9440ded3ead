"""Floating-point Paley-Wiener checks for test functions on bounded polytopes."""

from .growth import TOL, GrowthCertificate, TransformGrid, certify, growth_certificate, support_values
from .laplace import (
    KINDS,
    TestFunction,
    box_indicator_oracle,
    laplace_grid,
    laplace_numeric,
    quadrature_rule,
    simplex_indicator_oracle,
    simplex_volume,
)
