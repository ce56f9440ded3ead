"""Compactly supported cohomology of semilinear sets."""

from .cellular import NotLocallyClosedError, hc, locally_closed_obstruction
from .graded import GradedDims
from .simplicial import SimplicialPair, critical_radius, hc_model, triangulate_pair
