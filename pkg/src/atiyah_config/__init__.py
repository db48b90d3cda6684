"""Numerical verification toolkit for Atiyah's problem on configurations of points."""
from .atiyah import (
    AnalysisReport,
    Configuration,
    LiftAssignment,
    analyze,
    assign_lifts,
    atiyah_D,
    classic_D,
    directions,
    gram_matrix,
    polynomials,
)
from .kernels import BACKEND

__version__ = "0.1.0"
