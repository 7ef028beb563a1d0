"""Central values of quadratic twists from weight-3/2 theta lifts of ternary forms."""

__version__ = "0.1.0"
