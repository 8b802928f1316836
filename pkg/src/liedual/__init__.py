"""Exact Chevalley-Eilenberg cohomology, Hazewinkel-type duality checks and a
truncated Lubin-Tate series engine."""

__version__ = "0.1.0"
