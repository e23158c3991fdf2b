"""Exact algebra toolkit for deformed colored sl(N) link homology at desk scale."""

__version__ = "0.1.0"
