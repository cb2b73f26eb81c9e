"""Exact controllability analysis for leader-follower networks on undirected graphs."""

__version__ = "0.1.0"
