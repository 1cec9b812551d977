"""Flat SU(3) connections on Brieskorn spheres and the tabulated tau values."""
