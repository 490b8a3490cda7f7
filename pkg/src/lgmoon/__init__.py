"""Elliptic expansions of j at rho and i, flat coordinates, and exact and
high-precision verification of the j-specialization identities."""

__version__ = "0.1.0"
