"""Exact computations with conditionally free cumulants and the maps Phi[rho, psi], B_{a,t}."""

__version__ = "0.1.0"
