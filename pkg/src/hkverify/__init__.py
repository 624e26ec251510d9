"""Exact verification of graph-homology, Lefschetz and Riemann-Roch identities
for hyperkaehler manifolds."""

__version__ = "0.1.0"
