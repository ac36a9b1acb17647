"""Zero-energy solutions of radial wave equations with two-term power-law potentials.

The package builds closed-form wavefunctions (power * stretched-exponential *
generalized Laguerre), classifies boundedness and normalizability of the
corresponding effective potentials, solves the relativistic (Dirac) branch at
rest-mass energy, and cross-checks everything against an independent numerical
oracle (adaptive quadrature, ODE shooting, node counting).
"""

__version__ = "0.1.0"

__all__ = [
    "specfn",
    "closedform",
    "oscillator",
    "powerlaw",
    "dirac",
    "halfline",
    "oracle",
    "verify",
]
