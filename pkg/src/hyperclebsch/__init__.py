"""Hypercomplexified one-forms: Clebsch potentials, hypercomplex duals, claim checks."""

__version__ = "0.1.0"
