"""Exact symbolic engine for conformal symmetry breaking operators between
differential forms on flat pseudo-Riemannian spaces and their space forms."""

__version__ = "0.1.0"
