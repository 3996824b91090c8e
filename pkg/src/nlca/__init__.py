"""Exact symbolic computation for finite n-Lie conformal algebras."""
