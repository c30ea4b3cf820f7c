"""Exact computations for degenerating abelian varieties."""
