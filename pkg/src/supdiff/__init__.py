"""Exact subdifferential toolkit for pointwise suprema of convex functions."""
