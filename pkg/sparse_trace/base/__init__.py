"""Numerical layer: sparse systems, path tracking and torus solving."""
