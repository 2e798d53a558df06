"""Exact layer: supports, lattices, polytopes and mixed volumes."""
