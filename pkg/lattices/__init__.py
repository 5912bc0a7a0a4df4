"""Cyclic and permutation-invariant lattice constructions."""
