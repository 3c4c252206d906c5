"""Exact algebra engine: fields, combinatorics, Fock spaces and the DIM checks built on them."""
