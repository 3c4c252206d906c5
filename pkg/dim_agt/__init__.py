"""Exact free-field checks for DIM algebra representations and 5D AGT."""
