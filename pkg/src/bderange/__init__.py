"""Type B derangement polynomials: exact computation and verification."""
