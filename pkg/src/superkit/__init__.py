"""superkit: exact supercommutative algebra, supermatrix groups, and
projective superspace utilities."""

__version__ = "0.1.0"
