"""Commutative algebra kernel: polynomials, standard bases, homological algebra, linkage."""
