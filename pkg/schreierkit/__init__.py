"""
schreierkit
Finite-scale toolkit for Schreier-type monoid extensions:
semidirect and crossed products, relaxed actions, factor systems and second cohomology.
"""

__version__ = "1.0.0"
