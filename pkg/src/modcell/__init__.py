"""Combinatorial cell models of surface moduli.

Radial slit combinatorial types, admissible fat graphs with the critical
graph map between them, Sullivan diagrams, and exact integer cellular
homology of the resulting cell complexes.
"""

__version__ = "0.1.0"
