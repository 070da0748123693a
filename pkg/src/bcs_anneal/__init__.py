"""Quantum annealing with the driven BCS Hamiltonian."""

__version__ = "0.1.0"
