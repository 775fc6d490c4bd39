"""Tripartite entanglement dynamics of three qubits in local damping reservoirs."""

__version__ = "0.1.0"
