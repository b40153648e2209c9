"""QuantumNash: Nash equilibria of Bayesian games played with shared two-qubit states"""
