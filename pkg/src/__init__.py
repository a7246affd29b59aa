# Copositivity Toolkit - small symmetric tensors and 3x3 matrices
__version__ = "1.0.0"
