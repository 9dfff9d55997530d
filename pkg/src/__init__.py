"""
Hypergraph Hamilton cycle and perfect matching packing
"""

__version__ = "0.1.0"
__author__ = "Tumurzakov"
