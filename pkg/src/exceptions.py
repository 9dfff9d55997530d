"""
Custom exceptions for hypergraph packing
"""

from typing import Optional


class PackingException(Exception):
    """Base exception for packing operations"""
    exit_code = 1


class InvalidInputError(PackingException):
    """Malformed input or parameters"""
    exit_code = 2


class ConfigurationError(InvalidInputError):
    """Configuration related errors"""
    pass


class InvalidParameterError(InvalidInputError):
    """Parameter outside its admissible range"""
    pass


class InvalidQueryError(InvalidInputError):
    """Neighbourhood query with an illegal vertex set"""
    pass


class DivisibilityError(InvalidInputError):
    """Step size does not divide the vertex count"""
    pass


class ShapeError(InvalidInputError):
    """Bipartite graph with unequal sides"""
    pass


class DegenerateSizeError(InvalidInputError):
    """Audit slack too small for the graph size"""
    pass


class SizeError(InvalidInputError):
    """Instance too large for exhaustive search"""
    pass


class IncompleteSolutionError(InvalidInputError):
    """Auxiliary solution is not perfect or not Hamiltonian"""
    pass


class ReportSchemaError(InvalidInputError):
    """Report document does not match the schema"""
    pass


class HypergraphFormatError(InvalidInputError):
    """Malformed hypergraph or graph file"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DuplicateEdgeError(HypergraphFormatError):
    """Edge listed twice"""
    pass


class ArityError(HypergraphFormatError):
    """Edge line with the wrong number of vertices"""
    pass


class VertexRangeError(HypergraphFormatError):
    """Vertex outside 1..n"""
    pass


class CycleFormatError(HypergraphFormatError):
    """Malformed cycle file"""
    pass


class UnsupportedCaseError(PackingException):
    """(k, l) combination or mode outside the supported cases"""
    exit_code = 3


class InvariantViolationError(PackingException):
    """Internal invariant broken; always a bug"""
    exit_code = 4
