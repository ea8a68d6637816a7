"""Generalized Zeckendorf decompositions and Benford behaviour of their summands."""

from .recurrence import RecurrenceSpec, SequenceTable, generate_sequence, validate_spec

__all__ = ["RecurrenceSpec", "SequenceTable", "generate_sequence", "validate_spec"]
