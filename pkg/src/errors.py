"""
Error types shared by every module
All are ValueErrors so callers can keep a single except clause
"""


class VerificationError(ValueError):
    """A checked invariant failed"""


class NoSolutionError(ValueError):
    """A construction is impossible; `citation` names the obstruction"""

    def __init__(self, message: str, citation: str = ""):
        super().__init__(message)
        self.citation = citation


class SchemaError(ValueError):
    """Malformed input file"""
