"""Exceptions raised by the game solver."""


class SolverError(Exception):
    """Base class for every error the solver reports to callers."""


class _LineError(SolverError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class GameFormatError(_LineError):
    """Syntax error in a game file."""


class GameValidationError(SolverError):
    """A parsed game breaks a structural invariant."""


class AutomatonFormatError(_LineError):
    """Syntax error in a Mealy or parameterized automaton file."""


class AutomatonValidationError(SolverError):
    """An automaton breaks a move or color constraint."""


class InvalidPathError(SolverError):
    """A play or product path does not follow the edge relation."""


class GameMismatchError(SolverError):
    """An automaton was bound to a different game than the one queried."""


class NotAChainError(SolverError):
    """A parameterized automaton expected to realize a chain does not."""


class InstanceTooLargeError(SolverError):
    """An instance exceeds the brute-force oracle guards."""


class SynthesisError(SolverError):
    """A synthesis loop failed to reach its postcondition."""
