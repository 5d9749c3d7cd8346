"""Custom Exceptions"""


class InputException(Exception):
    """
    InputException class

    Exception that can be raised when input data is malformed: a bad rational,
    a non-positive length, a disconnected graph, a point that is not on the
    graph or a function that breaks the integer slope law.
    """


class UnsupportedException(Exception):
    """
    UnsupportedException class

    Exception that can be raised when a request lies outside what the engines
    decide automatically.
    """


class PreconditionException(Exception):
    """
    PreconditionException class

    Exception that can be raised when an operation is called on input that
    does not satisfy its precondition.
    """


class InconsistencyException(Exception):
    """
    InconsistencyException class

    Exception that can be raised when an internal post-condition fails.
    """
