"""Exception types shared across the package."""

from contextlib import contextmanager


class SgclustError(Exception):
    """Base class for every error raised by this package.

    ``stage`` names the pipeline stage that raised the error (for example
    "load" or "solve") once the error has crossed an :func:`error_stage`
    boundary; it stays None for errors raised outside a stage.
    """

    stage = None


class InputError(SgclustError, ValueError):
    """Invalid input data: malformed files, non-finite values, shape mismatches."""


class ParameterError(SgclustError, ValueError):
    """A parameter is outside its documented range."""


class NumericalError(SgclustError, RuntimeError):
    """A numerical routine failed or returned unusable output."""


@contextmanager
def error_stage(name):
    """Tag package errors raised inside the block with a stage name.

    The innermost tag wins: a stage already recorded on the exception is
    left alone, so nested stages attribute errors to their true origin.
    """
    try:
        yield
    except SgclustError as exc:
        if exc.stage is None:
            exc.stage = name
        raise
