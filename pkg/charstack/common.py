"""Common routines"""
import contextlib
import functools
import os
from typing import Iterator, List, Optional

import sympy
from clikit.io import ConsoleIO
from clikit.ui.components import ProgressBar

DEFAULT_CUTOFF = 8
PARTITION_BOUND = 12
MACDONALD_BOUND = 6
HOOK_BOUND = 6
SYMFUNC_CUTOFF = 8
ELEMENT_BUDGET = 2500
GROUP_BUDGET = 20000
ORBIT_BUDGET = 10 ** 6
ORBIT_SET_BUDGET = 10 ** 5


class DivisionNotExact(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class ZeroDivisor(ZeroDivisionError):
    pass


class LogOfNonUnit(ValueError):
    pass


class ExpOfNonzeroConstant(ValueError):
    pass


class InverseOfNonUnit(ValueError):
    pass


class OddPowersRemain(ValueError):
    """Raised when a value demanded as a function of q = u**2 still depends on odd powers of u."""


class BoundExceeded(ValueError):
    pass


class CutoffExceeded(ValueError):
    pass


class RangeError(ValueError):
    pass


class BasisMismatch(TypeError):
    pass


class IntegralityViolation(ArithmeticError):
    """Raised when a value that must have integer coefficients does not. Signals a bug."""


class BudgetExceeded(RuntimeError):
    pass


class NotClassConstant(RuntimeError):
    pass


def num_threads() -> int:
    """Number of worker threads used by the verification suites.

    Read from the ``CHARSTACK_NUM_THREADS`` environment variable, default 1.
    """
    value = os.environ.get("CHARSTACK_NUM_THREADS", "1")
    try:
        threads = int(value)
    except ValueError:
        raise ValueError(f"`CHARSTACK_NUM_THREADS` must be a positive integer, found `{value}`.")
    if threads < 1:
        raise ValueError(f"`CHARSTACK_NUM_THREADS` must be a positive integer, found `{value}`.")
    return threads


@functools.lru_cache(maxsize=None)
def mobius(n: int) -> int:
    assert n >= 1, n
    return int(sympy.mobius(n))


@functools.lru_cache(maxsize=None)
def divisors(n: int) -> List[int]:
    return [int(d) for d in sympy.divisors(n)]


def two_adic_valuation(n: int) -> int:
    assert n >= 1, n
    return (n & -n).bit_length() - 1


def prime_factors(n: int) -> List[int]:
    return [int(p) for p in sympy.primefactors(n)]


@contextlib.contextmanager
def progress(message: str, steps: int, io: Optional[ConsoleIO] = None) -> Iterator[ProgressBar]:
    """Show a progress bar on stderr while a long enumeration runs.

    The bar is cleared and redrawn complete before ``finish`` so that the
    last line on the console is the finished bar followed by "Done.".
    """
    if io is None:
        io = ConsoleIO()
    io.error_line(f"<info>{message}</info>")
    progress_bar = ProgressBar(io)
    progress_bar.set_format("very_verbose")
    progress_bar.start(max=max(steps, 1))
    try:
        yield progress_bar
    finally:
        progress_bar.clear()
        progress_bar.display()
        progress_bar.finish()
        io.error_line("\n<info>Done.</info>")
