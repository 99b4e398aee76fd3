"""Argument-normalizing decorators."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import inspect
from functools import wraps
from typing import TYPE_CHECKING, ParamSpec, TypeVar

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Callable

    P = ParamSpec("P")
    R = TypeVar("R")


###############################################################################


def as_float_array(*arg_names: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """Convert the named arguments to float arrays before the call.

    Parameters
    ----------
    *arg_names : str
        The name of the argument(s) to convert with :func:`numpy.asarray`.

    Returns
    -------
    Callable[[Callable[P, R]], Callable[P, R]]
        The decorator.
    """

    def as_float_array_inner(func: Callable[P, R]) -> Callable[P, R]:
        sig = inspect.signature(func)

        @wraps(func)
        def as_float_array_inner_inner(*args: P.args, **kwargs: P.kwargs) -> R:
            ba = sig.bind_partial(*args, **kwargs)
            ba.apply_defaults()
            for arg_name in arg_names:
                ba.arguments[arg_name] = np.asarray(ba.arguments[arg_name], dtype=float)

            return func(*ba.args, **ba.kwargs)

        return as_float_array_inner_inner

    return as_float_array_inner


def with_seed_sequence(func: Callable[P, R]) -> Callable[P, R]:
    """Normalize the ``rng`` argument of an optimizer to a `~numpy.random.SeedSequence`.

    ``rng`` may be `None` (use ``config.seed``), an integer seed, a
    `~numpy.random.SeedSequence` or a `~numpy.random.Generator` (from which a
    fresh seed is drawn).

    Parameters
    ----------
    func : Callable[P, R]
        An optimizer taking ``config`` and ``rng`` arguments.

    Returns
    -------
    Callable[P, R]
        The optimizer with a normalized ``rng``.
    """
    sig = inspect.signature(func)

    @wraps(func)
    def with_seed_sequence_inner(*args: P.args, **kwargs: P.kwargs) -> R:
        ba = sig.bind_partial(*args, **kwargs)
        ba.apply_defaults()
        rng = ba.arguments.get("rng")

        if rng is None:
            rng = np.random.SeedSequence(ba.arguments["config"].seed)
        elif isinstance(rng, np.random.Generator):
            rng = np.random.SeedSequence(int(rng.integers(2**63)))
        elif not isinstance(rng, np.random.SeedSequence):
            rng = np.random.SeedSequence(int(rng))
        ba.arguments["rng"] = rng

        return func(*ba.args, **ba.kwargs)

    return with_seed_sequence_inner
