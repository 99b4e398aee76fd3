"""Circle geometry for best positions, attractors and threshold amplitudes.

All functions work elementwise on scalars or arrays, so a whole particle's
dimensions are handled in one call.
"""

from __future__ import annotations

__all__ = (
    "wrap_best",
    "circular_distance",
    "attractor_periodic",
    "attractor_linear",
    "threshold_amplitude",
    "threshold_amplitude_linear",
)

from typing import TYPE_CHECKING, Any

import numpy as np

from hopso.vqe._defaults import TWO_PI
from hopso.vqe._utils.arg_decorators import as_float_array

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    FloatOrArray = Any  # np.float64 | NDArray[np.float64]


@as_float_array("x", "r")
def wrap_best(x: ArrayLike, r: ArrayLike) -> FloatOrArray:
    """Map ``x`` to the congruent point in ``[r, r + 2pi)``.

    Only best positions are wrapped; particle positions stay untouched.

    Examples
    --------
    >>> round(float(wrap_best(7.0, 0.0)), 5)
    0.71681
    >>> round(float(wrap_best(-0.5, 0.2)), 5)
    5.78319
    """
    y = r + np.mod(x - r, TWO_PI)
    # mod may round up to exactly 2pi
    return np.where(y >= r + TWO_PI, r, y)[()]


@as_float_array("x", "y")
def circular_distance(x: ArrayLike, y: ArrayLike) -> FloatOrArray:
    """Length of the minor arc between ``x`` and ``y`` on a ``2pi`` circle."""
    rem = np.mod(np.abs(x - y), TWO_PI)
    return np.minimum(rem, TWO_PI - rem)[()]


@as_float_array("p", "g", "r")
def attractor_periodic(
    p: ArrayLike, g: ArrayLike, c1: float, c2: float, r: ArrayLike
) -> FloatOrArray:
    """Weighted average of ``p`` and ``g`` along the minor arc.

    When ``|p - g| <= pi`` this is the plain weighted average. Otherwise the
    smaller endpoint is moved up by ``2pi`` before averaging and the result is
    wrapped into ``[r, r + 2pi)``. For ``c1 == c2`` the far case equals
    ``((c1 p + c2 g) / (c1 + c2) + 2pi / (c1 + c2) - r) mod 2pi + r``.

    Parameters
    ----------
    p, g : array-like
        Personal and global best. Values outside ``[r, r + 2pi)`` are wrapped
        into it first, so the result only depends on ``p`` and ``g`` modulo
        ``2pi``.
    c1, c2 : float
        Attraction weights.
    r : array-like
        Window reference.

    Examples
    --------
    >>> float(attractor_periodic(1.0, 2.0, 1.0, 1.0, 0.0))
    1.5
    >>> round(float(attractor_periodic(0.1, 6.2, 1.0, 1.0, 0.0)), 5)
    0.00841
    """
    p, g = wrap_best(p, r), wrap_best(g, r)
    near = np.abs(p - g) <= np.pi
    p_shift = np.where(~near & (p < g), p + TWO_PI, p)
    g_shift = np.where(~near & (g <= p), g + TWO_PI, g)
    avg = (c1 * p_shift + c2 * g_shift) / (c1 + c2)
    return np.where(near, avg, wrap_best(avg, r))[()]


@as_float_array("p", "g")
def attractor_linear(p: ArrayLike, g: ArrayLike, c1: float, c2: float) -> FloatOrArray:
    """``(c1 p + c2 g) / (c1 + c2)``, ignoring periodicity."""
    return np.asarray((c1 * p + c2 * g) / (c1 + c2))[()]


@as_float_array("p", "g")
def threshold_amplitude(p: ArrayLike, g: ArrayLike, m: float) -> FloatOrArray:
    """Amplitude floor from the wrapped distance between ``p`` and ``g``.

    ``m * min(rem, 2pi - rem) / 2`` with ``rem = |p - g| mod 2pi``; lies in
    ``[0, m pi / 2]``.

    Examples
    --------
    >>> round(float(threshold_amplitude(0.0, np.pi / 2, 2.05)), 5)
    1.61007
    >>> round(float(threshold_amplitude(0.1, 6.2, 2.05)), 5)
    0.18776
    """
    return np.asarray(circular_distance(p, g) / 2 * m)[()]


@as_float_array("p", "g")
def threshold_amplitude_linear(p: ArrayLike, g: ArrayLike, m: float) -> FloatOrArray:
    """Amplitude floor ``m |p - g| / 2`` on an unwrapped axis."""
    return np.asarray(np.abs(p - g) / 2 * m)[()]
