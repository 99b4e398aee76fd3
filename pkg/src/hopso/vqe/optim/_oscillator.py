"""Damped harmonic-oscillator motion of a single particle coordinate."""

from __future__ import annotations

__all__ = (
    "oscillator_position",
    "oscillator_velocity",
    "advance_time",
    "init_amplitude_phase",
)

from typing import TYPE_CHECKING, Any, NamedTuple

import numpy as np

from hopso.vqe._defaults import TWO_PI

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

# velocity components below this are treated as zero when choosing the branch
_BRANCH_TOL = 1e-9


def oscillator_position(
    A0: ArrayLike,  # noqa: N803
    lam: float,
    omega: float,
    theta: ArrayLike,
    t: ArrayLike,
    a: ArrayLike,
) -> Any:
    """``x(t) = A0 exp(-lam t) cos(omega t + theta) + a``.

    Examples
    --------
    >>> float(oscillator_position(1.0, 0.0, 1.0, 0.0, 0.0, 0.0))
    1.0
    >>> round(float(oscillator_position(1.0, 0.1, 1.0, 0.0, np.pi, 0.0)), 4)
    -0.7304
    """
    return np.asarray(A0) * np.exp(-lam * np.asarray(t)) * np.cos(
        omega * np.asarray(t) + theta
    ) + a


def oscillator_velocity(
    A0: ArrayLike,  # noqa: N803
    lam: float,
    omega: float,
    theta: ArrayLike,
    t: ArrayLike,
) -> Any:
    """``v(t) = -omega A(t) sin(omega t + theta) - lam A(t) cos(omega t + theta)``.

    with ``A(t) = A0 exp(-lam t)``.
    """
    amp = np.asarray(A0) * np.exp(-lam * np.asarray(t))
    phase = omega * np.asarray(t) + theta
    return -omega * amp * np.sin(phase) - lam * amp * np.cos(phase)


def advance_time(t: ArrayLike, t_ul: float, rng: np.random.Generator) -> Any:
    """Move a particle clock forward by ``u ~ Uniform[0, t_ul)``.

    An array of clocks (one per dimension) advances by independent draws.

    Examples
    --------
    >>> rng = np.random.default_rng(0)
    >>> advance_time(np.zeros(3), 2 * np.pi, rng).shape
    (3,)
    """
    if np.ndim(t) == 0:
        return float(t) + float(rng.uniform(0.0, t_ul))
    t = np.asarray(t, dtype=float)
    return t + rng.uniform(0.0, t_ul, size=t.shape)


class AmplitudePhase(NamedTuple):
    """Result of `init_amplitude_phase`."""

    amplitude: NDArray[np.float64]
    phase: NDArray[np.float64]
    valid: NDArray[np.bool_]


def init_amplitude_phase(
    x0: ArrayLike,
    v0: ArrayLike,
    a: ArrayLike,
    lam: float,
    omega: float,
) -> AmplitudePhase:
    r"""Amplitude and phase that reproduce ``(x0, v0)`` at ``t = 0``.

    ``A0 = sqrt((x0 - a)^2 + (v0 + lam (x0 - a))^2 / omega^2)`` and
    ``theta = arccos((x0 - a) / A0)``. The arccos branch lies in ``[0, pi]``,
    which always gives a non-positive sine term of the velocity; when
    ``v0 + lam (x0 - a)`` is positive the phase is replaced by
    ``2pi - theta``. The amplitude is never floored here.

    No clipping is applied: where the arccos argument is undefined (``A0 =
    0``) or outside ``[-1, 1]`` the coordinate is reported invalid, which
    marks the particle dead.

    Parameters
    ----------
    x0, v0 : array-like
        Current position and velocity.
    a : array-like
        Attractor.
    lam, omega : float
        Damping rate and angular frequency.

    Returns
    -------
    AmplitudePhase
        ``amplitude``, ``phase`` in ``[0, 2pi)`` (NaN where invalid) and the
        per-coordinate ``valid`` mask.

    Examples
    --------
    >>> out = init_amplitude_phase(0.0, 1.0, 0.0, 0.0, 1.0)
    >>> float(out.amplitude), round(float(out.phase / np.pi), 12), bool(out.valid)
    (1.0, 1.5, True)
    >>> bool(init_amplitude_phase(0.0, 0.0, 0.0, 0.1, 1.0).valid)
    False
    """
    dx = np.asarray(x0, dtype=float) - np.asarray(a, dtype=float)
    sine_part = np.asarray(v0, dtype=float) + lam * dx
    amplitude = np.sqrt(dx**2 + (sine_part / omega) ** 2)

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = dx / amplitude
    valid = np.isfinite(ratio) & (np.abs(ratio) <= 1.0)

    theta = np.arccos(np.where(valid, ratio, 0.0))
    theta = np.where(sine_part > _BRANCH_TOL, TWO_PI - theta, theta)
    theta = np.where(valid, np.mod(theta, TWO_PI), np.nan)
    return AmplitudePhase(amplitude, theta, valid)
