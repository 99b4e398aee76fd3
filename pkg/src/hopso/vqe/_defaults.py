"""Default constants and hyperparameters."""


__all__: tuple[str, ...] = ()

from types import MappingProxyType

import numpy as np

TWO_PI: float = 2 * np.pi

#: Chemical accuracy in Hartree (about 1 kcal/mol).
CHEMICAL_ACCURACY: float = 1.6e-3

#: Largest register for which dense matrices are built.
MAX_DENSE_QUBITS: int = 12

_HOPSO_DEFAULTS: dict[str, float | int | bool] = {
    "num_particles": 10,
    "max_iters": 500,
    "lam": 0.1,
    "c1": 1.0,
    "c2": 1.0,
    "m": 2.05,
    "t_ul": TWO_PI,
    "omega": 1.0,
    "periodic": True,
}
HOPSO_DEFAULTS = MappingProxyType(_HOPSO_DEFAULTS)

_PSO_DEFAULTS: dict[str, float | int] = {
    "num_particles": 10,
    "max_iters": 500,
    "c1": 2.05,
    "c2": 2.05,
    "chi": 0.729,
}
PSO_DEFAULTS = MappingProxyType(_PSO_DEFAULTS)

_DE_DEFAULTS: dict[str, float | int | tuple[float, float]] = {
    "popsize": 32,
    "max_iters": 157,
    "mutation": (0.5, 1.0),
    "recombination": 0.7,
}
DE_DEFAULTS = MappingProxyType(_DE_DEFAULTS)
