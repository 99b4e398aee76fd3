"""Experiment configuration files and bundled presets.

A configuration file is flat ``key = value`` text with ``#`` comments. Numeric
values may be :mod:`numexpr` expressions over ``pi``, e.g. ``t_ul = 2*pi``.
All problems found in a file are reported together in one
`ConfigurationError`.
"""

from __future__ import annotations

__all__ = (
    "SCHEMA",
    "ConfigField",
    "parse_config",
    "build_experiment",
    "load_experiment",
    "list_presets",
    "preset_text",
)

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import TYPE_CHECKING, Any

import numexpr as ne
import numpy as np
from astropy.extern.configobj.configobj import ConfigObj, ConfigObjError

from hopso.vqe._ansatz import AnsatzSpec
from hopso.vqe._defaults import CHEMICAL_ACCURACY, DE_DEFAULTS
from hopso.vqe._errors import ConfigurationError, HopsoVQEError
from hopso.vqe._hamiltonians import h2_hamiltonian, load_pauli_sum
from hopso.vqe._vqe import CostSpec, ExperimentConfig
from hopso.vqe.optim import DeConfig, HopsoConfig, PsoConfig

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping

    from hopso.vqe._hamiltonians import PauliSum


_PRESET_SUFFIX = ".cfg"
_TRUE = frozenset({"true", "yes", "on", "1"})
_FALSE = frozenset({"false", "no", "off", "0"})


@dataclass(frozen=True)
class ConfigField:
    """One key of the configuration schema.

    Parameters
    ----------
    kind : type
        ``str``, ``int``, ``float`` or ``bool``.
    default : Any
        Value when the key is absent; `None` defers to the optimizer default.
    check : callable or None
        Returns an error message for an invalid value, else `None`.
    optimizers : frozenset of str or None
        Optimizers the key applies to; `None` for all.
    """

    kind: type
    default: Any
    check: Callable[[Any], str | None] | None = None
    optimizers: frozenset[str] | None = None


def _at_least(lo: float) -> Callable[[Any], str | None]:
    return lambda v: None if v >= lo else f"must be >= {lo}, got {v}"


def _positive(v: float) -> str | None:
    return None if v > 0 else f"must be > 0, got {v}"


def _one_of(*choices: str) -> Callable[[Any], str | None]:
    return lambda v: None if v in choices else f"must be one of {choices}, got {v!r}"


_HOPSO = frozenset({"hopso"})
_SWARMS = frozenset({"hopso", "pso"})
_DE = frozenset({"de"})

SCHEMA: MappingProxyType[str, ConfigField] = MappingProxyType(
    {
        # problem
        "problem": ConfigField(str, "h2", _one_of("h2", "lih", "file")),
        "hamiltonian": ConfigField(str, None),
        "reps": ConfigField(int, None, _at_least(0)),
        # optimizer
        "optimizer": ConfigField(str, "hopso", _one_of("hopso", "pso", "de")),
        "num_particles": ConfigField(int, None, _at_least(1), _SWARMS),
        "max_iters": ConfigField(int, None, _at_least(0)),
        "lambda": ConfigField(float, None, _at_least(0), _HOPSO),
        "c1": ConfigField(float, None, _positive, _SWARMS),
        "c2": ConfigField(float, None, _positive, _SWARMS),
        "m": ConfigField(float, None, _positive, _HOPSO),
        "t_ul": ConfigField(float, None, _positive, _HOPSO),
        "omega": ConfigField(float, None, _positive, _HOPSO),
        "periodic": ConfigField(bool, None, None, _HOPSO),
        "chi": ConfigField(float, None, _positive, frozenset({"pso"})),
        "popsize": ConfigField(int, None, _at_least(5), _DE),
        "mutation_min": ConfigField(float, None, _at_least(0), _DE),
        "mutation_max": ConfigField(float, None, _at_least(0), _DE),
        "recombination": ConfigField(float, None, _at_least(0), _DE),
        # noise and budget
        "shots": ConfigField(int, 0, _at_least(0)),
        "eval_budget": ConfigField(int, 0, _at_least(0)),
        # experiment
        "runs": ConfigField(int, 1, _at_least(1)),
        "seed": ConfigField(int, 0, _at_least(0)),
        "parallel": ConfigField(int, 0, _at_least(0)),
        "chemical_accuracy": ConfigField(float, CHEMICAL_ACCURACY, _positive),
    }
)

# config key -> optimizer config field
_RENAMES = MappingProxyType({"lambda": "lam"})


##############################################################################
# Parsing


def _coerce(raw: Any, kind: type) -> Any:
    """Convert a raw value to ``kind``, raising `ValueError` on failure."""
    if not isinstance(raw, str):
        value = raw
    elif kind is str:
        return raw
    elif kind is bool:
        low = raw.strip().lower()
        if low not in _TRUE | _FALSE:
            msg = f"expected a boolean, got {raw!r}"
            raise ValueError(msg)
        return low in _TRUE
    else:
        try:
            value = ne.evaluate(raw, local_dict={"pi": np.pi}).item()
        except Exception as exc:  # noqa: BLE001  # numexpr raises several types
            msg = f"cannot evaluate {raw!r}: {exc}"
            raise ValueError(msg) from None

    if kind is bool:
        return bool(value)
    if isinstance(value, bool) or not np.isfinite(float(value)):
        msg = f"expected a finite number, got {raw!r}"
        raise ValueError(msg)
    if kind is int:
        if float(value) != int(value):
            msg = f"expected an integer, got {raw!r}"
            raise ValueError(msg)
        return int(value)
    return float(value)


def parse_config(
    text: str, overrides: Mapping[str, Any] | None = None
) -> dict[str, Any]:
    """Parse and validate configuration text.

    Parameters
    ----------
    text : str
        File contents.
    overrides : mapping, optional
        Values taking precedence over the file, e.g. from the command line.
        `None` values are ignored.

    Returns
    -------
    dict[str, Any]
        Every schema key, typed, with defaults filled in.

    Raises
    ------
    ConfigurationError
        Listing every unknown key, section, bad value and inapplicable key.

    Examples
    --------
    >>> cfg = parse_config("optimizer = hopso\\nt_ul = 2*pi  # full period")
    >>> round(cfg["t_ul"], 6), cfg["runs"]
    (6.283185, 1)
    """
    try:
        parsed = ConfigObj(text.splitlines(), interpolation=False, file_error=True)
    except ConfigObjError as exc:
        msg = f"invalid configuration:\n  {exc}"
        raise ConfigurationError(msg) from None

    problems = [f"sections are not allowed: [{name}]" for name in parsed.sections]
    raw: dict[str, Any] = {k: parsed[k] for k in parsed.scalars}
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})

    values: dict[str, Any] = {}
    for key, value in raw.items():
        spec = SCHEMA.get(key)
        if spec is None:
            problems.append(f"{key}: unknown key")
            continue
        if isinstance(value, list):
            problems.append(f"{key}: list values are not allowed")
            continue
        try:
            values[key] = _coerce(value, spec.kind)
        except ValueError as exc:
            problems.append(f"{key}: {exc}")
            continue
        if spec.check is not None and (err := spec.check(values[key])) is not None:
            problems.append(f"{key}: {err}")

    optimizer = values.get("optimizer", SCHEMA["optimizer"].default)
    for key in values:
        spec = SCHEMA[key]
        if spec.optimizers is not None and optimizer not in spec.optimizers:
            problems.append(f"{key}: does not apply to optimizer {optimizer!r}")
    if "mutation_min" in values and "mutation_max" in values:
        if values["mutation_min"] > values["mutation_max"]:
            problems.append("mutation_min: must not exceed mutation_max")

    if problems:
        msg = "invalid configuration:\n  " + "\n  ".join(problems)
        raise ConfigurationError(msg)

    return {k: values.get(k, f.default) for k, f in SCHEMA.items()}


##############################################################################
# Building


def _optimizer_config(values: Mapping[str, Any]) -> HopsoConfig | PsoConfig | DeConfig:
    name = values["optimizer"]
    cls = {"hopso": HopsoConfig, "pso": PsoConfig, "de": DeConfig}[name]
    kwargs: dict[str, Any] = {"seed": values["seed"]}
    for key, spec in SCHEMA.items():
        applies = spec.optimizers is not None and name in spec.optimizers
        if (applies or key == "max_iters") and values[key] is not None:
            kwargs[_RENAMES.get(key, key)] = values[key]

    if name == "de":
        lo, hi = DE_DEFAULTS["mutation"]
        lo = kwargs.pop("mutation_min", lo)
        hi = kwargs.pop("mutation_max", hi)
        kwargs["mutation"] = (lo, hi)
    return cls(**kwargs)


def _hamiltonian(values: Mapping[str, Any], base_dir: Path) -> PauliSum:
    problem, path = values["problem"], values["hamiltonian"]
    if problem == "h2" and path is None:
        return h2_hamiltonian()
    if path is None:
        msg = f"problem {problem!r} requires a Hamiltonian file (key 'hamiltonian')"
        raise ConfigurationError(msg)
    return load_pauli_sum(base_dir / Path(path).expanduser())


_DEFAULT_REPS = MappingProxyType({"h2": 3, "lih": 4, "file": 3})


def build_experiment(
    values: Mapping[str, Any], base_dir: str | Path = "."
) -> ExperimentConfig:
    """Turn validated values (from `parse_config`) into an `ExperimentConfig`.

    Relative Hamiltonian paths are resolved against ``base_dir``.

    Raises
    ------
    ConfigurationError
        If a setting combination is invalid.
    HamiltonianParseError, OSError
        If the Hamiltonian file cannot be read.
    """
    h = _hamiltonian(values, Path(base_dir))
    reps = values["reps"] if values["reps"] is not None else _DEFAULT_REPS[values["problem"]]
    optimizer = _optimizer_config(values)
    budget = values["eval_budget"] or optimizer.budget
    population = optimizer.popsize if isinstance(optimizer, DeConfig) else optimizer.num_particles
    if budget < population:
        msg = f"eval_budget {budget} is smaller than the population {population}"
        raise ConfigurationError(msg)
    cost = CostSpec(
        hamiltonian=h,
        ansatz=AnsatzSpec(h.n_qubits, reps),
        eval_budget=budget,
        shots=values["shots"] or None,
    )
    return ExperimentConfig(
        cost=cost,
        optimizer=optimizer,
        runs=values["runs"],
        base_seed=values["seed"],
        parallel=values["parallel"],
        chemical_accuracy=values["chemical_accuracy"],
    )


##############################################################################
# Presets and files


def _presets_dir() -> Any:
    return resources.files("hopso.vqe").joinpath("presets")


def list_presets() -> list[str]:
    """Names of the bundled presets."""
    return sorted(
        p.name.removesuffix(_PRESET_SUFFIX)
        for p in _presets_dir().iterdir()
        if p.name.endswith(_PRESET_SUFFIX)
    )


def preset_text(name: str) -> str:
    """Contents of a bundled preset.

    Raises
    ------
    ConfigurationError
        If there is no such preset.
    """
    resource = _presets_dir().joinpath(name + _PRESET_SUFFIX)
    if not resource.is_file():
        msg = f"no config file or preset named {name!r}"
        raise ConfigurationError(msg)
    return str(resource.read_text(encoding="utf-8"))


def load_experiment(
    source: str | Path, overrides: Mapping[str, Any] | None = None
) -> ExperimentConfig:
    """Read a config file, or a bundled preset by name, into an `ExperimentConfig`.

    Parameters
    ----------
    source : str or path
        Path to a config file, or a name from `list_presets`.
    overrides : mapping, optional
        Values replacing those of the file (see `parse_config`).

    Raises
    ------
    ConfigurationError
        If the source is missing or invalid.
    """
    path = Path(source)
    if path.is_file():
        text, base_dir = path.read_text(encoding="utf-8"), path.parent
    else:
        text, base_dir = preset_text(str(source)), Path.cwd()

    values = parse_config(text, overrides)
    try:
        return build_experiment(values, base_dir)
    except ConfigurationError:
        raise
    except (HopsoVQEError, OSError) as exc:
        msg = f"cannot build experiment from {source}: {exc}"
        raise ConfigurationError(msg) from exc
