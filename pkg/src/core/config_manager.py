import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import sympy
import yaml
from yaml import safe_load

from src.library.config import CONFIG
from src.library.config.config import PATH_CONFIG_DEFAULT

LOGGER = logging.getLogger(__name__)

SEED_ENV_VAR = "SKT_FORGE_SEED"
_MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class SearchConfig:
    """Settings of the numerical SKT search.

    Attributes:
        restarts: number of random starting matrices.
        max_iters: function-evaluation limit per restart.
        seed: 64-bit root seed; restart seeds are spawned from it.
        success_threshold: best residual below this means "found".
        failure_floor: best residual above this means "not-found".
        initial_scale: spread of the random perturbation of the identity.
        singular_tolerance: a start with |det A| below this (or cond(A) above max_condition) is redrawn.
        max_condition: bound on cond(A); frames beyond it are penalised and never found.
        check_tolerance: tolerance of the recheck of a candidate (J, g) on the original basis.
    """

    restarts: int = 100
    max_iters: int = 400
    seed: int = 20100301
    success_threshold: float = 1e-12
    failure_floor: float = 1e-10
    initial_scale: float = 1.0
    singular_tolerance: float = 1e-6
    max_condition: float = 1e3
    check_tolerance: float = 1e-8

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1.")
        if not self.success_threshold < self.failure_floor:
            raise ValueError("success_threshold must be below failure_floor.")
        if not self.max_condition > 1:
            raise ValueError("max_condition must be greater than 1.")


@dataclass(frozen=True)
class VerificationSettings:
    """Sample sizes and seeds of the exact verification runs."""

    samples_per_family: int = 20
    lee_samples_per_family: int = 50
    sample_seed: int = 4
    table4_lambda_points: tuple = field(default_factory=lambda: tuple(sympy.Rational(x) for x in ("1/3", "2", "3/2")))
    generic_betti_samples: int = 3
    membership_degree_bound: int = 3


def _positive_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _non_negative_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and 0 <= value <= _MAX_SEED


def _positive_float(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def _positive_rationals(value: Any) -> bool:
    if not isinstance(value, list) or not value:
        return False
    try:
        return all(sympy.Rational(str(v)) > 0 for v in value)
    except (TypeError, ValueError, sympy.SympifyError):
        return False


_SCHEMA: dict[str, dict[str, tuple[Callable[[Any], bool], str]]] = {
    "logging": {
        "level": (lambda v: v in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"), "a logging level name"),
        "format": (lambda v: isinstance(v, str) and "%(message)s" in v, "a format string containing %(message)s"),
    },
    "scalars": {
        "membership_degree_bound": (_positive_int, "a positive integer"),
    },
    "search": {
        "restarts": (_positive_int, "a positive integer"),
        "max_iters": (_positive_int, "a positive integer"),
        "seed": (_non_negative_int, "a 64-bit non-negative integer"),
        "success_threshold": (_positive_float, "a positive number"),
        "failure_floor": (_positive_float, "a positive number"),
        "initial_scale": (_positive_float, "a positive number"),
        "singular_tolerance": (_positive_float, "a positive number"),
        "max_condition": (lambda v: _positive_float(v) and v > 1, "a number greater than 1"),
        "check_tolerance": (_positive_float, "a positive number"),
    },
    "verification": {
        "samples_per_family": (_positive_int, "a positive integer"),
        "lee_samples_per_family": (_positive_int, "a positive integer"),
        "sample_seed": (_non_negative_int, "a 64-bit non-negative integer"),
        "table4_lambda_points": (_positive_rationals, "a non-empty list of positive rationals"),
        "generic_betti_samples": (_positive_int, "a positive integer"),
    },
}


class ConfigManager:
    """
    A class to manage and validate the YAML configuration of a run.

    Attributes:
        _path (Optional[Path]): The path to the YAML file, None for the active configuration.
        _yaml (dict): The validated configuration, section -> key -> value.
    """

    def __init__(self, yaml_path: Optional[Path] = None):
        """
        Initialize the ConfigManager.

        Args:
            yaml_path (Path, optional): The YAML configuration file. Without it the
                active configuration (working-directory file over packaged defaults) is used.
        """
        self._path = yaml_path
        with open(PATH_CONFIG_DEFAULT, "r") as file:
            self._defaults = safe_load(file)
        raw = self._load_yaml(yaml_path) if yaml_path is not None else CONFIG.cfg
        self._yaml = self._validate(raw or {})

    def section(self, name: str) -> dict:
        return dict(self._yaml.get(name, {}))

    def _validate(self, raw: dict) -> dict:
        """
        Validate every known section key by key; invalid entries fall back to defaults.

        Args:
            raw (dict): The loaded YAML content.

        Returns:
            dict: The validated configuration.
        """
        if not isinstance(raw, dict):
            self._print_error("The configuration must be a mapping of sections.")
            raw = {}
        for name in raw:
            if name not in _SCHEMA:
                self._print_warning(f"Unknown section '{name}' ignored.")

        validated = {}
        for name, keys in _SCHEMA.items():
            section = raw.get(name) or {}
            if not isinstance(section, dict):
                self._print_error(f"Section '{name}' must be a mapping; using defaults.")
                section = {}
            out = {}
            for key, (check, expected) in keys.items():
                default = self._defaults[name][key]
                if key not in section:
                    out[key] = default
                    continue
                value = section[key]
                if not check(value):
                    self._print_error(f"{name}.{key} must be {expected}, got {value!r}; using default {default!r}.")
                    value = default
                out[key] = value
            for key in section:
                if key not in keys:
                    self._print_warning(f"Unknown key '{name}.{key}' ignored.")
            validated[name] = out

        search = validated["search"]
        if not search["success_threshold"] < search["failure_floor"]:
            self._print_error("search.success_threshold must be below search.failure_floor; using defaults.")
            search["success_threshold"] = self._defaults["search"]["success_threshold"]
            search["failure_floor"] = self._defaults["search"]["failure_floor"]
        return validated

    def search_config(self, seed: Optional[int] = None, **overrides: Any) -> SearchConfig:
        """
        Build the search settings.

        Args:
            seed (int, optional): Seed from the command line.
            **overrides: Non-None values replace configured ones (restarts, max_iters, ...).

        Returns:
            SearchConfig: The resolved settings.
        """
        values = self.section("search")
        values["seed"] = self.resolve_seed(seed)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SearchConfig(**values)

    def verification_settings(self, seed: Optional[int] = None) -> VerificationSettings:
        """
        Build the verification settings.

        Args:
            seed (int, optional): Sample seed from the command line.

        Returns:
            VerificationSettings: The resolved settings.
        """
        values = self.section("verification")
        return VerificationSettings(
            samples_per_family=values["samples_per_family"],
            lee_samples_per_family=values["lee_samples_per_family"],
            sample_seed=self._resolve(seed, values["sample_seed"]),
            table4_lambda_points=tuple(sympy.Rational(str(v)) for v in values["table4_lambda_points"]),
            generic_betti_samples=values["generic_betti_samples"],
            membership_degree_bound=self.section("scalars")["membership_degree_bound"],
        )

    def logging_settings(self) -> tuple[str, str]:
        section = self.section("logging")
        return section["level"], section["format"]

    def resolve_seed(self, seed: Optional[int] = None) -> int:
        """
        Seed order: command line, SKT_FORGE_SEED, configuration file, packaged default.

        Args:
            seed (int, optional): Seed from the command line.

        Returns:
            int: The seed.
        """
        return self._resolve(seed, self.section("search")["seed"])

    def _resolve(self, seed: Optional[int], configured: int) -> int:
        if seed is not None:
            return seed
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                self._print_error(f"{SEED_ENV_VAR}={env!r} is not an integer; ignored.")
            else:
                if _non_negative_int(value):
                    return value
                self._print_error(f"{SEED_ENV_VAR}={env!r} is out of range; ignored.")
        return configured

    def _load_yaml(self, path: Path) -> dict:
        """
        Load the YAML file from the given path.

        Args:
            path (Path): The path to the YAML file.

        Returns:
            dict: The loaded YAML content.
        """
        try:
            with open(path, "r") as file:
                return safe_load(file)
        except FileNotFoundError:
            self._print_error(f"The file {path} was not found.")
            sys.exit(2)
        except yaml.YAMLError:
            self._print_error(f"The file {path} could not be read.")
            sys.exit(2)

    @staticmethod
    def _print_error(msg):
        """
        Log an error message.

        Args:
            msg (str): The error message.
        """
        LOGGER.error(msg)

    @staticmethod
    def _print_warning(msg):
        """
        Log a warning message.

        Args:
            msg (str): The warning message.
        """
        LOGGER.warning(msg)
