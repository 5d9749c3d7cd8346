"""Configuration loading for the tropls engines"""
from pathlib import Path
from typing import NamedTuple, Optional

from decouple import config as env_config
from numpy.random import Generator, default_rng
from yaml import safe_load

from tropls.common.constants import EngineDefaults

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "configs" / "tropls_config.yml"


class DependenceConfig(NamedTuple):
    """
    Class for dependence engine configuration data

    iteration_factor: raising-loop cap is iteration_factor * n * pieces
    candidate_fractions: interior positions sampled in each refinement cell
    brute_force_parts: edge subdivision count of the rank oracle
    """
    iteration_factor: int = EngineDefaults.ITERATION_FACTOR.value
    candidate_fractions: list[str] = list(EngineDefaults.CANDIDATE_FRACTIONS.value)
    brute_force_parts: int = EngineDefaults.BRUTE_FORCE_PARTS.value


class TLSConfig(NamedTuple):
    """
    Class for tropical linear series check configuration data

    samples: number of random effective divisors for sampled axiom checks
    seed: default random seed, overridden by TROPLS_SEED
    point_denominator: denominator bound of randomly sampled points
    """
    samples: int = EngineDefaults.SAMPLES.value
    seed: int = EngineDefaults.SEED.value
    point_denominator: int = EngineDefaults.POINT_DENOMINATOR.value


def load_config(path: Optional[str] = None) -> dict:
    """
    Reads a YAML configuration file

    :param path: file path, the packaged configs/tropls_config.yml when None
    """
    with open(path or DEFAULT_CONFIG_PATH, encoding="utf-8") as config_file:
        return safe_load(config_file)


def resolve_seed(default: int = EngineDefaults.SEED.value) -> int:
    """
    Seed for randomized checks: TROPLS_SEED when set, the default otherwise
    """
    return env_config("TROPLS_SEED", default=default, cast=int)


def make_rng(seed: Optional[int] = None) -> Generator:
    """
    Random generator for the sampled checks

    :param seed: explicit seed; resolved from the environment when None
    """
    return default_rng(resolve_seed() if seed is None else seed)
