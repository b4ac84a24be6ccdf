import json
import logging
import math
import os

import numpy as np

from hypchroma import hooks
from hypchroma.exceptions import GeometryInfeasibleError, InvalidInputError

logger = logging.getLogger(__name__)


def acosh(x, what="arccosh argument"):
    """arccosh evaluated as log1p(y + sqrt(y(y+2))) with y = x - 1.

    Arguments below 1 by less than the formula tolerance are clamped; anything
    further below raises GeometryInfeasibleError.
    """
    y = float(x) - 1.0
    if y < 0:
        if y < -1e3 * hooks.formula_tol:
            raise GeometryInfeasibleError(f"{what} {x} < 1")
        return 0.0
    return math.log1p(y + math.sqrt(y * (y + 2.0)))


def make_rng(seed):
    return np.random.default_rng(seed)


def spawn_seeds(seed, count):
    """Independent child seeds; identical for a given (seed, count)."""
    return np.random.SeedSequence(seed).spawn(count)


def resolve_threads(value=None):
    if value is None:
        raw = os.environ.get(hooks.threads_env_var)
        if raw:
            try:
                value = int(raw)
            except ValueError:
                raise InvalidInputError(
                    f"{hooks.threads_env_var} must be an integer, got {raw!r}"
                )
    if value is None:
        value = os.cpu_count() or 1
    if value < 1:
        raise InvalidInputError(f"thread count must be at least 1, got {value}")
    return value


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def to_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default)


def write_json(obj, path=None):
    text = to_json(obj)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
        logger.debug("wrote %s", path)
    return text


def load_json(path):
    with open(path) as f:
        return json.load(f)
