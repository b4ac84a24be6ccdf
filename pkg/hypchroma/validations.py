import math
import numbers

from hypchroma import hooks
from hypchroma.exceptions import InvalidInputError, NumericRangeError


def validate_finite(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidInputError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")
    return float(value)


def validate_positive(value, name):
    value = validate_finite(value, name)
    if value <= 0:
        raise InvalidInputError(f"{name} must be positive, got {value}")
    return value


def validate_nonnegative(value, name):
    value = validate_finite(value, name)
    if value < 0:
        raise InvalidInputError(f"{name} must be non-negative, got {value}")
    return value


def validate_integer(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InvalidInputError(f"{name} must be at least {minimum}, got {value}")
    return int(value)


def validate_distance(value, name):
    value = validate_nonnegative(value, name)
    if value > hooks.max_distance:
        raise NumericRangeError(
            f"{name} = {value} exceeds the supported range {hooks.max_distance}"
        )
    return value


def validate_coordinates(coords):
    for c in coords:
        validate_finite(float(c), "coordinate")


def validate_triangulation_order(N):
    """N + 1 must be divisible by 12 for the triangular K_{N+1} blueprint."""
    N = validate_integer(N, "N", minimum=11)
    if (N + 1) % 12:
        raise InvalidInputError(f"N + 1 must be divisible by 12, got N = {N}")
    return N


def validate_genus(g, minimum=0):
    return validate_integer(g, "genus", minimum=minimum)
