"""Default size caps, overridable through the environment."""

import os

ORDER_CAP_ENV = "FINGROUPS_ORDER_CAP"
LATTICE_CAP_ENV = "FINGROUPS_LATTICE_CAP"

DEFAULT_ORDER_CAP = 2000
DEFAULT_LATTICE_CAP = 300


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {raw!r}")
    return value


def order_cap() -> int:
    return _env_int(ORDER_CAP_ENV, DEFAULT_ORDER_CAP)


def lattice_cap() -> int:
    return _env_int(LATTICE_CAP_ENV, DEFAULT_LATTICE_CAP)
