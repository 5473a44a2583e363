"""Size guards for enumeration- and elimination-bound computations."""
from __future__ import annotations

import os

DEFAULT_BASIS_GUARD = 4096
DEFAULT_STREAM_GUARD = 2 ** 24

ENV_VAR = "ANNCAT_SIZE_GUARD"


class SizeGuardError(Exception):
    """A computation would exceed the configured size guard."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds guard {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def basis_guard(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_VAR)
    return int(env) if env else DEFAULT_BASIS_GUARD


def check_basis(what: str, size: int, override: int | None = None) -> None:
    limit = basis_guard(override)
    if size > limit:
        raise SizeGuardError(what, size, limit)


def check_stream(what: str, size: int, override: int | None = None) -> None:
    limit = override if override is not None else DEFAULT_STREAM_GUARD
    if size > limit:
        raise SizeGuardError(what, size, limit)
