"""Global limits and defaults. Values can be overridden by the CLI or by callers."""

import os
from pathlib import Path

ENUM_CEILING = 2**24  # monics enumerated per degree
GROUP_CEILING = 2**20  # |G_n| for brute-force group structure
TABLE_LIMIT = 2**10  # largest q with dense add/mul tables
WITT_PRECISION = 12
POINT_BUDGET = 2**26

CACHE_ENV = "CARLITZ_TOWER_CACHE"


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "carlitz_tower"
