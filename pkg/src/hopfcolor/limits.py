"""Resource guards with environment-variable overrides.

Every exhaustive sweep in the package checks one of these limits before it
starts, so a bad input aborts with :class:`~hopfcolor.errors.ResourceLimitError`
instead of hanging.
"""

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


#: largest number of maps ``f: N -> [k]`` an exhaustive count will enumerate
MAX_MAPS = _env_int("HOPFCOLOR_MAX_MAPS", 10_000_000)

#: largest number of faces a single simplicial complex may hold
MAX_FACES = _env_int("HOPFCOLOR_MAX_FACES", 2_000_000)

#: largest ground set accepted by complex/homology constructions
MAX_VERTICES = _env_int("HOPFCOLOR_MAX_VERTICES", 8)

#: size cap for exhaustive structure surveys (hard cap for mixed graphs is 5)
MAX_SURVEY_SIZE = _env_int("HOPFCOLOR_MAX_SURVEY_SIZE", 5)
