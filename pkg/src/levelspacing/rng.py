"""Counter-based random streams.

Every stream is keyed by (seed, counter...), so a sample or chunk draws the
same numbers whichever worker generates it and in whatever order.
"""

import numpy as np

from levelspacing.errors import InvalidArgumentError


def substream(seed: int, *counters: int) -> np.random.Generator:
    """Philox generator keyed by ``seed`` and the integer ``counters``."""
    key = [int(seed), *(int(c) for c in counters)]
    if any(k < 0 for k in key):
        raise InvalidArgumentError(f"seed and counters must be nonnegative, got {key}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))
