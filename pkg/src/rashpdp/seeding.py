"""Deterministic derivation of sub-seeds from a single master seed.

Every stochastic stage (splitting, hyperparameter search, row subsampling,
bootstrap) gets its own stream derived from (master_seed, role), so stages
can run in any order or in parallel without perturbing each other.
"""

from __future__ import annotations

import numpy as np

# Role indices, fixed forever: reordering them would change every derived seed.
ROLE_SPLIT = 0
ROLE_POOL = 1
ROLE_PDP_ROWS = 2
ROLE_BOOTSTRAP = 3


def derive_seed(master_seed: int, *roles: int) -> int:
    """Return a stable 63-bit sub-seed for (master_seed, roles)."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(r) for r in roles))
    return int(seq.generate_state(1, np.uint64)[0] >> 1)
