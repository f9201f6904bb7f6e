"""Deterministic random generators shared by the sampling modules.

All randomness flows through counter-based Philox streams keyed by an
explicit 64-bit seed (plus optional integer subkeys for replicate
derivation), so repeated runs and parallel replicates are reproducible.
Normal variates use numpy's ziggurat ``standard_normal``.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_generator"]


def make_generator(seed: int, *subkeys: int) -> np.random.Generator:
    """Philox generator keyed by ``seed`` and optional subkeys.

    Distinct ``(seed, *subkeys)`` tuples yield independent streams via
    ``SeedSequence``; the same tuple always yields the same stream.
    """
    entropy = [int(seed)] + [int(k) for k in subkeys]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
