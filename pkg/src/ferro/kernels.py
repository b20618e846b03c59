"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting ``FERRO_PURE=1``
forces the numpy fallback.  ``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os

from . import _kernels_py as pure
from ._kernels_py import NO_CODEWORD, n_projective, projective_vectors

compiled = None
if not os.environ.get("FERRO_PURE"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

rank_batch = _impl.rank_batch
min_rank_projective = _impl.min_rank_projective
maximal_trials = _impl.maximal_trials
spectrum_free_trials = _impl.spectrum_free_trials
count_sf_tuples_gf2 = _impl.count_sf_tuples_gf2

__all__ = [
    "BACKEND", "NO_CODEWORD", "compiled", "pure", "n_projective", "projective_vectors",
    "rank_batch", "min_rank_projective", "maximal_trials", "spectrum_free_trials",
    "count_sf_tuples_gf2",
]
