"""Hot numeric kernels with a numba fast path and an interpreted fallback.

Set ``POSR_NO_NUMBA=1`` to force the fallback, which runs the identical
loop code in ``_impl`` interpreted; it is also selected automatically when
numba is unavailable.  Both paths therefore produce bit-identical results,
only speed differs.  ``fallback_*`` names are always the interpreted
versions (used by tests and the benchmark for cross-checking).
"""

from __future__ import annotations

import importlib.util
import os

from . import _impl

_KERNELS = (
    "count_combinations",
    "refine_partition",
    "has_nontrivial_automorphism",
    "_combination_rank",
    "regular_digraph_search",
)


def _load_fallback_copy():
    spec = importlib.util.spec_from_file_location(
        "posr.kernels._impl_fallback", _impl.__file__
    )
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


_fallback = _load_fallback_copy()
fallback_refine_partition = _fallback.refine_partition
fallback_has_nontrivial_automorphism = _fallback.has_nontrivial_automorphism
fallback_regular_digraph_search = _fallback.regular_digraph_search

BACKEND = "fallback"
if not os.environ.get("POSR_NO_NUMBA"):
    try:
        from numba import njit

        # compile in dependency order, rebinding each jitted function into
        # the module globals so callers pick up the compiled versions
        for _name in _KERNELS:
            setattr(_impl, _name, njit(cache=True, nogil=True)(getattr(_impl, _name)))
        BACKEND = "numba"
    except Exception:  # pragma: no cover - depends on environment
        pass

count_combinations = _impl.count_combinations
refine_partition = _impl.refine_partition
has_nontrivial_automorphism = _impl.has_nontrivial_automorphism
regular_digraph_search = _impl.regular_digraph_search
