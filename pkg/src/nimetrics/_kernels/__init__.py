"""Backend selection for the hot numeric kernels.

The numba backend is used when importable; set ``NIMETRICS_BACKEND=numpy``
to force the pure-numpy fallback or ``NIMETRICS_BACKEND=numba`` to fail
loudly when numba is missing. ``benchmarks/bench_backends.py`` compares the
two.
"""

from __future__ import annotations

import os


def _load():
    choice = os.environ.get("NIMETRICS_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"NIMETRICS_BACKEND={choice!r}: expected 'auto', 'numba', or 'numpy'"
        )
    if choice in ("auto", "numba"):
        try:
            from . import numba_impl

            return numba_impl, "numba"
        except ImportError:
            if choice == "numba":
                raise
    from . import numpy_impl

    return numpy_impl, "numpy"


_impl, BACKEND = _load()

ni_direct = _impl.ni_direct
ni_closed = _impl.ni_closed
classify = _impl.classify
sweep_compare = _impl.sweep_compare
envelope_sweep = _impl.envelope_sweep
eq_pr_grid = _impl.eq_pr_grid
eq_fr_grid = _impl.eq_fr_grid

__all__ = [
    "BACKEND",
    "ni_direct",
    "ni_closed",
    "classify",
    "sweep_compare",
    "envelope_sweep",
    "eq_pr_grid",
    "eq_fr_grid",
]
