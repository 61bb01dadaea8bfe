"""Coset enumeration front end: picks the compiled kernel when available.

Set ``CROSSEDSQ_PURE=1`` to force the pure-Python kernel.
"""

import os

from . import _coset_py

try:
    if os.environ.get("CROSSEDSQ_PURE"):
        raise ImportError("pure kernel requested")
    from . import _coset as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _coset_py
    BACKEND = "python"

DEFAULT_MAX_COSETS = 10**6


def enumerate_cosets(ngens, relators, max_cosets=DEFAULT_MAX_COSETS, backend=None):
    """Coset table of the trivial subgroup of ``<ngens | relators>``.

    ``relators`` are lists of letter codes (``2*i`` / ``2*i+1``).  Raises
    :class:`~crossedsq.errors.CosetOverflow` past ``max_cosets`` rows.
    """
    kernel = _kernel
    if backend == "python":
        kernel = _coset_py
    elif backend == "cython":
        from . import _coset as kernel
    return kernel.enumerate_cosets(ngens, relators, max_cosets)
