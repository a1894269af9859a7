"""Closure kernel selection.

Imports the compiled extension when it is installed and working, the pure
Python twin otherwise.  Set ``RDFSUPD_PURE_PYTHON=1`` to force the fallback
(used by the benchmark and the backend-agreement tests).
"""

from __future__ import annotations

import os

from rdfsupd import _closure_py

if os.environ.get("RDFSUPD_PURE_PYTHON"):
    _impl = _closure_py
    BACKEND = "python"
else:
    try:
        from rdfsupd import _closure_native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        _impl = _closure_py
        BACKEND = "python"

abox_closure = _impl.abox_closure
transitive_closure = _impl.transitive_closure
