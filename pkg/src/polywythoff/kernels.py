"""Select the closure kernel: compiled extension when available, else pure Python.

Set POLYWYTHOFF_PURE=1 to force the fallback (used by the benchmark).
"""

from __future__ import annotations

import os

from . import _closure_py

if os.environ.get("POLYWYTHOFF_PURE"):
    _impl = _closure_py
    KERNEL = "pure-python (forced)"
else:
    try:
        from . import _closurekernel as _impl  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        _impl = _closure_py
        KERNEL = "pure-python"

close_perms = _impl.close_perms
close_mats = _impl.close_mats
