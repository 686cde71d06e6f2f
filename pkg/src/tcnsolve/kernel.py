"""Kernel selection: compiled extension if present, pure Python otherwise.

Set TCNSOLVE_PURE_KERNEL=1 to force the pure fallback (used by the
benchmark and by differential tests).
"""

import os

if os.environ.get("TCNSOLVE_PURE_KERNEL"):
    from . import _core_py as impl
else:
    try:
        from . import _core as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as impl

BACKEND = impl.BACKEND
revise = impl.revise
run_fixpoint = impl.run_fixpoint
