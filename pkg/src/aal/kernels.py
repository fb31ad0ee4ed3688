"""Backend selection for the inner loops.

The compiled extension is used when it imports; setting AAL_PURE_PYTHON=1
forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

FUSION_LAWS = ("fuse_identity", "fuse_commutative", "square_increasing", "fuse_associative", "involution_law")

compiled_backend = None
if not os.environ.get("AAL_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

fusion_violation = _active.fusion_violation
closure_labels = _active.closure_labels
refine_labels = _active.refine_labels

__all__ = ["BACKEND", "FUSION_LAWS", "fusion_violation", "closure_labels", "refine_labels", "python_backend", "compiled_backend"]
