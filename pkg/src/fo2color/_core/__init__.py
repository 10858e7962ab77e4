"""Kernel backend selection.

Imports the compiled Cython kernels when the extension was built, falling
back to the pure Python reference implementation otherwise. Setting
FO2_PURE_KERNELS=1 forces the fallback (used by the parity tests and the
benchmark).
"""

import os

if os.environ.get("FO2_PURE_KERNELS") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

UNDIRECTED = 0
FORWARD = 1
REVERSE = 2
BOTH = 3

greedy_defective = _impl.greedy_defective
uf_labels = _impl.uf_labels
orient_marks = _impl.orient_marks


def kernel_backend():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
