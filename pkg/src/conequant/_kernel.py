"""Backend selection for the Weyl product kernel.

The compiled kernel is used when it was built; setting the environment
variable ``CONEQUANT_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernel

BACKEND = "python"
weyl_mul_terms = _pykernel.weyl_mul_terms

if not os.environ.get("CONEQUANT_PURE_PYTHON"):
    try:
        from ._ckernel import weyl_mul_terms  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

__all__ = ["BACKEND", "weyl_mul_terms"]
