"""Kernel backend selection.

``ORBITWAVE_BACKEND`` picks the hot-loop implementation:

* ``auto`` (default) — numba if importable, else pure numpy
* ``numba``          — require numba, fail loudly if missing
* ``numpy``          — force the pure-numpy fallback

Both implementations are importable side by side (the benchmark and the
cross-checking tests rely on that); this module only decides which one the
library routes through.
"""

import os

from . import _kernels_numpy

_choice = os.environ.get("ORBITWAVE_BACKEND", "auto").strip().lower()
if _choice not in {"auto", "numba", "numpy"}:
    raise ValueError(
        f"ORBITWAVE_BACKEND={_choice!r} not understood (use auto, numba or numpy)")

if _choice == "numpy":
    kernels = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba
        kernels = _kernels_numba
        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        kernels = _kernels_numpy
        BACKEND = "numpy"
