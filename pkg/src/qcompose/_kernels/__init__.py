"""Hot loops with a compiled core and a pure-Python fallback.

The only loop in the package that is too hot for Python is the Monte-Carlo
random-walk stepper.  A Cython build of it is attempted at import time; when
it is unavailable (no compiler at install time, or QCOMPOSE_PURE_PYTHON=1 in
the environment) the pure-Python twin takes over.  Both consume the caller's
numpy Generator through the same chunked-refill discipline, so results are
bit-identical across backends.
"""

import os

if os.environ.get("QCOMPOSE_PURE_PYTHON", "") not in ("", "0"):
    from .walk_mc_py import sample_hitting_times

    BACKEND = "python"
else:
    try:
        from ._walk_mc import sample_hitting_times

        BACKEND = "cython"
    except ImportError:
        from .walk_mc_py import sample_hitting_times

        BACKEND = "python"

__all__ = ["sample_hitting_times", "BACKEND"]
