"""Backend selection for the hot stepping loops.

The compiled extension is preferred when importable; the numpy fallback is
behaviorally identical (same step unitaries, agreement to ~1e-12 over long
runs). Set ADIABATIC_DJ_KERNELS to "python" or "compiled" to force one.
"""

import os

_requested = os.environ.get("ADIABATIC_DJ_KERNELS", "auto").strip().lower()

if _requested not in ("auto", "compiled", "python"):
    raise ImportError(
        f"ADIABATIC_DJ_KERNELS={_requested!r} not understood; use auto, compiled, or python"
    )

if _requested == "python":
    from ._py_stepper import run_2d_steps, run_full_steps

    BACKEND = "python"
else:
    try:
        from ._stepper import run_2d_steps, run_full_steps

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from ._py_stepper import run_2d_steps, run_full_steps

        BACKEND = "python"

__all__ = ["BACKEND", "run_full_steps", "run_2d_steps"]
