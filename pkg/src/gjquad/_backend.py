"""Kernel selection: compiled extension when available, pure Python otherwise.

Set GJQUAD_KERNEL=c to require the extension (ImportError if missing),
GJQUAD_KERNEL=py to force the fallback; default is auto.
"""
from __future__ import annotations

import os


def select_kernel(requested: str):
    if requested not in ("auto", "c", "py"):
        raise ValueError(f"GJQUAD_KERNEL must be auto, c or py, got {requested!r}")
    if requested in ("auto", "c"):
        try:
            from . import _kernel
            return _kernel
        except ImportError:
            if requested == "c":
                raise
    from . import _kernel_py
    return _kernel_py


kernel = select_kernel(os.environ.get("GJQUAD_KERNEL", "auto"))

KERNEL_NAME = kernel.NAME
sweep = kernel.sweep
ql_first_components = kernel.ql_first_components

SWEEP_COUNT_CAP = kernel.SWEEP_COUNT_CAP
SWEEP_OMEGA_NONPOSITIVE = kernel.SWEEP_OMEGA_NONPOSITIVE
SWEEP_BOUNDARY = kernel.SWEEP_BOUNDARY
SWEEP_MAX_ITERS = kernel.SWEEP_MAX_ITERS
SWEEP_TAYLOR_FAIL = kernel.SWEEP_TAYLOR_FAIL
