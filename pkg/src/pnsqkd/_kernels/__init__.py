"""Kernel backend selection.

The compiled Cython extension is preferred when importable; otherwise the
pure NumPy implementation is used.  Setting ``PNSQKD_PURE_PYTHON=1`` in the
environment forces the fallback (useful for the parity tests and the
benchmark).
"""
import os

if os.environ.get("PNSQKD_PURE_PYTHON"):
    from . import _py as _impl
else:
    try:
        from . import _ext as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _py as _impl

BACKEND = _impl.BACKEND_NAME
jacobi_eigh = _impl.jacobi_eigh
poisson_click_sum = _impl.poisson_click_sum
poisson_photon_sum = _impl.poisson_photon_sum


def backend_name():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND
