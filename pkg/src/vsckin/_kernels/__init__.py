"""Backend selection for the hot assembly kernels.

Two interchangeable implementations exist: a compiled Cython extension
and a vectorized numpy fallback.  The environment variable
``VSCKIN_KERNELS`` picks one:

    auto    use the compiled backend when importable, else numpy (default)
    cython  require the compiled backend, fail loudly if missing
    numpy   force the pure-Python path

``available_backends()`` exposes both modules when present so tests and
benchmarks can compare them head to head.
"""

import os

from ..errors import ConfigError
from . import _numpy_impl

_REQUESTED = os.environ.get("VSCKIN_KERNELS", "auto").strip().lower()
if _REQUESTED not in ("auto", "cython", "numpy"):
    raise ConfigError(
        f"VSCKIN_KERNELS must be 'auto', 'cython' or 'numpy', got {_REQUESTED!r}")

_impl = None
if _REQUESTED in ("auto", "cython"):
    try:
        from . import _cy_impl as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _REQUESTED == "cython":
            raise ConfigError(
                "VSCKIN_KERNELS=cython but the compiled extension is not "
                "installed; rebuild the package or use VSCKIN_KERNELS=numpy")
        _impl = None
if _impl is None:
    _impl = _numpy_impl

active_backend = _impl.BACKEND_NAME

fc_table = _impl.fc_table
thermal_bracket = _impl.thermal_bracket
marcus_gaussian = _impl.marcus_gaussian


def available_backends() -> dict:
    """Name -> module for every importable backend."""
    out = {"numpy": _numpy_impl}
    try:
        from . import _cy_impl  # type: ignore[attr-defined]
        out["cython"] = _cy_impl
    except ImportError:
        pass
    return out
