"""Kernel backend selection.

The hot loops (double-double convolution, weighted moment sums, Horner
evaluation) exist twice: a Cython extension ``fpjacobi._kernels_c`` and a
pure-Python module ``fpjacobi._kernels_py``.  The compiled backend is
preferred when importable; set ``FPJACOBI_KERNELS=pure`` or ``=compiled``
to force one (``compiled`` raises if the extension is missing).

Both backends execute the same floating-point operation sequence and
return bit-identical results; ``benchmarks/bench_kernels.py`` compares
their speed.
"""

from __future__ import annotations

import os

_choice = os.environ.get("FPJACOBI_KERNELS", "auto").lower()

if _choice == "pure":
    from . import _kernels_py as _impl
elif _choice == "compiled":
    from . import _kernels_c as _impl  # type: ignore[no-redef]
elif _choice == "auto":
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl
else:
    raise ImportError(
        f"FPJACOBI_KERNELS={_choice!r} not recognized (use auto|pure|compiled)"
    )

BACKEND: str = _impl.BACKEND

conv_dot = _impl.conv_dot
conv = _impl.conv
horner_many = _impl.horner_many
weighted_dot = _impl.weighted_dot
