"""Build script: compiles the optional extended-precision kernel extension.

The package works without the extension (a pure-Python kernel module is
selected at import time), so a missing compiler or Cython must not break
installation.
"""
import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("FPJACOBI_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext = Extension(
            "fpjacobi._kernels_c",
            ["src/fpjacobi/_kernels_c.pyx"],
            include_dirs=[np.get_include()],
            # fp-contract must stay off: fused multiply-adds would break
            # the Dekker error-free transformations in the dd arithmetic
            extra_compile_args=["-O3", "-ffp-contract=off"],
        )
        ext_modules = cythonize(
            [ext], compiler_directives={"language_level": "3"}
        )
    except Exception as exc:  # pragma: no cover
        sys.stderr.write(
            f"fpjacobi: skipping compiled kernels ({exc}); "
            "pure-Python kernels will be used\n"
        )

setup(ext_modules=ext_modules)
