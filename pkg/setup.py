"""Builds the optional compiled geometry kernel.

The package works without it: ``cadscript.geometry.backend`` falls back to the
pure-Python implementation when the extension is missing, so a failed build
only costs speed, never functionality.
"""

import os

from setuptools import Extension, setup

PYX = "src/cadscript/geometry/backend/_fastcore.pyx"

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "cadscript.geometry.backend._fastcore",
            [PYX],
            # no FP contraction: the extension must round exactly like the
            # pure-Python backend so their outputs stay bit-identical
            extra_compile_args=["-O2", "-ffp-contract=off"],
        )
        ext_modules = cythonize([ext], language_level=3)
    except ImportError:
        pass

setup(ext_modules=ext_modules)
