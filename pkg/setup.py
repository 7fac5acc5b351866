"""Build hook for the optional compiled multiplication kernel.

The package is pure Python; `crjets._speedups` is a drop-in accelerator for
the hot truncated-product loop. If Cython or a C toolchain is missing the
build degrades to the pure-Python kernel with identical semantics.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("crjets._speedups", ["src/crjets/_speedups.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
    for ext in extensions:
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=extensions)
