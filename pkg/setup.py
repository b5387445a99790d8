"""Build script: compiles the optional Cython integrator kernel.

The package is fully functional without the extension (a NumPy fallback is
selected at import time); the build therefore tolerates a missing or broken
Cython toolchain instead of failing the install.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "twinbath._kernels_cy",
                sources=["src/twinbath/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    print(f"twinbath: skipping Cython extension build ({exc!r}); "
          "the pure-NumPy kernel will be used")
    extensions = []

setup(ext_modules=extensions)
