"""Build script: compiles the optional search kernel extension.

The package is fully functional without the extension; qwitt.search falls
back to the pure-Python twin at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qwitt._search_c", ["src/qwitt/_search_c.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"qwitt: skipping compiled search kernel ({exc!r})")

setup(ext_modules=ext_modules)
