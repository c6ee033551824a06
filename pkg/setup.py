import os

from setuptools import setup

ext_modules = []
if os.environ.get("BRAIDORBIT_PURE") != "1" and os.path.exists("src/braidorbit/_kernel.pyx"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/braidorbit/_kernel.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback kernel is used when the extension is absent.
        pass

setup(ext_modules=ext_modules)
