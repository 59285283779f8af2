from setuptools import Extension, setup

# The compiled closure kernel is optional: the package falls back to the
# pure-Python implementation in polywythoff._closure_py when the extension
# is missing (e.g. no C compiler at install time).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "polywythoff._closurekernel",
                ["src/polywythoff/_closurekernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
