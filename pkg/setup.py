from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; ratbez.kernels falls back automatically
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ratbez._speedups", ["src/ratbez/_speedups.pyx"], optional=True)],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
