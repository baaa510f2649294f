import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "proofgraph",
    sorted(glob.glob("src/*.cpp")) + ["python/module.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

# packages=[] keeps setuptools from mistaking src/ for a python package dir.
setup(ext_modules=[ext], cmdclass={"build_ext": build_ext}, packages=[])
