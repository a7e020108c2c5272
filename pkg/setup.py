# -*- coding: utf-8 -*-
try:
    from setuptools import setup, find_packages
except ImportError:
    raise ImportError(
        "Setuptools is needed to install all dependencies: https://pypi.python.org/pypi/setuptools"
    )


import os
import sys

name = "wlspy"

description = "A python toolbox for numerical checks of weighted Euclidean logarithmic Sobolev inequalities."
long_description = """wlspy is a python toolbox for numerical checks of weighted Euclidean
logarithmic Sobolev inequalities with power weights |x|^{-beta} on the
gradient and |x|^{-gamma} on the entropy.

wlspy computes the admissible parameter set and the closed-form optimal
constants, evaluates the inequality with radial and spherical quadratures,
locates the symmetry breaking boundary through the linearized eigenvalue
problem, verifies the curvature identities behind the symmetry result and
simulates the associated heat, Fokker-Planck and Ornstein-Uhlenbeck flows.
"""


wlspy_require = [
    "chaospy>=4.0.0",
    "tqdm",
    "h5py",
    "multiprocess",
    "numpy>=1.16",
    "scipy>=1.4.1",
    "click",
]


exdir_backend = ["exdir"]

all_wlspy_requires = wlspy_require + exdir_backend

test_dependencies = ["coverage"]
tests_require = all_wlspy_requires + test_dependencies

docs_dependencies = ["sphinx", "sphinx_rtd_theme"]
docs_require = all_wlspy_requires + docs_dependencies

all_requires = docs_require + test_dependencies

extras_require = {
    "exdir": exdir_backend,
    "all": all_wlspy_requires,
    "docs": docs_require,
    "all_extras": all_requires,
    "tests": tests_require,
}


help_text = """
Custom options:
  --all_extras        Install with all dependencies, along with extra dependencies.
  --all               Install with all dependencies required by wlspy
  --tests             Install with dependencies required to run tests
    """

if "--help" in sys.argv or "-h" in sys.argv:
    print(help_text)


if "--all_extras" in sys.argv:
    wlspy_require = all_requires
    sys.argv.remove("--all_extras")


if "--all" in sys.argv:
    wlspy_require = all_wlspy_requires
    sys.argv.remove("--all")

if "--tests" in sys.argv:
    wlspy_require = tests_require
    sys.argv.remove("--tests")


# Get version
exec(open(os.path.join("src", "wlspy", "_version.py")).read())

setup(
    name=name,
    version=__version__,
    description=description,
    license="GNU GPLv3",
    keywords="logarithmic sobolev inequality symmetry breaking weighted heat flow",
    long_description=long_description,
    python_requires=">=3",
    packages=find_packages("src"),
    package_dir={"": "src"},
    install_requires=wlspy_require,
    extras_require=extras_require,
    entry_points={"console_scripts": ["wlspy = wlspy.cli:main"]},
)
