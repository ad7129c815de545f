#!/usr/bin/env python

import re

import setuptools

long_description = """
A Pure-Python library for reflexive lattice simplices.  It is capable of:

- computing Sylvester numbers and enumerating unit partitions
- converting between unit partitions and reflexive weight systems
- building the simplices P_Q and S_Q of a weight system
- computing duals, volumes, lattice points and edge counts exactly
- classifying reflexive simplices up to unimodular equivalence
- checking the extremal volume, edge and duality bounds against a
  classification, with machine-readable verdicts

All arithmetic is exact: Python integers and fractions, no floating point.
"""

VERSIONFILE="reflex/_version.py"
verstrline = open(VERSIONFILE, "rt").read()
VSRE = r"^__version__ = ['\"]([^'\"]*)['\"]"
mo = re.search(VSRE, verstrline, re.M)
if mo:
    verstr = mo.group(1)
else:
    raise RuntimeError("Unable to find version string in %s." % (VERSIONFILE))

setuptools.setup(
        name="reflexsimplex",
        version=verstr,
        description="Exact classification of reflexive lattice simplices",
        long_description=long_description,
        classifiers = [
            "Development Status :: 4 - Beta",
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: BSD License",
            "Programming Language :: Python :: 3",
            "Operating System :: OS Independent",
            "Topic :: Scientific/Engineering :: Mathematics",
            ],
        packages=["reflex"],
        python_requires=">=3.9",
        install_requires=["sympy>=1.12", "tqdm"],
        entry_points={"console_scripts": ["reflex=reflex.cli:main"]},
    )
