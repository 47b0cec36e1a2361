"""
Setup script for Drinfeld Double Toolkit package
"""

from setuptools import setup
import os

# Read the contents of README file
this_directory = os.path.abspath(os.path.dirname(__file__))
try:
    with open(os.path.join(this_directory, 'README.md'), encoding='utf-8') as f:
        long_description = f.read()
except FileNotFoundError:
    long_description = """
    Drinfeld Double Toolkit - the quantum double D(G) of a finite group

    Verifies the Hopf, quasitriangular and ribbon structure of D(G), classifies its
    irreducible modules and computes fusion rules and modular S/T data.
    """

setup(
    name="drinfeld-double-toolkit",
    version="0.1.0",
    description="Hopf algebra checks, irreducible modules and modular data of the Drinfeld double D(G)",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "group_core",
        "char_table",
        "verification",
        "double_algebra",
        "mackey_irreps",
        "modular_fusion",
        "result_cache",
        "drinfeld_double",
        "main"
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22.0",
        "scipy>=1.8.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "black>=22.0.0",
            "flake8>=5.0.0",
            "mypy>=1.0.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "dgd=main:main",
        ],
    },
    keywords=[
        "hopf algebra",
        "quantum double",
        "drinfeld double",
        "finite groups",
        "character tables",
        "modular data",
        "fusion rules",
        "caching",
    ],
)
