from setuptools import setup
import os

setup(
    name="inose-sections",
    version="1.0.0",
    py_modules=[
        "main", "config", "utils", "errors", "output",
        "exact_arith", "poly_ratfunc", "elliptic", "isogeny",
        "inose_construct", "section_solver", "mw_lattice", "named_examples",
    ],
    install_requires=[
        "colorama>=0.4.4",
        "sympy>=1.12",
        "mpmath>=1.3.0",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "inose-sections=main:main",
        ],
    },
    description="Inose 曲面上的 3-同源截面与 Mordell-Weil 格",
    long_description=open("README.md", encoding="utf-8").read() if os.path.exists("README.md") else "",
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
)
