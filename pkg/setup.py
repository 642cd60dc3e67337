from setuptools import find_packages, setup

setup(
    name="skt-forge",
    version="0.1.0",
    description="Exact and numerical verification of SKT structures on four-dimensional solvable Lie algebras.",
    packages=find_packages(include=["src", "src.*"]),
    package_data={"src.library.config": ["default.yaml"]},
    python_requires=">=3.10",
    install_requires=[
        "PyYAML>=6.0",
        "sympy>=1.12",
        "numpy>=1.26",
        "scipy>=1.11",
    ],
    extras_require={"test": ["pytest>=8", "hypothesis>=6.100"]},
    entry_points={"console_scripts": ["skt-forge = src.main:start"]},
)
