from setuptools import setup, find_packages

setup(
    name="icx",
    version="0.1.0",
    description="Integer complexity tables, digit bounds and verification suites",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    install_requires=[
        "numpy>=2.0",
        "pandas>=2.1.3",
        "numba>=0.61",
        "mpmath>=1.3.0",
        "scipy>=1.13",
        "pydantic>=2.7",
        "loguru>=0.7",
        "python-dotenv>=1.0.0",
    ],
    extras_require={"test": ["pytest>=8.0"]},
    entry_points={"console_scripts": ["icx=icx.main:main"]},
    python_requires=">=3.10",
)
