from setuptools import find_packages, setup

version = {}
with open("fockledger/_version.py") as fp:
    exec(fp.read(), version)

with open("README.rst") as f:
    long_description = f.read()

setup(
    name="fockledger",
    version=version["__version__"],
    description="Truncated Fock space numerics for photon-added and photon-subtracted states.",
    long_description=long_description,
    packages=find_packages(exclude=["tests"]),
    package_data={"fockledger": ["fockledger-default-config.yaml"]},
    install_requires=[
        "click>=7.0",
        "jsonlines>=1.2.0",
        "numpy>=1.17",
        "PyYAML>=5.1",
        "scipy>=1.4",
    ],
    extras_require={"test": ["pytest>=5.0", "hypothesis>=4.0"]},
    entry_points={"console_scripts": ["fockledger=fockledger.cli:main"]},
    python_requires=">=3.6",
)
