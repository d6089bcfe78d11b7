from setuptools import find_packages, setup

# Editable installs with pip older than 21.1 still need a setup.py; the metadata lives in pyproject.toml.
# The test package under src/ is left out of the distribution.
setup(
    package_dir={"": "src"},
    packages=find_packages("src", include=["retinoblob", "retinoblob.*"]),
)
