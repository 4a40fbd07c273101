"""Setup script for the ASN Maker package."""

import re
from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).parent
DEV_TOOLS = {"pytest", "pytest-cov", "black", "isort", "flake8", "mypy"}


def read_requirements() -> tuple:
    """Split requirements.txt into runtime and development requirements."""
    runtime, dev = [], []
    for line in (HERE / "requirements.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name = re.split(r"[<>=!~\[ ]", line, maxsplit=1)[0]
        (dev if name in DEV_TOOLS else runtime).append(line)
    return runtime, dev


install_requires, dev_requires = read_requirements()

setup(
    name="asn-maker",
    version="0.1.0",
    description=(
        "Algorithm Similarity Networks: compare community detection "
        "algorithms by how alike their outputs are"
    ),
    long_description=(HERE / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Information Analysis",
    ],
    python_requires=">=3.9",
    install_requires=install_requires,
    extras_require={"dev": dev_requires},
    entry_points={
        "console_scripts": [
            "asn-maker=asn_maker.cli.main:main",
        ],
    },
)
