"""
Setup script for pywfa package
"""
import re

from setuptools import setup, find_packages

# 只在开发与测试时需要的包
DEV_PACKAGES = {"pytest", "pytest-cov", "black", "isort", "mypy", "flake8"}

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as f:
    requirements = [line.split('#', 1)[0].strip() for line in f.read().splitlines()]
    requirements = [line for line in requirements if line]


def _package_name(requirement):
    return re.split(r"[<>=!~\[;\s]", requirement, 1)[0].lower()


install_requires = [r for r in requirements if _package_name(r) not in DEV_PACKAGES]
dev_requires = [r for r in requirements if _package_name(r) in DEV_PACKAGES]

setup(
    name="pywfa",
    version="0.1.0",
    author="pywfa Team",
    author_email="example@example.com",
    description="Exact noncommutative rational series, Pólya series and weighted automata",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries",
    ],
    python_requires=">=3.8",
    install_requires=install_requires,
    extras_require={"dev": dev_requires},
    entry_points={
        "console_scripts": [
            "pywfa=pywfa.cli:main",
        ],
    },
)
