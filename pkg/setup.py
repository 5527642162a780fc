import setuptools
from pathlib import Path


# Reading the long description from README.md
def read_long_description():
    try:
        return Path("README.md").read_text(encoding="utf-8")
    except FileNotFoundError:
        return "A description of charp is currently unavailable."


# Retrieving metadata from __init__.py
def retrieve_metadata():
    vars2find = ["__author__", "__version__", "__url__"]
    vars2readme = {}
    try:
        with open("./charp/__init__.py") as f:
            for line in f.readlines():
                for v in vars2find:
                    if line.startswith(v):
                        line = line.replace('"', "").replace("'", "").strip()
                        vars2readme[v] = line.split("=", 1)[1].strip()
    except FileNotFoundError:
        raise FileNotFoundError("Metadata file './charp/__init__.py' not found.")

    # Checking if all required variables are found
    missing_vars = [v for v in vars2find if v not in vars2readme]
    if missing_vars:
        raise ValueError(
            f"Missing required metadata variables in __init__.py: {missing_vars}"
        )

    return vars2readme


def read_requirements(path="./requirements.txt"):
    deps = []
    try:
        with open(path) as f:
            deps = [
                line.strip() for line in f if line.strip() and not line.startswith("#")
            ]
    except FileNotFoundError:
        print(f"Warning: '{path}' not found. No dependencies will be installed.")
    return deps


metadata = retrieve_metadata()
long_description = read_long_description()
requirements = read_requirements()

setuptools.setup(
    name="charp-frobenius",
    url=metadata["__url__"] or None,
    version=metadata["__version__"],
    author=metadata["__author__"],
    description="Exact ideal calculus over F_p[t, x, y] and Frobenius powers of hypersurface modules",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(
        exclude=("tests*", "docs*", "examples*")
    ),  # Automatically find packages
    classifiers=[
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    include_package_data=True,
    extras_require={
        "test": read_requirements("./tests/requirements.txt"),
    },
    entry_points={
        "console_scripts": [
            "charp=charp.cli.main:main",
        ],
    },
)
