import os
from setuptools import setup, find_packages


setup_requirements = ["pytest-runner", "setuptools_scm"]


def requirements(fp: str):
    with open(os.path.join(os.path.dirname(__file__), "requirements", fp)) as f:
        return [
            r.strip()
            for r in f.readlines()
            if r.strip() and not r.startswith("#") and not r.startswith("-")
        ]


extras_require = {"tests": requirements("test_requirements.txt")}

install_requires = requirements("requirements.in")  # Allow flexible deps for install

setup(
    classifiers=[
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
    ],
    description="Simulate clustered federated learning on UAV swarms",
    entry_points={"console_scripts": ["skyfed=skyfed.cli:skyfed"]},
    install_requires=install_requires,
    name="skyfed",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.7",
    setup_requires=setup_requirements,
    test_suite="tests",
    tests_require=extras_require["tests"],
    extras_require=extras_require,
    use_scm_version={
        "write_to": "skyfed/_version.py",
        "relative_to": __file__,
        "fallback_version": "0.0.0",
    },
    zip_safe=True,
)
