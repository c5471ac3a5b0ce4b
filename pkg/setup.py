from setuptools import find_packages, setup

README_FILE = "README.md"
REQUIREMENTS_FILE = "requirements.txt"


setup(
    name="tits_centre_checker",
    packages=find_packages(exclude=["tests", "examples*"]),
    py_modules=["centre"],
    version="1.0",
    description="Flag complexes of GL_n(F_q), fixed-point subcomplexes and centre finding",
    long_description=open(README_FILE).read(),
    install_requires=open(REQUIREMENTS_FILE).read().splitlines(),
    include_package_data=True,
    package_data={"harness": ["catalogs/*.json"]},
    entry_points={"console_scripts": ["tits-centre=centre:run"]},
)
