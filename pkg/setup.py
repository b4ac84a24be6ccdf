from setuptools import setup, find_packages

with open("requirements.txt") as f:
	install_requires = f.read().strip().split("\n")

# get version from __version__ variable in hypchroma/__init__.py
from hypchroma import __version__ as version

setup(
	name="hypchroma",
	version=version,
	description="Constructive bounds for chromatic numbers of hyperbolic surfaces",
	author="hypchroma contributors",
	packages=find_packages(),
	package_data={"hypchroma": ["blueprints/*.rot"]},
	zip_safe=False,
	include_package_data=True,
	install_requires=install_requires,
	extras_require={"test": ["pytest", "hypothesis", "scipy"]},
	entry_points={"console_scripts": ["hypchroma = hypchroma.cli:main"]},
)
