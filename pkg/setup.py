#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import os
import re
from setuptools import find_packages, setup

# Version extraction inspired from 'requests'
with open(os.path.join('supportvar', '__init__.py'), 'r') as fd:
    version = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]',
                        fd.read(), re.MULTILINE).group(1)

with open('README.rst') as f:  # , encoding='utf-8'
    readme = f.read()
with open('HISTORY.rst') as f:  # , encoding='utf-8'
    history = f.read()

setup(
    name='supportvar',
    version=version,
    description='Support varieties of square-free monomial ideals',
    long_description=readme + '\n\n' + history,
    license='MIT License',
    author='supportvar contributors',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License'
    ],
    zip_safe=False,
    include_package_data=True,
    packages=find_packages(exclude=["tests", "tests.*", "samples", "samples.*"]),
    install_requires=[
        "six~=1.0",
        "networkx>=2.5",
        "numpy>=1.17",
        "sympy>=1.6",
    ],
    entry_points={
        'console_scripts': [
            'supportvar = supportvar.cli:main',
        ],
    },
    python_requires=">=3.8",
)
