#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# =============================================================================
#  ____      _   _                 _____           _ ____
# |  _ \ ___| |_(_)_ __   _____  _|_   _|__   ___ | | __ )  _____  __
# | |_) / _ \ __| | '_ \ / _ \ \/ / | |/ _ \ / _ \| |  _ \ / _ \ \/ /
# |  _ <  __/ |_| | | | |  __/>  <  | | (_) | (_) | | |_) | (_) >  <
# |_| \_\___|\__|_|_| |_|\___/_/\_\ |_|\___/ \___/|_|____/ \___/_/\_\
#
# Retina-inspired color constancy toolbox.
# =============================================================================
import re

__version__ = re.search(
    r'__version__\s*=\s*[\'"]([^\'"]*)[\'"]',  # It excludes inline comment too
    open('retinextoolbox/__init__.py').read()).group(1)

import setuptools

with open('README.md', 'r') as fh:
    long_description = fh.read()


setuptools.setup(
    name='retinextoolbox',
    version=__version__,
    description='Center/surround retinex color constancy with logarithmic and Naka-Rushton encodings, evaluated on a synthetic darkroom',
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='GPLv3',
    install_requires=['numpy>=1.10',
                      'scipy>=1.0',
                      'scikit-learn>=0.16',
                      'joblib'],
    python_requires='>=3.7',
    packages=setuptools.find_packages(exclude=['test', 'test.*']),
    entry_points={
        'console_scripts': ['retinextoolbox = retinextoolbox.pipeline:main']
    },
    classifiers=[
            "Topic :: Scientific/Engineering :: Image Processing",
            "Programming Language :: Python :: 3",
            "Intended Audience :: Science/Research"],
    zip_safe=False
 )
