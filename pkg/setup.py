import re
from setuptools import setup, find_packages

with open('fixlog/__init__.py') as f:
    VERSION = re.search(r"VERSION = '(.+)'", f.read()).group(1)
'''
Install for development: pip install -e .[test]
'''

setup(
    name='fixlog',
    version=VERSION,
    description='Fixpoint reasoning engine unifying Datalog and equality saturation',
    license='MIT',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.7',
    install_requires=[
        'typing-extensions',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': ['fixlog=fixlog.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3',
    ],
)
