"""
LazyStrata Package

Exact computations over bound quiver algebras: torsion pairs, nested
families, strata and stratifying systems.
"""

__version__ = "1.0.0"
__author__ = "Lazy Philosopher Software"

from . import cli
from . import config_loader
from . import errors

__all__ = [
    'cli',
    'config_loader',
    'errors'
]
