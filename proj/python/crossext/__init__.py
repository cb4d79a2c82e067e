"""Matched pairs of finite groups, bicrossed products, Kac-type Hopf algebras,
crossed actions and graded fusion rings, at desk scale.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from crossext._core import *  # noqa: F401,F403
from crossext._core import __version__  # noqa: F401
