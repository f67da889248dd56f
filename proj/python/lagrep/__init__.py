"""Frequency-uniform series solver for -u'' + q(x) u = w^2 u on [0, d].

Thin wrapper over the C++ core; see the project README for the math and the
CLI. All heavy objects (grids, sampled functions, coefficient tables) live in
C++ and expose numpy views.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree layout used by the in-repo test suite
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
