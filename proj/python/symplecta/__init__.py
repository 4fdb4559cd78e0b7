"""Symplectic polar duality, quantum blobs and indeterminacy checks."""

from ._symplecta import *  # noqa: F401,F403
from ._symplecta import SymplectaError, __version__  # noqa: F401
