"""fknichols: exact Weyl-groupoid and Nichols-algebra calculator for cyclic
Fomin-Kirillov braidings and the reflection groups G(m,p,n)."""

from fknichols.backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
