"""Exact log canonical thresholds of hypersurface germs, with case-tree
classifiers for quartic surfaces, sextic curves and quintic double points,
and an exact checker for linear case ledgers."""

__version__ = "0.1.0"

from .poly import Poly, PolyError, parse_poly  # noqa: E402
from .lct_core import LctCertificate, LctError, lct_germ  # noqa: E402

__all__ = ["__version__", "Poly", "PolyError", "parse_poly", "LctCertificate", "LctError", "lct_germ"]
