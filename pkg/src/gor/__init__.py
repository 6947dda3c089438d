"""Exact computer algebra for quadratic Gorenstein algebras.

Construction and certification toolkit: Groebner bases, Artinian quotients,
canonical modules, Nagata idealizations, Betti tables, Koszul-linearity and
Lefschetz diagnostics, with a JSON-reporting CLI (`gor`).
"""

__version__ = "0.1.0"

from .fields import GF, QQ, Field
from .polyring import Ideal, PolyRing, parse

__all__ = ["Field", "QQ", "GF", "PolyRing", "Ideal", "parse", "__version__"]
