"""
mcgforge: open-book monodromy cosets, curve calculus and fibered-link
certificates on punctured surfaces.

The package is organised around an exact combinatorial engine for simple
closed curves in normal coordinates on ideal triangulations (``surfaces``,
``curves``, ``intersection``, ``twist``), a mapping-class layer with
certificates (``mcg``), the stabilization pipeline for open books
(``pages``, ``openbook``), braid closures and Seifert forms (``braids``,
``seifert``), Dehn-filling volume certificates and the q-hyperbolicity
derivation engine (``geometry``), and a batch CLI (``cli``).
"""

__version__ = "0.1.0"

from .surfaces import SurfaceSig, Triangulation, standard_triangulation
from .curves import MultiCurve, OrientedCurve

__all__ = [
    "SurfaceSig",
    "Triangulation",
    "standard_triangulation",
    "MultiCurve",
    "OrientedCurve",
    "__version__",
]
