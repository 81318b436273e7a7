"""Differential operators on a quadratic cone and the hydrogen spectrum.

Exact Weyl-algebra arithmetic over Q(i), the so(n+2) Lie structure of the
degree-two cone operators, their radial images, a Laguerre spectral solver
for the resulting pencils and the sl2 monodromy picture.
"""

__version__ = "0.1.0"

from ._kernel import BACKEND
from .scalar import QI, I
from .poly import Polynomial
from .weyl import QuadraticForm, WeylElement, bigrade, commutator, cone_equal, in_left_ideal, preserves_ideal
from .cone import PLQS, LieBasis, dual_pair, sl2_triple, structure_constants, verify_so_structure
from .radial import RadialOperator, Laurent, isotypic_restrict, schrodinger_radial, physics_identity
from .spectral import build_basis, assemble_pencil, bound_states, degeneracy_table
from .sl2_pencil import classify_and_conjugate, monodromy, scan
from .dsl import ParseError, format_expr, parse_expr, parse_operator

__all__ = [
    "BACKEND", "QI", "I", "Polynomial", "QuadraticForm", "WeylElement", "bigrade", "commutator",
    "cone_equal", "in_left_ideal", "preserves_ideal", "PLQS", "LieBasis", "dual_pair", "sl2_triple",
    "structure_constants", "verify_so_structure", "RadialOperator", "Laurent", "isotypic_restrict",
    "schrodinger_radial", "physics_identity", "build_basis", "assemble_pencil", "bound_states",
    "degeneracy_table", "classify_and_conjugate", "monodromy", "scan", "ParseError", "format_expr",
    "parse_expr", "parse_operator",
]
