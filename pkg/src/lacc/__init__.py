"""Regenerate and refute the 128-polynomial system behind algebraic exponentiation.

Modules: ``coeff`` (Q and GF(p)), ``cpoly`` (commutative polynomials in
l1..l8, m1..m8), ``magma`` (non-associative words), ``identity`` (the
expansion pipelines), ``groebner`` (Buchberger) and ``cli``.
"""

__version__ = "0.1.0"

from .coeff import GF, QQ, FieldSpec, Scalar, field_make, parse_field  # noqa: E402
from .cpoly import DEGLEX, DEGREVLEX, LEX, MonomialOrder, ParamPoly, parse_order  # noqa: E402
from .groebner import (Budget, BudgetExceeded, CofactorCertificate, GroebnerBasis, Ideal,  # noqa: E402
                       buchberger, contains_one, reduce, verify_certificate)
from .identity import ObstructionSystem, generate_full, load_appendix, verify_appendix  # noqa: E402
from .magma import NAPoly, word_parse  # noqa: E402

__all__ = [
    "GF", "QQ", "FieldSpec", "Scalar", "field_make", "parse_field",
    "DEGLEX", "DEGREVLEX", "LEX", "MonomialOrder", "ParamPoly", "parse_order",
    "Budget", "BudgetExceeded", "CofactorCertificate", "GroebnerBasis", "Ideal",
    "buchberger", "contains_one", "reduce", "verify_certificate",
    "ObstructionSystem", "generate_full", "load_appendix", "verify_appendix",
    "NAPoly", "word_parse",
]
