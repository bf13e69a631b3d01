"""Exact tangent and obstruction spaces for Artinian quotients of k[x, y, z, w]."""

from .family import (
    D_closed_formula,
    D_sum,
    F_formula,
    FamilyStats,
    d_formula,
    example_catalog,
    inequality_verdicts,
    table1_triples,
)
from .grading import BIGRADED, FINE, STANDARD, Grading
from .poly import FieldSpec, Polynomial, PolySyntaxError, mono_bidegree, parse_poly
from .quotient import (
    ArtinQuotient,
    IdealSpec,
    build_family_quotient,
    build_quotient,
    build_raw_quotient,
    check_socle_condition,
    decompose,
    extend_quotient,
    socle,
)
from .syzygy import (
    StructuredUnavailable,
    SyzygyGenerator,
    SyzygySlice,
    koszul_subspace,
    membership_certificate,
    structured_syzygies,
    syzygy_slice,
)
from .tangent import (
    ObstructionReport,
    TangentReport,
    hom_dim,
    t2_nonneg,
    tangent_report,
    trivial_negative_tangents,
)

__all__ = [name for name in dir() if not name.startswith("_")]
