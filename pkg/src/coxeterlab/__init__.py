"""Exact Coxeter polynomials, cyclotomic factorization and spectral measures of triangular algebras."""
from .polyengine import (
    CycFactorization,
    IntPoly,
    coefficient_conditions,
    cyclotomic,
    cyclotomic_factorize,
    is_self_reciprocal,
    moebius,
    special_value_formula,
    tensor_product,
    totient,
    v_poly,
)
from .algebras import (
    CartanAlgebra,
    ConstructionError,
    GroupAction,
    PosetSpec,
    QuiverSpec,
    canonical,
    double_repetitive,
    extended_canonical,
    from_hereditary_quiver,
    from_poset,
    galois_quotient,
    one_point_extension,
    supercanonical,
    supercanonical_poly,
    tensor,
    truncated_linear,
)
from .coxeter import (
    CoxeterMatrix,
    HomFormReport,
    PeriodicityReport,
    char_poly,
    chi_minus_one_square,
    coxeter_matrix,
    euler_form,
    homological_form,
    is_cyclotomic_type,
    minimal_poly,
    periodicity,
    star_poly,
    symmetry_factor,
    weight_classify,
)
from .spectral import SpectralReport, measures, numeric_roots, verify_inequality_chain

__version__ = "0.1.0"
