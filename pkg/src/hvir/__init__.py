"""Exact computations in the solenoidal Heisenberg-Virasoro algebra HVir(n)_mu."""

from .algebra import (
    C1,
    C2,
    C3,
    Basis,
    E,
    Element,
    H,
    Variant,
    basis_window,
    bracket,
    format_element,
    jacobi_defect,
)
from .cocycles import (
    Cochain1,
    Cochain2,
    check_cocycle,
    cocycle_defect,
    decompose_cocycle,
    generator_cocycle,
    theta_defect,
)
from .lattice import DimensionMismatch, NonGenericSpecialization, lex_cmp, mu_form, specialization
from .parsing import ExprSyntaxError, parse_element, parse_lattice, parse_scalar
from .repmod import TModuleSpec, TVector, t_act, t_axiom_defect, t_submodule_window
from .scalars import Context, Scalar, mu
from .verma import (
    GeneralizedVermaModule,
    HighestWeight,
    VermaModule,
    genverma_level_check,
    verma_act,
    weight_basis,
    weight_growth,
    weight_of,
)

__version__ = "0.1.0"
