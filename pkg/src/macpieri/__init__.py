"""Exact Pieri and recurrence expansions for type-A Macdonald polynomials.

Everything is computed in exact (q, t)-rational arithmetic; the package ships
its own small multivariate kernel (`ring`) plus modules for weights and
partitions, symmetric polynomials, two independent constructions of P_mu,
the Pieri coefficients, the inverse-Pieri recurrences with their closed
forms, and the underlying pair of mutually inverse multidimensional
matrices.
"""

from .ring import QT, Context, FactoredProduct, Monomial, MultiPoly, QtRational, poch
from .weights import DominantWeight, Partition, partition_to_weight, weight_to_partition
from .symfun import SymPoly, multiply
from .macdonald import (
    PExpansion,
    eigenvalue,
    expand_in_P,
    macdonald_P_branching,
    macdonald_P_eigen,
    macdonald_operator_apply,
    schur_specialize,
)
from .pieri import D_coeff, d_coeff, dhat_coeff, dtilde_coeff, lemma32_check, pieri_expand
from .recurrence import (
    C_coeff,
    b_lambda,
    closed_form_coeff,
    recurrence_expand,
    recurrence_expand_shifted,
)
from .matinv import (
    AppendixParams,
    BoxRange,
    conjugate_check,
    f_entry,
    g_entry,
    verify_inverse,
)

__version__ = "0.1.0"
