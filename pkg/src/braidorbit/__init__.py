"""braidorbit: exact pure-braid orbits on affine character varieties.

Exact cyclotomic arithmetic, braid actions on translation-part
coordinates, finiteness classification of orbits, the complex reflection
groups G25 and G32 with their orbit strata, and the connection-side
checks (residue families, the hypergeometric comparison, numeric
monodromy).
"""

from .braid import BraidWord, FreeTuple, PureLetter, hurwitz_act, phi_kl, pure_sigma_ij, sigma_ij
from .charvar import (
    AffineRep,
    LinearPart,
    ProjClass,
    action_matrix_full,
    action_matrix_reduced,
    conjugate,
    normalize,
    orbit,
)
from .classify import GateVerdict, N4Class, classify_n4, gate, p_value, table_rows
from .coalesce import CoalesceSpec, equivariance_check, r_kl
from .cyclo import (
    Cyclotomic,
    cyc,
    cyclotomic_polynomial,
    order_of_root,
    parse_cyclo,
    render,
    sqrt_of_root,
    zeta,
)
from .kernel import BACKEND as kernel_backend
from .linalg import Mat, eigenspace, is_complex_reflection, matrix_order, projective_order

__version__ = "0.1.0"
