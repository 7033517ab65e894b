"""Exact canonical bases of higher-level q-deformed Fock spaces.

The package realizes charged multipartitions as semi-infinite wedge words,
normalizes arbitrary words with the quantum straightening rules, computes
the bar involution and both canonical bases exactly over Q[q, q^-1], and
verifies the factorization of transition polynomials under dominant
multicharges.
"""

from .laurent import LaurentPoly, antiinvariant_split, lp_bar, lp_mul, r_coefficient
from .multipartitions import (
    MultiCharge,
    MultiPartition,
    Partition,
    alpha_p,
    as_multicharge,
    as_multipartition,
    beta_greater,
    dagger,
    enumerate_block,
    is_M_dominant,
    join,
    mp_size,
    split,
    split_charge,
)
from .wedges import (
    WedgeWord,
    block_sorted_word,
    c_statistic,
    compose,
    coord_of,
    decompose,
    default_window,
    from_wedge,
    index_less,
    plain_of,
    to_wedge,
)
from .straightening import Expansion, normal_form, straighten_pair
from .fock import (
    Block,
    FockVector,
    bar,
    bar_basis,
    bar_basis_at_window,
    check_block_preservation,
    congruent_mod_lattice,
    reversal_scalar,
)
from .canonical import (
    BarMatrix,
    DeltaMatrix,
    bar_matrix,
    canonical_matrix,
    canonical_vector,
    check_sign_conventions,
    delta,
    triangular_order,
)
from .factorization import (
    VerificationReport,
    factored_delta,
    tensor_embed,
    tensor_embed_all,
    verify_bar_splitting,
    verify_product_formula,
    verify_tensor_expansion,
)

__version__ = "0.1.0"
