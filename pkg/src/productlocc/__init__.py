"""Exact construction and certification of locally indistinguishable product-state sets."""

from productlocc.core import (
    FormatError,
    LocalKet,
    OrthogonalityError,
    ParameterError,
    ProductState,
    ShapeMismatchError,
    StateSet,
    SystemShape,
    check_pairwise_orthogonal,
    inner_product,
    read_state_set,
    tensor_amplitudes,
    write_state_set,
)
from productlocc.construct import (
    BobPermutation,
    UnsupportedRenderingError,
    bob_base_permutation,
    build_bipartite,
    build_even,
    build_odd,
    build_tripartite,
    expected_count,
    render_grid,
    stopper,
    upb_lower_bound,
)
from productlocc.exactlin import (
    HermitianBasis,
    RationalMatrix,
    nullspace,
    rank_exact,
    rank_float,
)
from productlocc.certify import (
    PartyVerdict,
    SetVerdict,
    assemble_constraints,
    certify,
    extract_witness,
    reduced_block_check,
    verdict_for_party,
)

__version__ = "0.1.0"
