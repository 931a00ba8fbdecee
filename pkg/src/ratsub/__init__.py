"""Rational subset membership in F_k x A via submonoid membership in an HNN extension."""

from .automata import (
    AutomatonError,
    Nfa,
    accepts,
    admissible_subsets,
    build_AP,
    loop_nfa,
    normalize_single_final,
    nfa_over,
    trim,
)
from .deciders import (
    LoopSubgroup,
    Membership,
    RationalDecider,
    SaturatedNfa,
    benois_saturate,
    free_rational_member,
    h_rational_member,
    loop_subgroup,
)
from .group_core import (
    FiniteAbelianGroup,
    GroupError,
    HElement,
    InstanceGroup,
    eval_word,
    h_inv,
    h_mul,
    parse_element,
    validate_group,
)
from .hnn import (
    HnnElement,
    bracket,
    britton_reduce,
    claim1_shape,
    embed_h,
    embed_t,
    hnn_inv,
    hnn_mul,
)
from .oracles import BfsResult, enumerate_image, submonoid_bfs
from .reduction import (
    Certificate,
    CertificateError,
    ReductionOutput,
    certificate_from_run,
    lemma_main_reduce,
    rational_member_via_admissible,
    x_cycle_free,
)

__version__ = "0.1.0"
