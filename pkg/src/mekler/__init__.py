"""Finite Mekler groups of nice graphs over F_p, with brute-force checkable invariants."""

from .bilinear import (
    BilinearError,
    BilinearSystem,
    BnClass,
    f_n,
    f_of_group,
    find_separated_basis,
    is_separated_basis,
    pi_A,
    simeq,
    w_n_membership,
    wedge_quotient_fixture,
)
from .classification import (
    TypeTag,
    approx_equiv,
    class_id,
    handle,
    in_A,
    inp_pattern_check,
    minimal_A_index,
    recover_graph,
    sim_equiv,
    support,
    type_census,
    type_of,
)
from .common import UNDETERMINED, BoundExceededError
from .graphs import Graph, GraphError, is_cover, is_nice, make_cycle, make_petersen, read_graph
from .group import (
    EnumerationCapError,
    MeklerElement,
    MeklerGroup,
    NotNiceError,
    build_group,
    commutator,
    inverse,
    multiply,
    power,
)
from .transversal import (
    Transversal,
    compute_full_transversal,
    compute_transversal,
    independent_over,
    normal_form_wrt,
    recompose,
    transversal_qf_check,
)

__version__ = "0.1.0"
